#include "mca/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_set>

namespace mca {

namespace {

constexpr std::string_view kEpsilon = "\xce\xb5";  // "ε"

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

bool valid_name_token(std::string_view token) {
  if (token.empty() || !is_name_start(token[0])) return false;
  return std::all_of(token.begin() + 1, token.end(), is_name_char);
}

bool length_lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters < b.letters;
}

int MonoidPresentation::generator_index(std::string_view symbol) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == symbol) return static_cast<int>(i);
  return -1;
}

Word word_concat(const Word& u, const Word& v) {
  Word out = u;
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  return out;
}

Word parse_word(std::string_view text, const MonoidPresentation& pres) {
  if (text == kEpsilon) return Word{};
  Word out;
  std::size_t pos = 0;
  while (true) {
    std::size_t start = pos;
    if (pos >= text.size() || !is_name_start(text[pos]))
      throw SyntaxError("expected generator name", pos);
    while (pos < text.size() && is_name_char(text[pos])) ++pos;
    std::string symbol(text.substr(start, pos - start));
    int idx = pres.generator_index(symbol);
    if (idx < 0) throw UnknownGeneratorError(symbol);
    out.letters.push_back(idx);
    if (pos == text.size()) break;
    if (text[pos] != '.') throw SyntaxError("expected '.' between generators", pos);
    ++pos;
  }
  return out;
}

std::string format_word(const Word& w, const MonoidPresentation& pres) {
  if (w.empty()) return std::string(kEpsilon);
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += '.';
    out += pres.generators.at(static_cast<std::size_t>(w.letters[i]));
  }
  return out;
}

namespace {

// One breadth-first pass over the rewrite ball of radius `bound` around w.
Word bfs_best(const MonoidPresentation& pres, const Word& w, int bound) {
  // Best-effort cap on explored words; non-confluent presentations can blow up.
  constexpr std::size_t kMaxVisited = 200000;

  Word best = w;
  std::unordered_set<Word, WordHash> visited{w};
  std::deque<std::pair<Word, int>> queue{{w, 0}};
  while (!queue.empty() && visited.size() < kMaxVisited) {
    auto [cur, depth] = std::move(queue.front());
    queue.pop_front();
    if (depth >= bound) continue;
    for (const auto& [lhs, rhs] : pres.relations) {
      for (int dir = 0; dir < 2; ++dir) {
        const Word& from = dir == 0 ? lhs : rhs;
        const Word& to = dir == 0 ? rhs : lhs;
        if (from.size() > cur.size()) continue;
        for (std::size_t at = 0; at + from.size() <= cur.size(); ++at) {
          if (!std::equal(from.letters.begin(), from.letters.end(),
                          cur.letters.begin() + static_cast<long>(at)))
            continue;
          Word next;
          next.letters.reserve(cur.size() - from.size() + to.size());
          next.letters.assign(cur.letters.begin(), cur.letters.begin() + static_cast<long>(at));
          next.letters.insert(next.letters.end(), to.letters.begin(), to.letters.end());
          next.letters.insert(next.letters.end(),
                              cur.letters.begin() + static_cast<long>(at + from.size()),
                              cur.letters.end());
          if (!visited.insert(next).second) continue;
          if (length_lex_less(next, best)) best = next;
          queue.emplace_back(std::move(next), depth + 1);
        }
      }
    }
  }
  return best;
}

}  // namespace

Word reduce_bounded(const MonoidPresentation& pres, const Word& w, int bound) {
  if (pres.free() || bound <= 0) return w;
  Word current = w;
  while (true) {
    Word better = bfs_best(pres, current, bound);
    if (better == current) return current;
    current = std::move(better);
  }
}

IdentityVerdict words_identity_bounded(const MonoidPresentation& pres, const Word& w,
                                       int bound) {
  if (reduce_bounded(pres, w, bound).empty()) return IdentityVerdict::Identity;
  return IdentityVerdict::Unknown;
}

}  // namespace mca
