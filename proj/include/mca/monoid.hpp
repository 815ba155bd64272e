#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mca/errors.hpp"

namespace mca {

// A monoid element is represented by a word over the generators of a
// presentation; letters are indices into MonoidPresentation::generators.
// The empty word is the unit.
struct Word {
  std::vector<int> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  friend bool operator==(const Word&, const Word&) = default;
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int l : w.letters) h = h * 1099511628211ull ^ static_cast<std::size_t>(l);
    return h;
  }
};

// Shorter words come first; equal lengths are compared letter-wise.
bool length_lex_less(const Word& a, const Word& b);

struct MonoidPresentation {
  std::vector<std::string> generators;
  std::vector<std::pair<Word, Word>> relations;

  bool free() const { return relations.empty(); }
  // Index of a generator symbol, or -1 when absent.
  int generator_index(std::string_view symbol) const;
};

// Generator symbols match [A-Za-z][A-Za-z0-9_]*.
bool valid_name_token(std::string_view token);

Word word_concat(const Word& u, const Word& v);

// word ::= "ε" | gen ("." gen)*
Word parse_word(std::string_view text, const MonoidPresentation& pres);
std::string format_word(const Word& w, const MonoidPresentation& pres);

// Applies the relation pairs as bidirectional rewrites, breadth-first, up to
// `bound` rewrite steps per pass, restarting from the best word until no
// further improvement. Returns the length-lexicographically least word found.
Word reduce_bounded(const MonoidPresentation& pres, const Word& w, int bound);

enum class IdentityVerdict { Identity, NotIdentityWitness, Unknown };

IdentityVerdict words_identity_bounded(const MonoidPresentation& pres, const Word& w,
                                       int bound);

}  // namespace mca
