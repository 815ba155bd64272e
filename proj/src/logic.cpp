#include "mca/logic.hpp"

#include <cctype>
#include <random>

namespace mca {

namespace {

using Kind = Formula::Kind;

struct FormulaParser {
  std::string_view text;
  std::size_t pos = 0;
  const MonoidPresentation& pres;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(std::string_view sym) {
    skip_ws();
    if (text.substr(pos, sym.size()) != sym) return false;
    pos += sym.size();
    return true;
  }

  std::string peek_name() {
    skip_ws();
    std::size_t p = pos;
    if (p >= text.size() || !std::isalpha(static_cast<unsigned char>(text[p]))) return {};
    std::size_t start = p;
    while (p < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[p])) || text[p] == '_'))
      ++p;
    return std::string(text.substr(start, p - start));
  }

  bool eat_keyword(std::string_view kw) {
    if (peek_name() != kw) return false;
    pos += kw.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(what, pos); }

  long integer() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected integer");
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      v = v * 10 + (text[pos++] - '0');
    return v;
  }

  std::optional<long> opt_bracket_bound() {
    if (!eat("[")) return std::nullopt;
    long t = integer();
    if (!eat("]")) fail("expected ']'");
    return t;
  }

  Formula formula() { return implies(); }

  Formula implies() {
    Formula left = until();
    if (!eat("->")) return left;
    Formula node{Kind::Implies};
    node.children = {std::move(left), implies()};
    return node;
  }

  Formula until() {
    Formula left = or_formula();
    skip_ws();
    if (peek_name() == "U") {
      pos += 1;
      auto b = opt_bracket_bound();
      Formula node{b ? Kind::UBounded : Kind::U};
      if (b) node.bound = *b;
      node.children = {std::move(left), until()};
      return node;
    }
    return left;
  }

  Formula or_formula() {
    Formula left = and_formula();
    if (!peek_or()) return left;
    Formula node{Kind::Or};
    node.children.push_back(std::move(left));
    while (peek_or()) {
      pos += 1;
      node.children.push_back(and_formula());
    }
    return node;
  }

  bool peek_or() {
    skip_ws();
    return pos < text.size() && text[pos] == '|';
  }

  Formula and_formula() {
    Formula left = unary();
    if (!peek_and()) return left;
    Formula node{Kind::And};
    node.children.push_back(std::move(left));
    while (peek_and()) {
      pos += 1;
      node.children.push_back(unary());
    }
    return node;
  }

  bool peek_and() {
    skip_ws();
    return pos < text.size() && text[pos] == '&';
  }

  Formula unary() {
    skip_ws();
    if (eat("!")) {
      Formula node{Kind::Not};
      node.children = {unary()};
      return node;
    }
    if (eat("<")) {
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != '>') ++pos;
      if (pos >= text.size()) fail("unterminated spatial modality");
      std::string wordText(text.substr(start, pos - start));
      ++pos;  // '>'
      Formula node{Kind::Space};
      node.word = parse_word(wordText, pres);
      node.children = {unary()};
      return node;
    }
    std::string name = peek_name();
    if (name == "O") {
      pos += 1;
      Formula node{Kind::Next};
      node.children = {unary()};
      return node;
    }
    if (name == "F" || name == "G") {
      pos += 1;
      auto b = opt_bracket_bound();
      Formula node{name == "F" ? (b ? Kind::FBounded : Kind::F)
                               : (b ? Kind::GBounded : Kind::G)};
      if (b) node.bound = *b;
      node.children = {unary()};
      return node;
    }
    return atom();
  }

  Formula atom() {
    skip_ws();
    if (eat("#")) return Formula::Atomic(static_cast<int>(integer()));
    if (eat_keyword("true")) return Formula::True();
    if (eat_keyword("false")) return Formula::False();
    if (eat("(")) {
      Formula inner = formula();
      if (!eat(")")) fail("expected ')'");
      return inner;
    }
    fail("unexpected token in formula");
  }
};

// precedence levels: -> 1, U 2, | 3, & 4, unary 5, atom 6
int formula_precedence(Kind k) {
  switch (k) {
    case Kind::Implies: return 1;
    case Kind::U: case Kind::UBounded: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    case Kind::Not: case Kind::Space: case Kind::Next:
    case Kind::F: case Kind::G: case Kind::FBounded: case Kind::GBounded:
      return 5;
    default: return 6;
  }
}

void serialize(const Formula& f, const MonoidPresentation& pres, std::string& out,
               int parentPrec) {
  if (f.kind == Kind::And && f.children.empty()) {
    out += "true";
    return;
  }
  if (f.kind == Kind::Or && f.children.empty()) {
    out += "false";
    return;
  }
  int prec = formula_precedence(f.kind);
  bool parens = prec < parentPrec;
  if (parens) out += '(';
  switch (f.kind) {
    case Kind::Atom: out += '#' + std::to_string(f.atom); break;
    case Kind::Not:
      out += '!';
      serialize(f.children[0], pres, out, prec);
      break;
    case Kind::Space:
      out += '<' + format_word(f.word, pres) + "> ";
      serialize(f.children[0], pres, out, prec);
      break;
    case Kind::Next:
      out += "O ";
      serialize(f.children[0], pres, out, prec);
      break;
    case Kind::F: case Kind::G: case Kind::FBounded: case Kind::GBounded: {
      out += (f.kind == Kind::F || f.kind == Kind::FBounded) ? 'F' : 'G';
      if (f.kind == Kind::FBounded || f.kind == Kind::GBounded)
        out += '[' + std::to_string(f.bound) + ']';
      out += ' ';
      serialize(f.children[0], pres, out, prec);
      break;
    }
    case Kind::And: case Kind::Or: {
      const char* op = f.kind == Kind::And ? " & " : " | ";
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += op;
        serialize(f.children[i], pres, out, prec + 1);
      }
      break;
    }
    case Kind::Implies:
      serialize(f.children[0], pres, out, prec + 1);
      out += " -> ";
      serialize(f.children[1], pres, out, prec);
      break;
    case Kind::U: case Kind::UBounded:
      serialize(f.children[0], pres, out, prec + 1);
      out += " U";
      if (f.kind == Kind::UBounded) out += '[' + std::to_string(f.bound) + ']';
      out += ' ';
      serialize(f.children[1], pres, out, prec);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text, const MonoidPresentation& pres) {
  FormulaParser p{text, 0, pres};
  Formula f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) throw SyntaxError("trailing input after formula", p.pos);
  return f;
}

std::string serialize_formula(const Formula& f, const MonoidPresentation& pres) {
  std::string out;
  serialize(f, pres, out, 0);
  return out;
}

Trajectory::Trajectory(const CellularAutomaton& ca, Configuration initial)
    : ca_(ca), plan_(make_step_plan(ca)) {
  seen_.emplace(initial, 0);
  configs_.push_back(std::move(initial));
}

void Trajectory::extend() {
  Configuration next = global_step(ca_, configs_.back(), plan_);
  auto it = seen_.find(next);
  if (it != seen_.end()) {
    int mu = it->second;
    lasso_ = {mu, static_cast<int>(configs_.size()) - mu};
    return;
  }
  seen_.emplace(next, static_cast<int>(configs_.size()));
  configs_.push_back(std::move(next));
}

std::size_t Trajectory::canonical(std::size_t t) const {
  if (!lasso_) return t;
  auto [mu, lam] = *lasso_;
  if (t < static_cast<std::size_t>(mu + lam)) return t;
  return static_cast<std::size_t>(mu) + (t - static_cast<std::size_t>(mu)) %
                                            static_cast<std::size_t>(lam);
}

const Configuration& Trajectory::at(std::size_t t) {
  while (!lasso_ && t >= configs_.size()) extend();
  return configs_[canonical(t)];
}

std::pair<int, int> Trajectory::lasso() {
  while (!lasso_) extend();
  return *lasso_;
}

namespace {

bool eval(Trajectory& traj, const CellularAutomaton& ca, int x, std::size_t t,
          const Formula& f) {
  switch (f.kind) {
    case Kind::Atom:
      if (f.atom < 0 || f.atom >= ca.stateCount) throw AtomOutOfRangeError(f.atom);
      return traj.at(t)[static_cast<std::size_t>(x)] == f.atom;
    case Kind::Not:
      return !eval(traj, ca, x, t, f.children[0]);
    case Kind::And:
      for (const Formula& c : f.children)
        if (!eval(traj, ca, x, t, c)) return false;
      return true;
    case Kind::Or:
      for (const Formula& c : f.children)
        if (eval(traj, ca, x, t, c)) return true;
      return false;
    case Kind::Implies:
      return !eval(traj, ca, x, t, f.children[0]) || eval(traj, ca, x, t, f.children[1]);
    case Kind::Space:
      return eval(traj, ca, act(ca, x, f.word), t, f.children[0]);
    case Kind::Next:
      return eval(traj, ca, x, t + 1, f.children[0]);
    case Kind::FBounded:
      for (long k = 0; k <= f.bound; ++k)
        if (eval(traj, ca, x, t + static_cast<std::size_t>(k), f.children[0])) return true;
      return false;
    case Kind::GBounded:
      for (long k = 0; k <= f.bound; ++k)
        if (!eval(traj, ca, x, t + static_cast<std::size_t>(k), f.children[0])) return false;
      return true;
    case Kind::F: case Kind::G: {
      auto [mu, lam] = traj.lasso();
      std::size_t end = t < static_cast<std::size_t>(mu)
                            ? static_cast<std::size_t>(mu + lam)
                            : t + static_cast<std::size_t>(lam);
      for (std::size_t k = t; k < end; ++k) {
        bool hit = eval(traj, ca, x, k, f.children[0]);
        if (f.kind == Kind::F && hit) return true;
        if (f.kind == Kind::G && !hit) return false;
      }
      return f.kind == Kind::G;
    }
    case Kind::U: {
      auto [mu, lam] = traj.lasso();
      std::size_t start = t < static_cast<std::size_t>(mu) ? static_cast<std::size_t>(mu) : t;
      std::size_t nmax = start + static_cast<std::size_t>(lam) + 1 - t;
      for (std::size_t n = 0; n <= nmax; ++n) {
        if (!eval(traj, ca, x, t + n, f.children[0])) return false;
        if (eval(traj, ca, x, t + n + 1, f.children[1])) return true;
      }
      return false;
    }
    case Kind::UBounded:
      for (long n = 0; n <= f.bound; ++n) {
        if (!eval(traj, ca, x, t + static_cast<std::size_t>(n), f.children[0])) return false;
        if (eval(traj, ca, x, t + static_cast<std::size_t>(n) + 1, f.children[1])) return true;
      }
      return false;
  }
  throw Error("corrupt formula");
}

}  // namespace

bool check(const CellularAutomaton& ca, int cell, const Configuration& c,
           const Formula& phi) {
  Trajectory traj(ca, c);
  return eval(traj, ca, cell, 0, phi);
}

std::pair<int, int> lasso(const CellularAutomaton& ca, const Configuration& c) {
  Trajectory traj(ca, c);
  return traj.lasso();
}

ValidityVerdict valid(const CellularAutomaton& ca, int baseCell, const Formula& phi,
                      const ValidityMode& mode) {
  if (std::holds_alternative<ExhaustiveMode>(mode)) {
    configuration_count(ca, std::get<ExhaustiveMode>(mode).cap);
    Configuration c(ca.cells.size(), 0);
    while (true) {
      if (!check(ca, baseCell, c, phi)) return {false, c};
      // lexicographic in cell declaration order: last cell varies fastest
      std::size_t i = c.size();
      bool wrapped = true;
      while (i-- > 0) {
        if (++c[i] < ca.stateCount) {
          wrapped = false;
          break;
        }
        c[i] = 0;
      }
      if (wrapped) return {};
    }
  }
  const auto& sm = std::get<SampleMode>(mode);
  std::mt19937_64 rng(sm.seed);
  std::uniform_int_distribution<int> dist(0, ca.stateCount - 1);
  for (int k = 0; k < sm.samples; ++k) {
    Configuration c(ca.cells.size());
    for (int& s : c) s = dist(rng);
    if (!check(ca, baseCell, c, phi)) return {false, c};
  }
  return {};
}

Formula probe_config_formula(const CellularAutomaton& ca, int cell, const LocalConfig& f) {
  if (!is_orbit_invariant(ca, cell, f)) throw NotOrbitInvariantError();
  Formula conj{Formula::Kind::And};
  for (std::size_t n = 0; n < ca.neighborhood.size(); ++n) {
    Formula probe{Formula::Kind::Space};
    probe.word = ca.neighborhood[n].word;
    probe.children = {Formula::Atomic(f[n])};
    conj.children.push_back(std::move(probe));
  }
  if (conj.children.size() == 1) return conj.children[0];
  return conj;
}

Formula probe_rule_formula(const CellularAutomaton& ca, int cell, const LocalConfig& f,
                           int s) {
  Formula next{Formula::Kind::Next};
  next.children = {Formula::Atomic(s)};
  Formula impl{Formula::Kind::Implies};
  impl.children = {probe_config_formula(ca, cell, f), std::move(next)};
  return impl;
}

namespace {

Formula random_formula_rec(std::mt19937_64& rng, int depth, const CellularAutomaton& ca,
                           const std::vector<Word>& wordPool) {
  std::uniform_int_distribution<int> atomDist(0, ca.stateCount - 1);
  if (depth <= 0) return Formula::Atomic(atomDist(rng));
  std::uniform_int_distribution<int> kindDist(0, 9);
  std::uniform_int_distribution<int> arityDist(2, 3);
  std::uniform_int_distribution<long> boundDist(0, 3);
  switch (kindDist(rng)) {
    case 0:
      return Formula::Atomic(atomDist(rng));
    case 1: {
      Formula f{Formula::Kind::Not};
      f.children = {random_formula_rec(rng, depth - 1, ca, wordPool)};
      return f;
    }
    case 2: case 3: {
      Formula f{(rng() % 2 == 0) ? Formula::Kind::And : Formula::Kind::Or};
      int arity = arityDist(rng);
      for (int i = 0; i < arity; ++i)
        f.children.push_back(random_formula_rec(rng, depth - 1, ca, wordPool));
      return f;
    }
    case 4: {
      Formula f{Formula::Kind::Implies};
      f.children = {random_formula_rec(rng, depth - 1, ca, wordPool),
                    random_formula_rec(rng, depth - 1, ca, wordPool)};
      return f;
    }
    case 5: {
      Formula f{Formula::Kind::Space};
      std::uniform_int_distribution<std::size_t> wordDist(0, wordPool.size() - 1);
      f.word = wordPool[wordDist(rng)];
      f.children = {random_formula_rec(rng, depth - 1, ca, wordPool)};
      return f;
    }
    case 6: {
      Formula f{Formula::Kind::Next};
      f.children = {random_formula_rec(rng, depth - 1, ca, wordPool)};
      return f;
    }
    case 7: case 8: {
      Formula f{rng() % 2 == 0 ? Formula::Kind::FBounded : Formula::Kind::GBounded};
      f.bound = boundDist(rng);
      f.children = {random_formula_rec(rng, depth - 1, ca, wordPool)};
      return f;
    }
    default: {
      Formula f{Formula::Kind::UBounded};
      f.bound = boundDist(rng);
      f.children = {random_formula_rec(rng, depth - 1, ca, wordPool),
                    random_formula_rec(rng, depth - 1, ca, wordPool)};
      return f;
    }
  }
}

}  // namespace

Formula random_formula(std::uint64_t seed, int depth, const CellularAutomaton& ca) {
  std::mt19937_64 rng(seed);
  std::vector<Word> pool;
  for (const auto& e : ca.neighborhood) pool.push_back(e.word);
  std::size_t single = pool.size();
  for (std::size_t i = 0; i < single; ++i)
    for (std::size_t j = 0; j < single; ++j)
      pool.push_back(word_concat(pool[i], pool[j]));
  if (pool.empty()) pool.push_back(Word{});
  return random_formula_rec(rng, depth, ca, pool);
}

Configuration random_configuration(std::uint64_t seed, const CellularAutomaton& ca) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, ca.stateCount - 1);
  Configuration c(ca.cells.size());
  for (int& s : c) s = dist(rng);
  return c;
}

}  // namespace mca
