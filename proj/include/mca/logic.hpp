#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "mca/automaton.hpp"

namespace mca {

// Modal formulas.
//
// Grammar (serialized form): atoms `#INT`; `!p`, `p & q`, `p | q`, `p -> q`
// (right-assoc, precedence ! > & > | > ->); `<word> p`; `O p`; `F p`, `G p`,
// `p U q`; bounded `F[t] p`, `G[t] p`, `p U[t] q`; `true`/`false`; parens.
// True is the empty conjunction, False the empty disjunction.
struct Formula {
  enum class Kind {
    Atom, Not, And, Or, Implies,
    Space, Next,
    FBounded, GBounded, UBounded,
    F, G, U,
  };

  Kind kind = Kind::Atom;
  int atom = 0;        // Atom payload
  long bound = 0;      // bounded temporal horizon
  Word word;           // Space payload
  std::vector<Formula> children;

  friend bool operator==(const Formula&, const Formula&) = default;

  static Formula True() { return Formula{Kind::And}; }
  static Formula False() { return Formula{Kind::Or}; }
  static Formula Atomic(int s) { return Formula{Kind::Atom, s}; }
};

Formula parse_formula(std::string_view text, const MonoidPresentation& pres);
std::string serialize_formula(const Formula& f, const MonoidPresentation& pres);

// Trajectory of a configuration under the global rule, with lazy lasso
// detection; the finite configuration space forces configs[mu] = configs[mu+lambda].
class Trajectory {
 public:
  Trajectory(const CellularAutomaton& ca, Configuration initial);

  const Configuration& at(std::size_t t);
  // (mu, lambda): minimal transient and cycle length.
  std::pair<int, int> lasso();

 private:
  std::size_t canonical(std::size_t t) const;
  void extend();

  const CellularAutomaton& ca_;
  StepPlan plan_;
  std::vector<Configuration> configs_;
  std::unordered_map<Configuration, int, ConfigurationHash> seen_;
  std::optional<std::pair<int, int>> lasso_;
};

// Forcing relation at (ca, cell, c). Unbounded F/G/U are exact via lasso
// detection; U beyond the lasso without the target firing evaluates false.
bool check(const CellularAutomaton& ca, int cell, const Configuration& c,
           const Formula& phi);

std::pair<int, int> lasso(const CellularAutomaton& ca, const Configuration& c);

struct SampleMode {
  int samples = 0;
  std::uint64_t seed = 0;
};
struct ExhaustiveMode {
  unsigned long long cap = 2000000;
};
using ValidityMode = std::variant<ExhaustiveMode, SampleMode>;

struct ValidityVerdict {
  bool pass = true;
  std::optional<Configuration> counterexample;
  explicit operator bool() const { return pass; }
};

ValidityVerdict valid(const CellularAutomaton& ca, int baseCell, const Formula& phi,
                      const ValidityMode& mode);

// /\_{n in N} <word(n)> #f(n): true at (x, c) iff local_view(ca, x, c) = f.
Formula probe_config_formula(const CellularAutomaton& ca, int cell, const LocalConfig& f);

// probe_config_formula -> O #s: for c matching f, true iff the rule maps f to s.
Formula probe_rule_formula(const CellularAutomaton& ca, int cell, const LocalConfig& f,
                           int s);

// Deterministic generator for property tests; bounded temporal operators only,
// spatial words drawn from neighborhood words and their 2-fold concatenations.
Formula random_formula(std::uint64_t seed, int depth, const CellularAutomaton& ca);

Configuration random_configuration(std::uint64_t seed, const CellularAutomaton& ca);

}  // namespace mca
