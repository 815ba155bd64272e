#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mca/automaton.hpp"
#include "mca/logic.hpp"

namespace mca {

// Total cell map from a source automaton to a target automaton.
struct CellMapSpec {
  std::vector<int> mapping;  // per source cell index -> target cell index
};

// Per-target-cell directive describing how a configuration of the source is
// pushed forward to the target.
struct SectionDirective {
  enum class Kind { Copy, Const };
  Kind kind = Kind::Const;
  int arg = 0;  // source cell for Copy, state for Const
};

struct SectionSpec {
  std::vector<SectionDirective> perTarget;  // indexed by target cell
};

using TransportSpec = SectionSpec;

struct BisimulationWitness {
  std::vector<std::pair<int, int>> pairs;  // (cell of gamma, cell of delta)
  std::optional<std::pair<int, int>> basePair;
};

// Throws IncompatibleSignaturesError unless both automata share generators,
// relations, neighborhood (names and words) and state count.
void require_compatible(const CellularAutomaton& g, const CellularAutomaton& d);

struct MorphismFailure {
  enum class Stage { Equivariance, Rule };
  Stage stage = Stage::Equivariance;
  int cell = -1;       // source cell
  int generator = -1;  // Equivariance witness
  LocalConfig f;       // Rule witness
  int outSource = -1, outTarget = -1;
};

struct MorphismVerdict {
  bool pass = true;
  std::optional<MorphismFailure> failure;
  std::string message;
  explicit operator bool() const { return pass; }
};

// Equivariance plus rule coherence on every local configuration of the
// target cell (included in the source cell's legal inputs).
MorphismVerdict check_pre_morphism(const CellularAutomaton& g, const CellularAutomaton& d,
                                   const CellMapSpec& f);

Configuration pushforward(const SectionSpec& s, const Configuration& c,
                          std::size_t targetCells);

// Pullback along f of a target configuration.
Configuration pullback(const CellMapSpec& f, const Configuration& targetConfig);

struct SectionVerdict {
  bool pass = true;
  std::optional<Configuration> counterexample;
  explicit operator bool() const { return pass; }
};

// Verifies pullback-along-f of pushforward(s, c) equals c for all (or
// sampled) source configurations.
SectionVerdict check_section(const CellularAutomaton& g, const CellularAutomaton& d,
                             const CellMapSpec& f, const SectionSpec& s,
                             const ValidityMode& mode);

struct CellularMorphismVerdict {
  bool pass = true;
  std::string message;
  std::optional<MorphismFailure> morphismFailure;
  std::optional<Configuration> counterexample;
  explicit operator bool() const { return pass; }
};

CellularMorphismVerdict check_cellular_morphism(const CellularAutomaton& g, int x0,
                                                const CellularAutomaton& d, int y0,
                                                const CellMapSpec& f, const SectionSpec& s,
                                                const ValidityMode& mode);

BisimulationWitness graph_bisim_from_morphism(const CellularAutomaton& g,
                                              const CellularAutomaton& d,
                                              const CellMapSpec& f);

struct BisimulationFailure {
  enum class Kind { NotClosed, RuleMismatch };
  Kind kind = Kind::NotClosed;
  std::pair<int, int> pair{-1, -1};
  int generator = -1;  // NotClosed
  LocalConfig f;       // RuleMismatch: shared local config
  int outG = -1, outD = -1;
};

struct BisimulationVerdict {
  bool pass = true;
  std::optional<BisimulationFailure> failure;
  explicit operator bool() const { return pass; }
};

// Pairs closed under generators componentwise; equal rule outputs on every
// N-indexed map orbit-invariant at both sides of each pair.
BisimulationVerdict check_bisimulation(const CellularAutomaton& g,
                                       const CellularAutomaton& d,
                                       const BisimulationWitness& w);

// All maps N -> S invariant at cell x in g and at cell y in d simultaneously.
std::vector<LocalConfig> shared_local_configs(const CellularAutomaton& g, int x,
                                              const CellularAutomaton& d, int y);

// Membership test and paired step for the canonical configuration relation of
// a span: (c, d) consistent iff c(x) = d(y) for all related pairs.
struct ConsistentConfigs {
  const CellularAutomaton& g;
  const CellularAutomaton& d;
  BisimulationWitness witness;

  bool member(const Configuration& c, const Configuration& dcfg) const;
  std::pair<Configuration, Configuration> step(const Configuration& c,
                                               const Configuration& dcfg) const;
};

ConsistentConfigs consistent_configs(const CellularAutomaton& g,
                                     const CellularAutomaton& d,
                                     const BisimulationWitness& w);

struct BisimulationSearchFailure {
  Word reachingWord;          // word from the base pair to the offending pair
  std::pair<int, int> pair{-1, -1};
  LocalConfig f;              // offending shared local config
  int outG = -1, outD = -1;   // differing rule outputs
};

struct BisimulationSearchResult {
  std::optional<BisimulationWitness> witness;
  std::optional<BisimulationSearchFailure> failure;
  bool success() const { return witness.has_value(); }
};

// Synchronized BFS closure of (x0, y0) under generators, checking the shared
// local-config rule condition at every reached pair.
BisimulationSearchResult build_bisimulation(const CellularAutomaton& g, int x0,
                                            const CellularAutomaton& d, int y0);

struct DistinguishingFormula {
  Formula formula;
  Configuration configG;
  Configuration configD;
};

// <m>(probe(f) & O #outG): true at (g, x0, configG), false at (d, y0, configD).
// Verified internally by the model checker; throws LiftImpossibleError on a
// stale witness.
DistinguishingFormula distinguishing_formula(const CellularAutomaton& g, int x0,
                                             const CellularAutomaton& d, int y0,
                                             const BisimulationSearchFailure& fw);

struct TransportVerdict {
  bool pass = true;
  std::optional<std::pair<Formula, Configuration>> counterexample;
  explicit operator bool() const { return pass; }
};

TransportVerdict check_logical_transport(const CellularAutomaton& g, int x0,
                                         const CellularAutomaton& d, int y0,
                                         const TransportSpec& t, int depth, int samples,
                                         std::uint64_t seed);

struct TransportMorphismResult {
  std::optional<CellMapSpec> mapping;
  std::string conflict;  // empty on success
  bool success() const { return mapping.has_value(); }
};

// Recovers the unique based pre-cellular morphism from a logical transport by
// synchronized BFS over shortest words; verifies the result as a cellular
// morphism with section t.
TransportMorphismResult morphism_from_transport(const CellularAutomaton& g, int x0,
                                                const CellularAutomaton& d, int y0,
                                                const TransportSpec& t,
                                                const ValidityMode& mode);

// Materializes the span automaton on the witness pairs: componentwise action,
// rules taken from the gamma side.
CellularAutomaton span_automaton(const CellularAutomaton& g, const CellularAutomaton& d,
                                 const BisimulationWitness& w);

}  // namespace mca
