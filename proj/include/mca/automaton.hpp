#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mca/monoid.hpp"
#include "mca/rulelang.hpp"

namespace mca {

// Total assignment of states to cells, in cell declaration order.
using Configuration = std::vector<int>;

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int s : c) h = (h ^ static_cast<std::size_t>(s)) * 1099511628211ull;
    return h;
  }
};

struct NeighborhoodEntry {
  std::string name;
  Word word;
};

// A finite cellular automaton over a presented monoid action. The generator
// table `action` generates the full action by word folding; `rules` holds one
// expression per cell evaluated against the neighborhood states and the
// per-cell parameter K.
struct CellularAutomaton {
  MonoidPresentation pres;
  std::vector<std::string> cells;
  std::vector<std::vector<int>> action;  // action[cell][generator] -> cell
  int stateCount = 1;
  std::vector<NeighborhoodEntry> neighborhood;
  std::vector<RuleExpr> rules;   // per cell, neighbor references bound lazily
  std::vector<long> params;      // per cell, default 0
  std::optional<int> base;

  int cell_index(std::string_view name) const;
  std::vector<std::string> neighborhood_names() const;
  int neighborhood_index(std::string_view name) const;
};

struct Verdict {
  bool pass = true;
  std::string message;
  explicit operator bool() const { return pass; }
};

// Checks action totality, per-cell relation coherence, unique neighborhood
// names, well-formed words, and that every rule passes check_range. Also
// binds rule neighbor references for fast evaluation.
Verdict validate(CellularAutomaton& ca);

int act(const CellularAutomaton& ca, int cell, const Word& w);

// Classes of neighborhood entries whose words reach the same cell from x.
struct OrbitRelation {
  std::vector<int> classOf;  // per neighborhood entry, class id 0..classCount-1
  int classCount = 0;

  bool related(int n1, int n2) const { return classOf[n1] == classOf[n2]; }
  std::vector<std::vector<int>> classes() const;
};

OrbitRelation orbit_relation(const CellularAutomaton& ca, int cell);

bool is_orbit_invariant(const CellularAutomaton& ca, int cell, const LocalConfig& f);

// All orbit-invariant assignments at a cell; |S|^(#classes) entries.
std::vector<LocalConfig> local_configs(const CellularAutomaton& ca, int cell);

LocalConfig local_view(const CellularAutomaton& ca, int cell, const Configuration& c);

// gamma_2(x)(f); throws NotOrbitInvariantError when f is not a legal input.
int evaluation_map(const CellularAutomaton& ca, int cell, const LocalConfig& f);

// Per-cell target table for every neighborhood entry: table[x][n] = act(x, word(n)).
std::vector<std::vector<int>> neighbor_table(const CellularAutomaton& ca);

// Precompiled plan for repeated stepping: the neighbor table is flattened and
// structurally identical rules share one bound copy, keeping per-cell memory
// traffic flat in the number of cells.
struct StepPlan {
  std::size_t width = 0;        // neighborhood size
  std::vector<int> table;       // cell-major, cells x width
  std::vector<int> ruleOf;      // per cell, index into rules
  std::vector<RuleExpr> rules;  // distinct rules, neighbor-bound
};

StepPlan make_step_plan(const CellularAutomaton& ca);

Configuration global_step(const CellularAutomaton& ca, const Configuration& c);
Configuration global_step(const CellularAutomaton& ca, const Configuration& c,
                          const std::vector<std::vector<int>>& table);
Configuration global_step(const CellularAutomaton& ca, const Configuration& c,
                          const StepPlan& plan);

// [c, G(c), ..., G^steps(c)]
std::vector<Configuration> evolve(const CellularAutomaton& ca, const Configuration& c,
                                  int steps);

struct ReachableSet {
  std::vector<int> cells;                    // in BFS discovery order
  std::unordered_map<int, Word> witness;     // shortest word per reached cell
  bool covers_all = false;
};

ReachableSet reachable_set(const CellularAutomaton& ca, int cell);

// Sub-automaton on a generator-closed subset; throws NotClosedError otherwise.
CellularAutomaton restrict_to(const CellularAutomaton& ca, const std::vector<int>& subset);

unsigned long long configuration_count(const CellularAutomaton& ca,
                                       unsigned long long cap);

}  // namespace mca
