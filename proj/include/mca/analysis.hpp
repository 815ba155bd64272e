#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mca/automaton.hpp"

namespace mca {

// {q : every cell's rule maps the constant-q local configuration to q}.
std::vector<int> quiescent_states(const CellularAutomaton& ca);

// All configurations fixed by the global rule; throws CapExceededError when
// stateCount^|cells| > cap.
std::vector<Configuration> fixed_points(const CellularAutomaton& ca,
                                        unsigned long long cap);

// Least p >= 1 with G^p the identity on all configurations, or nullopt when G
// is not injective. Computed as the lcm of cycle lengths of the permutation.
std::optional<long> periodicity(const CellularAutomaton& ca, unsigned long long cap);

struct Nilpotency {
  long t = 0;              // least t with G^t constant
  Configuration bottom;    // the unique fixed point
};

std::optional<Nilpotency> nilpotency(const CellularAutomaton& ca,
                                     unsigned long long cap);

struct OneWayWitness {
  int cell = -1;
  Word word;
};

struct OneWayVerdict {
  bool pass = true;
  int length = 0;  // the bound L the verdict holds up to
  std::vector<OneWayWitness> witnesses;
  explicit operator bool() const { return pass; }
};

// Searches words of length <= L (length-lex order) for a cell-fixing word not
// certified equal to the identity; collects witnesses up to an internal cap so
// callers can inspect alternatives beyond the minimal one.
OneWayVerdict one_way_bounded(const CellularAutomaton& ca, int L);

// Header "step" + cell names; one space-separated row per step.
std::string trajectory_table(const CellularAutomaton& ca, const Configuration& c,
                             int steps);

}  // namespace mca
