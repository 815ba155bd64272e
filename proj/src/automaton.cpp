#include "mca/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace mca {

int CellularAutomaton::cell_index(std::string_view name) const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> CellularAutomaton::neighborhood_names() const {
  std::vector<std::string> out;
  out.reserve(neighborhood.size());
  for (const auto& entry : neighborhood) out.push_back(entry.name);
  return out;
}

int CellularAutomaton::neighborhood_index(std::string_view name) const {
  for (std::size_t i = 0; i < neighborhood.size(); ++i)
    if (neighborhood[i].name == name) return static_cast<int>(i);
  return -1;
}

int act(const CellularAutomaton& ca, int cell, const Word& w) {
  int cur = cell;
  for (int g : w.letters) cur = ca.action[static_cast<std::size_t>(cur)][static_cast<std::size_t>(g)];
  return cur;
}

Verdict validate(CellularAutomaton& ca) {
  const std::size_t nCells = ca.cells.size();
  const std::size_t nGens = ca.pres.generators.size();
  if (ca.stateCount < 1) return {false, "stateCount must be >= 1"};
  if (nCells == 0) return {false, "empty cell set"};
  if (ca.action.size() != nCells) return {false, "action table not total on cells"};
  for (std::size_t x = 0; x < nCells; ++x) {
    if (ca.action[x].size() != nGens)
      return {false, "action table not total on generators at cell " + ca.cells[x]};
    for (int target : ca.action[x])
      if (target < 0 || static_cast<std::size_t>(target) >= nCells)
        return {false, "action target out of range at cell " + ca.cells[x]};
  }
  if (ca.params.empty()) ca.params.assign(nCells, 0);
  if (ca.params.size() != nCells) return {false, "params not total on cells"};
  if (ca.rules.size() != nCells) return {false, "rules not total on cells"};

  // Relation coherence: acting both sides of every relation agrees per cell.
  for (const auto& [u, v] : ca.pres.relations) {
    for (int g : u.letters)
      if (g < 0 || static_cast<std::size_t>(g) >= nGens) return {false, "malformed relation word"};
    for (int g : v.letters)
      if (g < 0 || static_cast<std::size_t>(g) >= nGens) return {false, "malformed relation word"};
    for (std::size_t x = 0; x < nCells; ++x) {
      int a = act(ca, static_cast<int>(x), u);
      int b = act(ca, static_cast<int>(x), v);
      if (a != b)
        return {false, "relation " + format_word(u, ca.pres) + " == " +
                           format_word(v, ca.pres) + " violated at cell " + ca.cells[x] +
                           " (reaches " + ca.cells[static_cast<std::size_t>(a)] + " vs " +
                           ca.cells[static_cast<std::size_t>(b)] + ")"};
    }
  }

  std::set<std::string> seenNames;
  for (const auto& entry : ca.neighborhood) {
    if (!seenNames.insert(entry.name).second)
      return {false, "duplicate neighborhood name '" + entry.name + "'"};
    for (int g : entry.word.letters)
      if (g < 0 || static_cast<std::size_t>(g) >= nGens)
        return {false, "malformed neighborhood word for '" + entry.name + "'"};
  }

  const std::vector<std::string> names = ca.neighborhood_names();
  std::map<std::pair<std::string, long>, RangeVerdict> rangeMemo;
  for (std::size_t x = 0; x < nCells; ++x) {
    try {
      bind_neighbors(ca.rules[x], names);
    } catch (const Error& err) {
      return {false, std::string(err.what()) + " at cell " + ca.cells[x]};
    }
    auto key = std::make_pair(serialize_rule(ca.rules[x]), ca.params[x]);
    auto it = rangeMemo.find(key);
    if (it == rangeMemo.end())
      it = rangeMemo.emplace(key, check_range(ca.rules[x], names, ca.stateCount, ca.params[x])).first;
    if (!it->second.pass)
      return {false, "rule at cell " + ca.cells[x] + " fails range check: " + it->second.reason};
  }
  if (ca.base && (*ca.base < 0 || static_cast<std::size_t>(*ca.base) >= nCells))
    return {false, "base cell out of range"};
  return {};
}

OrbitRelation orbit_relation(const CellularAutomaton& ca, int cell) {
  OrbitRelation rel;
  const std::size_t n = ca.neighborhood.size();
  rel.classOf.assign(n, -1);
  std::vector<int> target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = act(ca, cell, ca.neighborhood[i].word);
  for (std::size_t i = 0; i < n; ++i) {
    if (rel.classOf[i] >= 0) continue;
    int cls = rel.classCount++;
    for (std::size_t j = i; j < n; ++j)
      if (rel.classOf[j] < 0 && target[j] == target[i]) rel.classOf[j] = cls;
  }
  return rel;
}

std::vector<std::vector<int>> OrbitRelation::classes() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(classCount));
  for (std::size_t i = 0; i < classOf.size(); ++i)
    out[static_cast<std::size_t>(classOf[i])].push_back(static_cast<int>(i));
  return out;
}

bool is_orbit_invariant(const CellularAutomaton& ca, int cell, const LocalConfig& f) {
  OrbitRelation rel = orbit_relation(ca, cell);
  for (const auto& cls : rel.classes())
    for (std::size_t k = 1; k < cls.size(); ++k)
      if (f[static_cast<std::size_t>(cls[k])] != f[static_cast<std::size_t>(cls[0])])
        return false;
  return true;
}

std::vector<LocalConfig> local_configs(const CellularAutomaton& ca, int cell) {
  OrbitRelation rel = orbit_relation(ca, cell);
  const int classCount = rel.classCount;
  std::vector<LocalConfig> out;
  std::vector<int> classState(static_cast<std::size_t>(classCount), 0);
  while (true) {
    LocalConfig f(ca.neighborhood.size());
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] = classState[static_cast<std::size_t>(rel.classOf[i])];
    out.push_back(std::move(f));
    int i = 0;
    for (; i < classCount; ++i) {
      if (++classState[static_cast<std::size_t>(i)] < ca.stateCount) break;
      classState[static_cast<std::size_t>(i)] = 0;
    }
    if (i == classCount) break;
  }
  return out;
}

LocalConfig local_view(const CellularAutomaton& ca, int cell, const Configuration& c) {
  LocalConfig f(ca.neighborhood.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = c[static_cast<std::size_t>(act(ca, cell, ca.neighborhood[i].word))];
  return f;
}

int evaluation_map(const CellularAutomaton& ca, int cell, const LocalConfig& f) {
  if (!is_orbit_invariant(ca, cell, f)) throw NotOrbitInvariantError();
  RuleExpr rule = ca.rules[static_cast<std::size_t>(cell)];
  bind_neighbors(rule, ca.neighborhood_names());
  return static_cast<int>(eval_rule(rule, f, ca.params[static_cast<std::size_t>(cell)]));
}

std::vector<std::vector<int>> neighbor_table(const CellularAutomaton& ca) {
  std::vector<std::vector<int>> table(ca.cells.size(),
                                      std::vector<int>(ca.neighborhood.size()));
  for (std::size_t x = 0; x < ca.cells.size(); ++x)
    for (std::size_t n = 0; n < ca.neighborhood.size(); ++n)
      table[x][n] = act(ca, static_cast<int>(x), ca.neighborhood[n].word);
  return table;
}

Configuration global_step(const CellularAutomaton& ca, const Configuration& c,
                          const std::vector<std::vector<int>>& table) {
  Configuration out(c.size());
  LocalConfig f(ca.neighborhood.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t n = 0; n < f.size(); ++n)
      f[n] = c[static_cast<std::size_t>(table[x][n])];
    out[x] = static_cast<int>(eval_rule(ca.rules[x], f, ca.params[x]));
  }
  return out;
}

StepPlan make_step_plan(const CellularAutomaton& ca) {
  StepPlan plan;
  plan.width = ca.neighborhood.size();
  plan.table.resize(ca.cells.size() * plan.width);
  plan.ruleOf.resize(ca.cells.size());
  for (std::size_t x = 0; x < ca.cells.size(); ++x) {
    for (std::size_t n = 0; n < plan.width; ++n)
      plan.table[x * plan.width + n] = act(ca, static_cast<int>(x), ca.neighborhood[n].word);
    int idx = -1;
    for (std::size_t i = 0; i < plan.rules.size(); ++i)
      if (plan.rules[i] == ca.rules[x]) {
        idx = static_cast<int>(i);
        break;
      }
    if (idx < 0) {
      idx = static_cast<int>(plan.rules.size());
      plan.rules.push_back(ca.rules[x]);
    }
    plan.ruleOf[x] = idx;
  }
  const std::vector<std::string> names = ca.neighborhood_names();
  for (RuleExpr& rule : plan.rules) bind_neighbors(rule, names);
  return plan;
}

Configuration global_step(const CellularAutomaton& ca, const Configuration& c,
                          const StepPlan& plan) {
  Configuration out(c.size());
  LocalConfig f(plan.width);
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t n = 0; n < plan.width; ++n)
      f[n] = c[static_cast<std::size_t>(plan.table[x * plan.width + n])];
    out[x] = static_cast<int>(
        eval_rule(plan.rules[static_cast<std::size_t>(plan.ruleOf[x])], f, ca.params[x]));
  }
  return out;
}

Configuration global_step(const CellularAutomaton& ca, const Configuration& c) {
  return global_step(ca, c, make_step_plan(ca));
}

std::vector<Configuration> evolve(const CellularAutomaton& ca, const Configuration& c,
                                  int steps) {
  StepPlan plan = make_step_plan(ca);
  std::vector<Configuration> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(c);
  for (int i = 0; i < steps; ++i) out.push_back(global_step(ca, out.back(), plan));
  return out;
}

ReachableSet reachable_set(const CellularAutomaton& ca, int cell) {
  ReachableSet rs;
  std::deque<int> queue{cell};
  rs.witness[cell] = Word{};
  rs.cells.push_back(cell);
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < ca.pres.generators.size(); ++g) {
      int y = ca.action[static_cast<std::size_t>(x)][g];
      if (rs.witness.contains(y)) continue;
      Word w = rs.witness[x];
      w.letters.push_back(static_cast<int>(g));
      rs.witness[y] = std::move(w);
      rs.cells.push_back(y);
      queue.push_back(y);
    }
  }
  rs.covers_all = rs.cells.size() == ca.cells.size();
  return rs;
}

CellularAutomaton restrict_to(const CellularAutomaton& ca, const std::vector<int>& subset) {
  std::vector<int> newIndex(ca.cells.size(), -1);
  // keep declaration order
  std::vector<int> ordered = subset;
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
  for (std::size_t i = 0; i < ordered.size(); ++i)
    newIndex[static_cast<std::size_t>(ordered[i])] = static_cast<int>(i);

  CellularAutomaton out;
  out.pres = ca.pres;
  out.stateCount = ca.stateCount;
  out.neighborhood = ca.neighborhood;
  for (int x : ordered) {
    out.cells.push_back(ca.cells[static_cast<std::size_t>(x)]);
    out.rules.push_back(ca.rules[static_cast<std::size_t>(x)]);
    out.params.push_back(ca.params[static_cast<std::size_t>(x)]);
    std::vector<int> row;
    for (std::size_t g = 0; g < ca.pres.generators.size(); ++g) {
      int y = ca.action[static_cast<std::size_t>(x)][g];
      if (newIndex[static_cast<std::size_t>(y)] < 0)
        throw NotClosedError(ca.cells[static_cast<std::size_t>(x)], ca.pres.generators[g]);
      row.push_back(newIndex[static_cast<std::size_t>(y)]);
    }
    out.action.push_back(std::move(row));
  }
  if (ca.base && newIndex[static_cast<std::size_t>(*ca.base)] >= 0)
    out.base = newIndex[static_cast<std::size_t>(*ca.base)];
  return out;
}

unsigned long long configuration_count(const CellularAutomaton& ca,
                                       unsigned long long cap) {
  unsigned long long total = 1;
  for (std::size_t i = 0; i < ca.cells.size(); ++i) {
    total *= static_cast<unsigned long long>(ca.stateCount);
    if (total > cap) throw CapExceededError(total, cap);
  }
  return total;
}

}  // namespace mca
