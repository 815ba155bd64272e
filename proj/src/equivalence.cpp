#include "mca/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace mca {

void require_compatible(const CellularAutomaton& g, const CellularAutomaton& d) {
  if (g.pres.generators != d.pres.generators)
    throw IncompatibleSignaturesError("different generator lists");
  auto rels = [](const MonoidPresentation& p) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for (const auto& [u, v] : p.relations) out.emplace_back(u.letters, v.letters);
    std::sort(out.begin(), out.end());
    return out;
  };
  if (rels(g.pres) != rels(d.pres))
    throw IncompatibleSignaturesError("different relation sets");
  if (g.stateCount != d.stateCount)
    throw IncompatibleSignaturesError("different state counts");
  if (g.neighborhood.size() != d.neighborhood.size())
    throw IncompatibleSignaturesError("different neighborhood sizes");
  for (std::size_t i = 0; i < g.neighborhood.size(); ++i)
    if (g.neighborhood[i].name != d.neighborhood[i].name ||
        g.neighborhood[i].word != d.neighborhood[i].word)
      throw IncompatibleSignaturesError("different neighborhood entries");
}

MorphismVerdict check_pre_morphism(const CellularAutomaton& g, const CellularAutomaton& d,
                                   const CellMapSpec& f) {
  require_compatible(g, d);
  if (f.mapping.size() != g.cells.size())
    throw IncompatibleSignaturesError("cell map not total on source cells");
  for (int y : f.mapping)
    if (y < 0 || static_cast<std::size_t>(y) >= d.cells.size())
      throw IncompatibleSignaturesError("cell map target out of range");

  for (std::size_t x = 0; x < g.cells.size(); ++x) {
    for (std::size_t gen = 0; gen < g.pres.generators.size(); ++gen) {
      int lhs = f.mapping[static_cast<std::size_t>(g.action[x][gen])];
      int rhs = d.action[static_cast<std::size_t>(f.mapping[x])][gen];
      if (lhs != rhs) {
        MorphismVerdict v{false};
        v.failure = MorphismFailure{MorphismFailure::Stage::Equivariance,
                                    static_cast<int>(x), static_cast<int>(gen)};
        v.message = "equivariance fails at (" + g.cells[x] + ", " +
                    g.pres.generators[gen] + ")";
        return v;
      }
    }
  }
  for (std::size_t x = 0; x < g.cells.size(); ++x) {
    int y = f.mapping[x];
    for (const LocalConfig& h : local_configs(d, y)) {
      // h lies in the source cell's legal inputs by equivariance
      int outG = evaluation_map(g, static_cast<int>(x), h);
      int outD = evaluation_map(d, y, h);
      if (outG != outD) {
        MorphismVerdict v{false};
        MorphismFailure fail{MorphismFailure::Stage::Rule, static_cast<int>(x), -1, h,
                             outG, outD};
        v.failure = std::move(fail);
        v.message = "rule coherence fails at cell " + g.cells[x];
        return v;
      }
    }
  }
  return {};
}

Configuration pushforward(const SectionSpec& s, const Configuration& c,
                          std::size_t targetCells) {
  if (s.perTarget.size() != targetCells)
    throw Error("section spec not total on target cells");
  Configuration out(targetCells);
  for (std::size_t y = 0; y < targetCells; ++y) {
    const SectionDirective& dir = s.perTarget[y];
    out[y] = dir.kind == SectionDirective::Kind::Copy
                 ? c[static_cast<std::size_t>(dir.arg)]
                 : dir.arg;
  }
  return out;
}

Configuration pullback(const CellMapSpec& f, const Configuration& targetConfig) {
  Configuration out(f.mapping.size());
  for (std::size_t x = 0; x < f.mapping.size(); ++x)
    out[x] = targetConfig[static_cast<std::size_t>(f.mapping[x])];
  return out;
}

namespace {

// Applies fn to every configuration selected by mode; returns the first
// configuration on which fn is false.
std::optional<Configuration> first_violation(const CellularAutomaton& g,
                                             const ValidityMode& mode,
                                             const std::function<bool(const Configuration&)>& fn) {
  if (std::holds_alternative<ExhaustiveMode>(mode)) {
    configuration_count(g, std::get<ExhaustiveMode>(mode).cap);
    Configuration c(g.cells.size(), 0);
    while (true) {
      if (!fn(c)) return c;
      std::size_t i = c.size();
      bool wrapped = true;
      while (i-- > 0) {
        if (++c[i] < g.stateCount) {
          wrapped = false;
          break;
        }
        c[i] = 0;
      }
      if (wrapped) return std::nullopt;
    }
  }
  const auto& sm = std::get<SampleMode>(mode);
  std::mt19937_64 rng(sm.seed);
  std::uniform_int_distribution<int> dist(0, g.stateCount - 1);
  for (int k = 0; k < sm.samples; ++k) {
    Configuration c(g.cells.size());
    for (int& s : c) s = dist(rng);
    if (!fn(c)) return c;
  }
  return std::nullopt;
}

}  // namespace

SectionVerdict check_section(const CellularAutomaton& g, const CellularAutomaton& d,
                             const CellMapSpec& f, const SectionSpec& s,
                             const ValidityMode& mode) {
  auto violation = first_violation(g, mode, [&](const Configuration& c) {
    return pullback(f, pushforward(s, c, d.cells.size())) == c;
  });
  if (violation) return {false, *violation};
  return {};
}

CellularMorphismVerdict check_cellular_morphism(const CellularAutomaton& g, int x0,
                                                const CellularAutomaton& d, int y0,
                                                const CellMapSpec& f, const SectionSpec& s,
                                                const ValidityMode& mode) {
  CellularMorphismVerdict out;
  MorphismVerdict pre = check_pre_morphism(g, d, f);
  if (!pre) {
    out.pass = false;
    out.message = pre.message;
    out.morphismFailure = pre.failure;
    return out;
  }
  if (f.mapping[static_cast<std::size_t>(x0)] != y0) {
    out.pass = false;
    out.message = "base cell not preserved";
    return out;
  }
  SectionVerdict sv = check_section(g, d, f, s, mode);
  if (!sv) {
    out.pass = false;
    out.message = "section law fails";
    out.counterexample = sv.counterexample;
    return out;
  }
  // naturality of the global rule along the section
  auto violation = first_violation(g, mode, [&](const Configuration& c) {
    Configuration stepped = global_step(d, pushforward(s, c, d.cells.size()));
    return pullback(f, stepped) == global_step(g, c);
  });
  if (violation) {
    out.pass = false;
    out.message = "global-rule naturality fails";
    out.counterexample = *violation;
  }
  return out;
}

BisimulationWitness graph_bisim_from_morphism(const CellularAutomaton& g,
                                              const CellularAutomaton& d,
                                              const CellMapSpec& f) {
  (void)d;
  BisimulationWitness w;
  for (std::size_t x = 0; x < g.cells.size(); ++x)
    w.pairs.emplace_back(static_cast<int>(x), f.mapping[x]);
  return w;
}

std::vector<LocalConfig> shared_local_configs(const CellularAutomaton& g, int x,
                                              const CellularAutomaton& d, int y) {
  const std::size_t n = g.neighborhood.size();
  // joint classes: union of both orbit relations
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
  OrbitRelation rg = orbit_relation(g, x);
  OrbitRelation rd = orbit_relation(d, y);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rg.related(static_cast<int>(i), static_cast<int>(j))) unite(static_cast<int>(i), static_cast<int>(j));
      if (rd.related(static_cast<int>(i), static_cast<int>(j))) unite(static_cast<int>(i), static_cast<int>(j));
    }
  std::vector<int> classOf(n);
  std::map<int, int> renumber;
  for (std::size_t i = 0; i < n; ++i) {
    int root = find(static_cast<int>(i));
    auto [it, fresh] = renumber.emplace(root, static_cast<int>(renumber.size()));
    classOf[i] = it->second;
    (void)fresh;
  }
  const int classCount = static_cast<int>(renumber.size());

  std::vector<LocalConfig> out;
  std::vector<int> classState(static_cast<std::size_t>(classCount), 0);
  while (true) {
    LocalConfig f(n);
    for (std::size_t i = 0; i < n; ++i)
      f[i] = classState[static_cast<std::size_t>(classOf[i])];
    out.push_back(std::move(f));
    int i = 0;
    for (; i < classCount; ++i) {
      if (++classState[static_cast<std::size_t>(i)] < g.stateCount) break;
      classState[static_cast<std::size_t>(i)] = 0;
    }
    if (i == classCount) break;
  }
  return out;
}

namespace {

std::optional<BisimulationFailure> rule_condition(const CellularAutomaton& g,
                                                  const CellularAutomaton& d,
                                                  std::pair<int, int> pair) {
  for (const LocalConfig& f : shared_local_configs(g, pair.first, d, pair.second)) {
    int outG = evaluation_map(g, pair.first, f);
    int outD = evaluation_map(d, pair.second, f);
    if (outG != outD)
      return BisimulationFailure{BisimulationFailure::Kind::RuleMismatch, pair, -1, f,
                                 outG, outD};
  }
  return std::nullopt;
}

}  // namespace

BisimulationVerdict check_bisimulation(const CellularAutomaton& g,
                                       const CellularAutomaton& d,
                                       const BisimulationWitness& w) {
  require_compatible(g, d);
  std::set<std::pair<int, int>> pairSet(w.pairs.begin(), w.pairs.end());
  for (const auto& pair : w.pairs) {
    for (std::size_t gen = 0; gen < g.pres.generators.size(); ++gen) {
      std::pair<int, int> next{
          g.action[static_cast<std::size_t>(pair.first)][gen],
          d.action[static_cast<std::size_t>(pair.second)][gen]};
      if (!pairSet.contains(next)) {
        BisimulationVerdict v{false};
        v.failure = BisimulationFailure{BisimulationFailure::Kind::NotClosed, pair,
                                        static_cast<int>(gen)};
        return v;
      }
    }
    if (auto fail = rule_condition(g, d, pair)) return {false, std::move(fail)};
  }
  return {};
}

bool ConsistentConfigs::member(const Configuration& c, const Configuration& dcfg) const {
  for (const auto& [x, y] : witness.pairs)
    if (c[static_cast<std::size_t>(x)] != dcfg[static_cast<std::size_t>(y)]) return false;
  return true;
}

std::pair<Configuration, Configuration> ConsistentConfigs::step(
    const Configuration& c, const Configuration& dcfg) const {
  return {global_step(g, c), global_step(d, dcfg)};
}

ConsistentConfigs consistent_configs(const CellularAutomaton& g,
                                     const CellularAutomaton& d,
                                     const BisimulationWitness& w) {
  return ConsistentConfigs{g, d, w};
}

BisimulationSearchResult build_bisimulation(const CellularAutomaton& g, int x0,
                                            const CellularAutomaton& d, int y0) {
  require_compatible(g, d);
  BisimulationWitness w;
  w.basePair = {x0, y0};
  std::map<std::pair<int, int>, Word> reached;
  std::deque<std::pair<int, int>> queue;
  reached[{x0, y0}] = Word{};
  queue.push_back({x0, y0});
  w.pairs.push_back({x0, y0});
  while (!queue.empty()) {
    auto pair = queue.front();
    queue.pop_front();
    if (auto fail = rule_condition(g, d, pair)) {
      BisimulationSearchResult out;
      out.failure = BisimulationSearchFailure{reached[pair], pair, fail->f, fail->outG,
                                              fail->outD};
      return out;
    }
    for (std::size_t gen = 0; gen < g.pres.generators.size(); ++gen) {
      std::pair<int, int> next{
          g.action[static_cast<std::size_t>(pair.first)][gen],
          d.action[static_cast<std::size_t>(pair.second)][gen]};
      if (reached.contains(next)) continue;
      Word word = reached[pair];
      word.letters.push_back(static_cast<int>(gen));
      reached.emplace(next, std::move(word));
      w.pairs.push_back(next);
      queue.push_back(next);
    }
  }
  return BisimulationSearchResult{std::move(w), std::nullopt};
}

DistinguishingFormula distinguishing_formula(const CellularAutomaton& g, int x0,
                                             const CellularAutomaton& d, int y0,
                                             const BisimulationSearchFailure& fw) {
  const auto [x, y] = fw.pair;
  if (x < 0 || static_cast<std::size_t>(x) >= g.cells.size() || y < 0 ||
      static_cast<std::size_t>(y) >= d.cells.size() ||
      fw.f.size() != g.neighborhood.size())
    throw LiftImpossibleError("stale bisimulation failure witness");
  if (!is_orbit_invariant(g, x, fw.f) || !is_orbit_invariant(d, y, fw.f))
    throw LiftImpossibleError("witness local configuration no longer orbit-invariant");

  Formula next{Formula::Kind::Next};
  next.children = {Formula::Atomic(fw.outG)};
  Formula body{Formula::Kind::And};
  body.children = {probe_config_formula(g, x, fw.f), std::move(next)};
  Formula phi{Formula::Kind::Space};
  phi.word = fw.reachingWord;
  phi.children = {std::move(body)};

  // lift the local configuration along the neighborhood maps, state 0 elsewhere
  Configuration cg(g.cells.size(), 0), cd(d.cells.size(), 0);
  for (std::size_t n = 0; n < g.neighborhood.size(); ++n) {
    cg[static_cast<std::size_t>(act(g, x, g.neighborhood[n].word))] = fw.f[n];
    cd[static_cast<std::size_t>(act(d, y, d.neighborhood[n].word))] = fw.f[n];
  }
  if (!check(g, x0, cg, phi) || check(d, y0, cd, phi))
    throw LiftImpossibleError("distinguishing formula failed internal verification");
  return {std::move(phi), std::move(cg), std::move(cd)};
}

TransportVerdict check_logical_transport(const CellularAutomaton& g, int x0,
                                         const CellularAutomaton& d, int y0,
                                         const TransportSpec& t, int depth, int samples,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    Formula phi = random_formula(rng(), depth, g);
    Configuration c = random_configuration(rng(), g);
    Configuration dcfg = pushforward(t, c, d.cells.size());
    if (check(g, x0, c, phi) != check(d, y0, dcfg, phi))
      return {false, std::make_pair(std::move(phi), std::move(c))};
  }
  return {};
}

TransportMorphismResult morphism_from_transport(const CellularAutomaton& g, int x0,
                                                const CellularAutomaton& d, int y0,
                                                const TransportSpec& t,
                                                const ValidityMode& mode) {
  ReachableSet rs = reachable_set(g, x0);
  if (!rs.covers_all) {
    for (std::size_t x = 0; x < g.cells.size(); ++x)
      if (!rs.witness.contains(static_cast<int>(x)))
        throw NotReachableError(g.cells[x]);
  }

  CellMapSpec f;
  f.mapping.assign(g.cells.size(), -1);
  f.mapping[static_cast<std::size_t>(x0)] = y0;
  std::deque<int> queue{x0};
  std::vector<bool> seen(g.cells.size(), false);
  seen[static_cast<std::size_t>(x0)] = true;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t gen = 0; gen < g.pres.generators.size(); ++gen) {
      int xNext = g.action[static_cast<std::size_t>(x)][gen];
      int yNext = d.action[static_cast<std::size_t>(f.mapping[static_cast<std::size_t>(x)])][gen];
      if (!seen[static_cast<std::size_t>(xNext)]) {
        seen[static_cast<std::size_t>(xNext)] = true;
        f.mapping[static_cast<std::size_t>(xNext)] = yNext;
        queue.push_back(xNext);
      } else if (f.mapping[static_cast<std::size_t>(xNext)] != yNext) {
        TransportMorphismResult out;
        Word via = rs.witness.at(x);
        via.letters.push_back(static_cast<int>(gen));
        out.conflict = "words " + format_word(rs.witness.at(xNext), g.pres) + " and " +
                       format_word(via, g.pres) + " both reach cell " + g.cells[static_cast<std::size_t>(xNext)] +
                       " but map to " +
                       d.cells[static_cast<std::size_t>(f.mapping[static_cast<std::size_t>(xNext)])] +
                       " vs " + d.cells[static_cast<std::size_t>(yNext)];
        return out;
      }
    }
  }

  CellularMorphismVerdict cv = check_cellular_morphism(g, x0, d, y0, f, t, mode);
  if (!cv) {
    TransportMorphismResult out;
    out.conflict = "recovered map is not a cellular morphism: " + cv.message;
    return out;
  }
  return TransportMorphismResult{std::move(f), ""};
}

CellularAutomaton span_automaton(const CellularAutomaton& g, const CellularAutomaton& d,
                                 const BisimulationWitness& w) {
  require_compatible(g, d);
  CellularAutomaton out;
  out.pres = g.pres;
  out.stateCount = g.stateCount;
  out.neighborhood = g.neighborhood;
  std::map<std::pair<int, int>, int> index;
  for (std::size_t i = 0; i < w.pairs.size(); ++i) {
    index[w.pairs[i]] = static_cast<int>(i);
    out.cells.push_back(g.cells[static_cast<std::size_t>(w.pairs[i].first)] + "__" +
                        d.cells[static_cast<std::size_t>(w.pairs[i].second)]);
    out.rules.push_back(g.rules[static_cast<std::size_t>(w.pairs[i].first)]);
    out.params.push_back(g.params[static_cast<std::size_t>(w.pairs[i].first)]);
  }
  for (const auto& pair : w.pairs) {
    std::vector<int> row;
    for (std::size_t gen = 0; gen < g.pres.generators.size(); ++gen) {
      std::pair<int, int> next{
          g.action[static_cast<std::size_t>(pair.first)][gen],
          d.action[static_cast<std::size_t>(pair.second)][gen]};
      auto it = index.find(next);
      if (it == index.end())
        throw Error("witness pairs not closed under generators; no span automaton");
      row.push_back(it->second);
    }
    out.action.push_back(std::move(row));
  }
  if (w.basePair) {
    auto it = index.find(*w.basePair);
    if (it != index.end()) out.base = it->second;
  }
  return out;
}

}  // namespace mca
