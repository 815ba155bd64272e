#include "mca/analysis.hpp"

#include <deque>
#include <numeric>
#include <sstream>

#include "mca/monoid.hpp"

namespace mca {

namespace {

Configuration decode(unsigned long long idx, std::size_t cells, int states) {
  Configuration c(cells);
  for (std::size_t i = cells; i-- > 0;) {
    c[i] = static_cast<int>(idx % static_cast<unsigned long long>(states));
    idx /= static_cast<unsigned long long>(states);
  }
  return c;
}

unsigned long long encode(const Configuration& c, int states) {
  unsigned long long idx = 0;
  for (int s : c) idx = idx * static_cast<unsigned long long>(states) +
                        static_cast<unsigned long long>(s);
  return idx;
}

// successor index of every configuration
std::vector<unsigned long long> step_table(const CellularAutomaton& ca,
                                           unsigned long long cap) {
  unsigned long long total = configuration_count(ca, cap);
  auto table = neighbor_table(ca);
  std::vector<unsigned long long> next(total);
  for (unsigned long long i = 0; i < total; ++i)
    next[i] = encode(global_step(ca, decode(i, ca.cells.size(), ca.stateCount), table),
                     ca.stateCount);
  return next;
}

}  // namespace

std::vector<int> quiescent_states(const CellularAutomaton& ca) {
  std::vector<int> out;
  for (int q = 0; q < ca.stateCount; ++q) {
    LocalConfig constant(ca.neighborhood.size(), q);
    bool quiescent = true;
    for (std::size_t x = 0; x < ca.cells.size() && quiescent; ++x)
      quiescent = evaluation_map(ca, static_cast<int>(x), constant) == q;
    if (quiescent) out.push_back(q);
  }
  return out;
}

std::vector<Configuration> fixed_points(const CellularAutomaton& ca,
                                        unsigned long long cap) {
  std::vector<unsigned long long> next = step_table(ca, cap);
  std::vector<Configuration> out;
  for (unsigned long long i = 0; i < next.size(); ++i)
    if (next[i] == i) out.push_back(decode(i, ca.cells.size(), ca.stateCount));
  return out;
}

std::optional<long> periodicity(const CellularAutomaton& ca, unsigned long long cap) {
  std::vector<unsigned long long> next = step_table(ca, cap);
  std::vector<bool> hit(next.size(), false);
  for (unsigned long long n : next) {
    if (hit[n]) return std::nullopt;  // not injective
    hit[n] = true;
  }
  long p = 1;
  std::vector<bool> done(next.size(), false);
  for (unsigned long long i = 0; i < next.size(); ++i) {
    if (done[i]) continue;
    long len = 0;
    unsigned long long j = i;
    do {
      done[j] = true;
      j = next[j];
      ++len;
    } while (j != i);
    p = std::lcm(p, len);
  }
  return p;
}

std::optional<Nilpotency> nilpotency(const CellularAutomaton& ca,
                                     unsigned long long cap) {
  std::vector<unsigned long long> next = step_table(ca, cap);
  std::optional<unsigned long long> bottom;
  for (unsigned long long i = 0; i < next.size(); ++i) {
    if (next[i] != i) continue;
    if (bottom) return std::nullopt;  // two fixed points
    bottom = i;
  }
  if (!bottom) return std::nullopt;
  // steps-to-bottom for every configuration, or divergence
  std::vector<long> dist(next.size(), -1);
  dist[*bottom] = 0;
  long t = 0;
  for (unsigned long long i = 0; i < next.size(); ++i) {
    std::vector<unsigned long long> path;
    unsigned long long j = i;
    while (dist[j] < 0) {
      path.push_back(j);
      j = next[j];
      if (path.size() > next.size()) return std::nullopt;
    }
    long d = dist[j];
    for (auto it = path.rbegin(); it != path.rend(); ++it) dist[*it] = ++d;
    if (d > t) t = d;
  }
  return Nilpotency{t, decode(*bottom, ca.cells.size(), ca.stateCount)};
}

OneWayVerdict one_way_bounded(const CellularAutomaton& ca, int L) {
  constexpr std::size_t kWitnessCap = 64;
  OneWayVerdict out{true, L, {}};
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= L; ++len) {
    std::vector<Word> nextFrontier;
    for (const Word& w : frontier)
      for (std::size_t g = 0; g < ca.pres.generators.size(); ++g) {
        Word m = w;
        m.letters.push_back(static_cast<int>(g));
        nextFrontier.push_back(std::move(m));
      }
    frontier = std::move(nextFrontier);
    for (const Word& m : frontier) {
      if (words_identity_bounded(ca.pres, m, L) == IdentityVerdict::Identity) continue;
      for (std::size_t x = 0; x < ca.cells.size(); ++x) {
        if (act(ca, static_cast<int>(x), m) != static_cast<int>(x)) continue;
        out.pass = false;
        if (out.witnesses.size() < kWitnessCap)
          out.witnesses.push_back({static_cast<int>(x), m});
      }
    }
  }
  return out;
}

std::string trajectory_table(const CellularAutomaton& ca, const Configuration& c,
                             int steps) {
  std::ostringstream os;
  os << "step";
  for (const auto& name : ca.cells) os << ' ' << name;
  os << '\n';
  int t = 0;
  for (const Configuration& row : evolve(ca, c, steps)) {
    os << t++;
    for (int s : row) os << ' ' << s;
    os << '\n';
  }
  return os.str();
}

}  // namespace mca
