#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "mca/document.hpp"

namespace testutil {

inline mca::Word word(const mca::MonoidPresentation& pres, const std::string& text) {
  return mca::parse_word(text, pres);
}

inline std::string cyclic6_text() {
  std::string text =
      "[monoid]\ngenerators = p, q\nrelation p.q == \xce\xb5\nrelation q.p == \xce\xb5\n"
      "[cells]\nnames = k0, k1, k2, k3, k4, k5\nbase = k0\n"
      "[states]\ncount = 6\n[action]\n";
  for (int i = 0; i < 6; ++i) {
    text += "k" + std::to_string(i) + ".p = k" + std::to_string((i + 1) % 6) + "\n";
    text += "k" + std::to_string(i) + ".q = k" + std::to_string((i + 5) % 6) + "\n";
  }
  text += "[neighborhood]\nm1 = q\nz = \xce\xb5\np1 = p\n[params]\n";
  for (int i = 0; i < 6; ++i)
    text += "k" + std::to_string(i) + " = " + std::to_string(i) + "\n";
  text += "[rule *]\n(n(m1) + n(z) + n(p1)) % (K + 1)\n";
  return text;
}

inline mca::CellularAutomaton cyclic6() { return mca::parse_automaton(cyclic6_text()); }

inline std::string wxyz_text() {
  return "[monoid]\ngenerators = l, r\n"
         "[cells]\nnames = w, x, y, z\nbase = w\n[states]\ncount = 2\n"
         "[action]\nw.l = x\nw.r = x\nx.l = x\nx.r = y\ny.l = x\ny.r = z\n"
         "z.l = z\nz.r = z\n"
         "[neighborhood]\nz = \xce\xb5\nl = l\nr = r\n"
         "[rule w]\nif n(r) == 1 and n(z) == 0 then 1 else 0\n"
         "[rule x]\nif n(z) == 1 or n(r) == 1 then 1 else 0\n"
         "[rule y]\nif n(z) == 1 or n(r) == 1 then 1 else 0\n"
         "[rule z]\nif n(z) == 0 then 1 else 0\n";
}

inline mca::CellularAutomaton wxyz() { return mca::parse_automaton(wxyz_text()); }

inline std::string xor2ring_text() {
  return "[monoid]\ngenerators = p\nrelation p.p == \xce\xb5\n"
         "[cells]\nnames = c0, c1\nbase = c0\n[states]\ncount = 2\n"
         "[action]\nc0.p = c1\nc1.p = c0\n"
         "[neighborhood]\nz = \xce\xb5\no = p\n"
         "[rule *]\n(n(z) + n(o)) % 2\n";
}

inline mca::CellularAutomaton xor2ring() { return mca::parse_automaton(xor2ring_text()); }

inline std::string negation_text() {
  return "[monoid]\ngenerators = u\n[cells]\nnames = e\nbase = e\n"
         "[states]\ncount = 2\n[action]\ne.u = e\n"
         "[neighborhood]\nz = \xce\xb5\n[rule *]\nif n(z) == 0 then 1 else 0\n";
}

inline mca::CellularAutomaton negation_ca() { return mca::parse_automaton(negation_text()); }

inline std::string identity_text(int states) {
  return "[monoid]\ngenerators = u\n[cells]\nnames = e\nbase = e\n"
         "[states]\ncount = " + std::to_string(states) +
         "\n[action]\ne.u = e\n[neighborhood]\nz = \xce\xb5\n[rule *]\nn(z)\n";
}

inline mca::CellularAutomaton identity_ca(int states) {
  return mca::parse_automaton(identity_text(states));
}

inline std::string constant_text(int c, int states) {
  return "[monoid]\ngenerators = u\n[cells]\nnames = e\nbase = e\n"
         "[states]\ncount = " + std::to_string(states) +
         "\n[action]\ne.u = e\n[neighborhood]\nz = \xce\xb5\n[rule *]\n" +
         std::to_string(c) + "\n";
}

// two six-cell circles advanced by s, with per-cell modulus K+1
inline std::string sec72_gamma_text() {
  std::string text = "[monoid]\ngenerators = s\n[cells]\nnames = ";
  for (int m = 0; m < 6; ++m) text += "a" + std::to_string(m) + ", ";
  for (int m = 0; m < 6; ++m) text += "b" + std::to_string(m) + (m < 5 ? ", " : "\n");
  text += "base = a0\n[states]\ncount = 6\n[action]\n";
  for (int m = 0; m < 6; ++m) {
    text += "a" + std::to_string(m) + ".s = a" + std::to_string((m + 1) % 6) + "\n";
    text += "b" + std::to_string(m) + ".s = b" + std::to_string((m + 1) % 6) + "\n";
  }
  text += "[neighborhood]\nz = \xce\xb5\no = s\n[params]\n";
  for (int m = 0; m < 6; ++m) {
    text += "a" + std::to_string(m) + " = " + std::to_string(m) + "\n";
    text += "b" + std::to_string(m) + " = " + std::to_string(m) + "\n";
  }
  text += "[rule *]\n(n(z) + n(o)) % (K + 1)\n";
  return text;
}

inline mca::CellularAutomaton sec72_gamma() {
  return mca::parse_automaton(sec72_gamma_text());
}

// a six-cell circle plus a feeder cell entering at d0
inline std::string sec72_delta_text() {
  std::string text = "[monoid]\ngenerators = s\n[cells]\nnames = ";
  for (int m = 0; m < 6; ++m) text += "d" + std::to_string(m) + ", ";
  text += "a\nbase = d0\n[states]\ncount = 6\n[action]\n";
  for (int m = 0; m < 6; ++m)
    text += "d" + std::to_string(m) + ".s = d" + std::to_string((m + 1) % 6) + "\n";
  text += "a.s = d0\n[neighborhood]\nz = \xce\xb5\no = s\n[params]\n";
  for (int m = 0; m < 6; ++m)
    text += "d" + std::to_string(m) + " = " + std::to_string(m) + "\n";
  text += "a = 0\n[rule *]\n(n(z) + n(o)) % (K + 1)\n"
          "[rule a]\n(n(z) + 1) % 6\n";
  return text;
}

inline mca::CellularAutomaton sec72_delta() {
  return mca::parse_automaton(sec72_delta_text());
}

// gamma restricted to the circle reachable from a0
inline mca::CellularAutomaton sec72_gamma_restricted() {
  mca::CellularAutomaton g = sec72_gamma();
  return mca::restrict_to(g, mca::reachable_set(g, 0).cells);
}

// section of the restricted-gamma -> delta morphism f(a_m) = d_m
inline std::string sec72_section_text() {
  std::string text;
  for (int m = 0; m < 6; ++m)
    text += "d" + std::to_string(m) + " <= copy a" + std::to_string(m) + "\n";
  text += "a <= const 0\n";
  return text;
}

inline std::string oneway_gamma_text() {
  return "[monoid]\ngenerators = g\nrelation g.g == \xce\xb5\n"
         "[cells]\nnames = x0, x1\nbase = x0\n[states]\ncount = 2\n"
         "[action]\nx0.g = x1\nx1.g = x0\n"
         "[neighborhood]\nz = \xce\xb5\nw = g\n[rule *]\nn(z)\n";
}

inline std::string oneway_gamma_free_text() {
  return "[monoid]\ngenerators = g\n"
         "[cells]\nnames = x0, x1\nbase = x0\n[states]\ncount = 2\n"
         "[action]\nx0.g = x1\nx1.g = x0\n"
         "[neighborhood]\nz = \xce\xb5\nw = g\n[rule *]\nn(z)\n";
}

inline std::string oneway_delta_text() {
  return "[monoid]\ngenerators = g\n"
         "[cells]\nnames = x0, x1\nbase = x0\n[states]\ncount = 2\n"
         "[action]\nx0.g = x1\nx1.g = x1\n"
         "[neighborhood]\nz = \xce\xb5\nw = g\n[rule *]\nn(z)\n";
}

inline mca::CellularAutomaton oneway_gamma() {
  return mca::parse_automaton(oneway_gamma_text());
}
inline mca::CellularAutomaton oneway_gamma_free() {
  return mca::parse_automaton(oneway_gamma_free_text());
}
inline mca::CellularAutomaton oneway_delta() {
  return mca::parse_automaton(oneway_delta_text());
}

// k-cell ring, mod-2 sum of both neighbours and self
inline std::string ring_xor3_text(int k) {
  std::string text = "[monoid]\ngenerators = p, q\n"
                     "relation p.q == \xce\xb5\nrelation q.p == \xce\xb5\n"
                     "[cells]\nnames = ";
  for (int i = 0; i < k; ++i)
    text += "r" + std::to_string(i) + (i < k - 1 ? ", " : "\n");
  text += "base = r0\n[states]\ncount = 2\n[action]\n";
  for (int i = 0; i < k; ++i) {
    text += "r" + std::to_string(i) + ".p = r" + std::to_string((i + 1) % k) + "\n";
    text += "r" + std::to_string(i) + ".q = r" + std::to_string((i + k - 1) % k) + "\n";
  }
  text += "[neighborhood]\nm1 = q\nz = \xce\xb5\np1 = p\n"
          "[rule *]\n(n(m1) + n(z) + n(p1)) % 2\n";
  return text;
}

inline mca::CellularAutomaton ring_xor3(int k) {
  return mca::parse_automaton(ring_xor3_text(k));
}

// k x 2 torus acting along the first axis only; same rule as the ring
inline std::string torus_xor3_text(int k) {
  std::string text = "[monoid]\ngenerators = p, q\n"
                     "relation p.q == \xce\xb5\nrelation q.p == \xce\xb5\n"
                     "[cells]\nnames = ";
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < 2; ++j)
      text += "t" + std::to_string(i) + "_" + std::to_string(j) +
              (i == k - 1 && j == 1 ? "\n" : ", ");
  text += "base = t0_0\n[states]\ncount = 2\n[action]\n";
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < 2; ++j) {
      std::string cell = "t" + std::to_string(i) + "_" + std::to_string(j);
      text += cell + ".p = t" + std::to_string((i + 1) % k) + "_" + std::to_string(j) + "\n";
      text += cell + ".q = t" + std::to_string((i + k - 1) % k) + "_" + std::to_string(j) + "\n";
    }
  text += "[neighborhood]\nm1 = q\nz = \xce\xb5\np1 = p\n"
          "[rule *]\n(n(m1) + n(z) + n(p1)) % 2\n";
  return text;
}

inline mca::CellularAutomaton torus_xor3(int k) {
  return mca::parse_automaton(torus_xor3_text(k));
}

inline std::string ring_into_torus_map_text(int k) {
  std::string text;
  for (int i = 0; i < k; ++i)
    text += "r" + std::to_string(i) + " -> t" + std::to_string(i) + "_0\n";
  return text;
}

inline std::string ring_into_torus_section_text(int k) {
  std::string text;
  for (int i = 0; i < k; ++i) {
    text += "t" + std::to_string(i) + "_0 <= copy r" + std::to_string(i) + "\n";
    text += "t" + std::to_string(i) + "_1 <= const 0\n";
  }
  return text;
}

inline mca::CellMapSpec identity_map(const mca::CellularAutomaton& ca) {
  mca::CellMapSpec f;
  for (std::size_t x = 0; x < ca.cells.size(); ++x)
    f.mapping.push_back(static_cast<int>(x));
  return f;
}

inline mca::SectionSpec identity_section(const mca::CellularAutomaton& ca) {
  mca::SectionSpec s;
  for (std::size_t x = 0; x < ca.cells.size(); ++x)
    s.perTarget.push_back({mca::SectionDirective::Kind::Copy, static_cast<int>(x)});
  return s;
}

// Free-monoid automaton with a random action and affine mod-|S| rules; always
// validates.
inline mca::CellularAutomaton random_ca(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  mca::CellularAutomaton ca;
  int nGens = 1 + static_cast<int>(rng() % 2);
  int nCells = 3 + static_cast<int>(rng() % 4);
  ca.stateCount = 2 + static_cast<int>(rng() % 3);
  for (int g = 0; g < nGens; ++g) ca.pres.generators.push_back("g" + std::to_string(g));
  for (int x = 0; x < nCells; ++x) ca.cells.push_back("c" + std::to_string(x));
  for (int x = 0; x < nCells; ++x) {
    std::vector<int> row;
    for (int g = 0; g < nGens; ++g)
      row.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(nCells)));
    ca.action.push_back(std::move(row));
  }
  ca.neighborhood.push_back({"z", mca::Word{}});
  for (int g = 0; g < nGens; ++g)
    ca.neighborhood.push_back({"w" + std::to_string(g), mca::Word{{g}}});
  for (int x = 0; x < nCells; ++x) {
    std::string rule = "(";
    for (const auto& entry : ca.neighborhood)
      rule += std::to_string(rng() % static_cast<std::uint64_t>(ca.stateCount)) + " * n(" +
              entry.name + ") + ";
    rule += std::to_string(rng() % static_cast<std::uint64_t>(ca.stateCount)) + ") % " +
            std::to_string(ca.stateCount);
    ca.rules.push_back(mca::parse_rule(rule));
  }
  ca.params.assign(static_cast<std::size_t>(nCells), 0);
  ca.base = 0;
  mca::Verdict v = mca::validate(ca);
  if (!v) throw mca::Error("random_ca failed validation: " + v.message);
  return ca;
}

// Same automaton with one reachable cell's rule shifted by +1 mod |S|.
inline mca::CellularAutomaton perturb_rule(const mca::CellularAutomaton& ca,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  mca::CellularAutomaton out = ca;
  mca::ReachableSet rs = mca::reachable_set(ca, ca.base.value_or(0));
  int cell = rs.cells[rng() % rs.cells.size()];
  std::string rule = "(" + mca::serialize_rule(ca.rules[static_cast<std::size_t>(cell)]) +
                     " + 1) % " + std::to_string(ca.stateCount);
  out.rules[static_cast<std::size_t>(cell)] = mca::parse_rule(rule);
  mca::Verdict v = mca::validate(out);
  if (!v) throw mca::Error("perturb_rule failed validation: " + v.message);
  return out;
}

inline mca::Word random_word(std::mt19937_64& rng, const mca::MonoidPresentation& pres,
                             int maxLen) {
  mca::Word w;
  int len = static_cast<int>(rng() % static_cast<std::uint64_t>(maxLen + 1));
  for (int i = 0; i < len; ++i)
    w.letters.push_back(static_cast<int>(rng() % pres.generators.size()));
  return w;
}

}  // namespace testutil
