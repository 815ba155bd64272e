#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mca/analysis.hpp"
#include "mca/document.hpp"
#include "mca/equivalence.hpp"
#include "mca/logic.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::pair<int, int> parse_base_pair(const std::string& text, const mca::CellularAutomaton& g,
                                    const mca::CellularAutomaton& d) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw mca::Error("--base expects SOURCE_CELL:TARGET_CELL");
  std::string gs = text.substr(0, colon), ds = text.substr(colon + 1);
  int x = g.cell_index(gs);
  if (x < 0) throw mca::UnknownCellError(gs);
  int y = d.cell_index(ds);
  if (y < 0) throw mca::UnknownCellError(ds);
  return {x, y};
}

std::string format_config(const mca::Configuration& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out;
}

int run_evolve(const std::string& file, const std::string& configText, int steps,
               const std::string& format) {
  mca::CellularAutomaton ca = mca::load_automaton(file);
  mca::Configuration c = mca::parse_configuration(configText, ca);
  if (format == "json") {
    json rows = json::array();
    for (const auto& row : mca::evolve(ca, c, steps)) rows.push_back(row);
    json doc{{"cells", ca.cells}, {"steps", steps}, {"trajectory", rows}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << mca::trajectory_table(ca, c, steps);
  }
  return kExitPass;
}

int run_check(const std::string& file, const std::string& cellName,
              const std::string& configText, const std::string& formulaText,
              bool validity, int sample, std::uint64_t seed, bool sampled) {
  mca::CellularAutomaton ca = mca::load_automaton(file);
  int cell = ca.cell_index(cellName);
  if (cell < 0) throw mca::UnknownCellError(cellName);
  mca::Formula phi = mca::parse_formula(formulaText, ca.pres);
  if (validity) {
    mca::ValidityMode mode = sampled ? mca::ValidityMode(mca::SampleMode{sample, seed})
                                     : mca::ValidityMode(mca::ExhaustiveMode{});
    mca::ValidityVerdict v = mca::valid(ca, cell, phi, mode);
    if (v) {
      std::cout << "valid\n";
      return kExitPass;
    }
    std::cout << "invalid\ncounterexample " << format_config(*v.counterexample) << '\n';
    return kExitFail;
  }
  mca::Configuration c = mca::parse_configuration(configText, ca);
  bool holds = mca::check(ca, cell, c, phi);
  std::cout << (holds ? "true" : "false") << '\n';
  return holds ? kExitPass : kExitFail;
}

int run_orbits(const std::string& file, const std::string& cellName) {
  mca::CellularAutomaton ca = mca::load_automaton(file);
  int cell = ca.cell_index(cellName);
  if (cell < 0) throw mca::UnknownCellError(cellName);
  mca::OrbitRelation rel = mca::orbit_relation(ca, cell);
  for (const auto& cls : rel.classes()) {
    std::cout << "{";
    for (std::size_t i = 0; i < cls.size(); ++i)
      std::cout << (i ? ", " : "") << ca.neighborhood[static_cast<std::size_t>(cls[i])].name;
    std::cout << "}\n";
  }
  std::cout << "classes " << rel.classCount << "\nlocal_configs "
            << mca::local_configs(ca, cell).size() << '\n';
  return kExitPass;
}

int run_morphism(const std::string& gFile, const std::string& dFile,
                 const std::string& mapFile, const std::string& sectionFile,
                 const std::string& baseText) {
  mca::CellularAutomaton g = mca::load_automaton(gFile);
  mca::CellularAutomaton d = mca::load_automaton(dFile);
  mca::CellMapSpec f = mca::load_cell_map(mapFile, g, d);
  if (sectionFile.empty()) {
    mca::MorphismVerdict v = mca::check_pre_morphism(g, d, f);
    if (v) {
      std::cout << "pre-cellular morphism\n";
      return kExitPass;
    }
    std::cout << "not a pre-cellular morphism: " << v.message << '\n';
    return kExitFail;
  }
  mca::SectionSpec s = mca::load_section(sectionFile, g, d);
  std::pair<int, int> base{-1, -1};
  if (!baseText.empty()) {
    base = parse_base_pair(baseText, g, d);
  } else if (g.base && d.base) {
    base = {*g.base, *d.base};
  } else {
    throw mca::Error("base cells required: pass --base or declare them in both files");
  }
  mca::CellularMorphismVerdict v =
      mca::check_cellular_morphism(g, base.first, d, base.second, f, s,
                                   mca::ExhaustiveMode{});
  if (v) {
    std::cout << "cellular morphism\n";
    return kExitPass;
  }
  std::cout << "not a cellular morphism: " << v.message << '\n';
  if (v.counterexample)
    std::cout << "counterexample " << format_config(*v.counterexample) << '\n';
  return kExitFail;
}

int run_bisim(const std::string& gFile, const std::string& dFile,
              const std::string& baseText) {
  mca::CellularAutomaton g = mca::load_automaton(gFile);
  mca::CellularAutomaton d = mca::load_automaton(dFile);
  auto [x0, y0] = parse_base_pair(baseText, g, d);
  mca::BisimulationSearchResult result = mca::build_bisimulation(g, x0, d, y0);
  if (result.success()) {
    std::cout << "bisimilar\n";
    for (const auto& [x, y] : result.witness->pairs)
      std::cout << g.cells[static_cast<std::size_t>(x)] << " ~ "
                << d.cells[static_cast<std::size_t>(y)] << '\n';
    return kExitPass;
  }
  std::cout << "distinguished\n";
  mca::DistinguishingFormula df =
      mca::distinguishing_formula(g, x0, d, y0, *result.failure);
  std::cout << "formula " << mca::serialize_formula(df.formula, g.pres) << '\n'
            << "config_left " << format_config(df.configG) << '\n'
            << "config_right " << format_config(df.configD) << '\n';
  return kExitFail;
}

int run_transport(const std::string& gFile, const std::string& dFile,
                  const std::string& specFile, int depth, int samples,
                  std::uint64_t seed) {
  mca::CellularAutomaton g = mca::load_automaton(gFile);
  mca::CellularAutomaton d = mca::load_automaton(dFile);
  mca::TransportSpec t = mca::load_section(specFile, g, d);
  if (!g.base || !d.base)
    throw mca::Error("both files must declare a base cell for transport");
  mca::TransportVerdict v =
      mca::check_logical_transport(g, *g.base, d, *d.base, t, depth, samples, seed);
  if (!v) {
    const auto& [phi, c] = *v.counterexample;
    std::cout << "transport fails\nformula " << mca::serialize_formula(phi, g.pres)
              << "\nconfig " << format_config(c) << '\n';
    return kExitFail;
  }
  std::cout << "transport holds (depth " << depth << ", " << samples << " samples)\n";
  try {
    mca::TransportMorphismResult r =
        mca::morphism_from_transport(g, *g.base, d, *d.base, t,
                                     mca::SampleMode{samples, seed});
    if (r.success()) {
      for (std::size_t x = 0; x < g.cells.size(); ++x)
        std::cout << g.cells[x] << " -> "
                  << d.cells[static_cast<std::size_t>(r.mapping->mapping[x])] << '\n';
    } else {
      std::cout << "no recovered morphism: " << r.conflict << '\n';
    }
  } catch (const mca::NotReachableError& err) {
    std::cout << "no recovered morphism: " << err.what() << '\n';
  }
  return kExitPass;
}

int run_analyze(const std::string& file, bool quiescent, bool periodic, bool nilpotent,
                bool fixedPoints, int oneWay, unsigned long long cap, bool asJson) {
  mca::CellularAutomaton ca = mca::load_automaton(file);
  json report;
  int exitCode = kExitPass;
  if (quiescent) {
    std::vector<int> qs = mca::quiescent_states(ca);
    report = {{"kind", "quiescent"}, {"states", qs}};
    if (!asJson) {
      std::cout << "quiescent states:";
      for (int q : qs) std::cout << ' ' << q;
      std::cout << '\n';
    }
  } else if (periodic) {
    std::optional<long> p = mca::periodicity(ca, cap);
    report = {{"kind", "periodic"}, {"period", p ? json(*p) : json(nullptr)}};
    if (!asJson)
      std::cout << (p ? "periodic with period " + std::to_string(*p) : "not periodic")
                << '\n';
  } else if (nilpotent) {
    std::optional<mca::Nilpotency> n = mca::nilpotency(ca, cap);
    if (n)
      report = {{"kind", "nilpotent"}, {"t", n->t}, {"bottom", n->bottom}};
    else
      report = {{"kind", "nilpotent"}, {"t", nullptr}};
    if (!asJson)
      std::cout << (n ? "nilpotent: t=" + std::to_string(n->t) + " bottom=" +
                            format_config(n->bottom)
                      : "not nilpotent")
                << '\n';
  } else if (fixedPoints) {
    json fps = json::array();
    std::vector<mca::Configuration> pts = mca::fixed_points(ca, cap);
    for (const auto& c : pts) fps.push_back(c);
    report = {{"kind", "fixed-points"}, {"configurations", fps}};
    if (!asJson)
      for (const auto& c : pts) std::cout << format_config(c) << '\n';
  } else if (oneWay > 0) {
    mca::OneWayVerdict v = mca::one_way_bounded(ca, oneWay);
    json ws = json::array();
    for (const auto& w : v.witnesses)
      ws.push_back({{"cell", ca.cells[static_cast<std::size_t>(w.cell)]},
                    {"word", mca::format_word(w.word, ca.pres)}});
    report = {{"kind", "one-way"}, {"pass", v.pass}, {"length", v.length},
              {"witnesses", ws}};
    if (!asJson) {
      if (v.pass) {
        std::cout << "one-way up to length " << v.length << '\n';
      } else {
        std::cout << "not one-way\n";
        for (const auto& w : v.witnesses)
          std::cout << "witness (" << ca.cells[static_cast<std::size_t>(w.cell)] << ", "
                    << mca::format_word(w.word, ca.pres) << ")\n";
      }
    }
    if (!v.pass) exitCode = kExitFail;
  } else {
    throw mca::Error("pick one of --quiescent --periodic --nilpotent --one-way "
                     "--fixed-points");
  }
  if (asJson) std::cout << report.dump(2) << '\n';
  return exitCode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-uniform cellular automata over monoid actions"};
  app.require_subcommand(1);

  std::string file, gFile, dFile, configText, cellName, formulaText, mapFile;
  std::string sectionFile, baseText, specFile, format = "table";
  int steps = 0, sample = 0, depth = 4, samples = 200, oneWay = 0;
  std::uint64_t seed = 0;
  unsigned long long cap = 2000000;
  bool validity = false, quiescent = false, periodic = false, nilpotent = false;
  bool fixedPoints = false, asJson = false;

  CLI::App* cmdValidate = app.add_subcommand("validate", "validate an automaton file");
  cmdValidate->add_option("file", file)->required();

  CLI::App* cmdEvolve = app.add_subcommand("evolve", "run the global rule");
  cmdEvolve->add_option("file", file)->required();
  cmdEvolve->add_option("--config", configText)->required();
  cmdEvolve->add_option("--steps", steps)->required();
  cmdEvolve->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

  CLI::App* cmdCheck = app.add_subcommand("check", "model-check a formula");
  cmdCheck->add_option("file", file)->required();
  cmdCheck->add_option("--cell", cellName)->required();
  cmdCheck->add_option("--config", configText);
  cmdCheck->add_option("--formula", formulaText)->required();
  cmdCheck->add_flag("--valid", validity);
  CLI::Option* optSample = cmdCheck->add_option("--sample", sample);
  cmdCheck->add_option("--seed", seed);

  CLI::App* cmdOrbits = app.add_subcommand("orbits", "orbit classes at a cell");
  cmdOrbits->add_option("file", file)->required();
  cmdOrbits->add_option("--cell", cellName)->required();

  CLI::App* cmdMorphism = app.add_subcommand("morphism", "check a cellular morphism");
  cmdMorphism->add_option("source", gFile)->required();
  cmdMorphism->add_option("target", dFile)->required();
  cmdMorphism->add_option("--map", mapFile)->required();
  cmdMorphism->add_option("--section", sectionFile);
  cmdMorphism->add_option("--base", baseText);

  CLI::App* cmdBisim = app.add_subcommand("bisim", "search for a bisimulation");
  cmdBisim->add_option("source", gFile)->required();
  cmdBisim->add_option("target", dFile)->required();
  cmdBisim->add_option("--base", baseText)->required();

  CLI::App* cmdTransport = app.add_subcommand("transport", "check logical transport");
  cmdTransport->add_option("source", gFile)->required();
  cmdTransport->add_option("target", dFile)->required();
  cmdTransport->add_option("--spec", specFile)->required();
  cmdTransport->add_option("--depth", depth)->required();
  cmdTransport->add_option("--samples", samples)->required();
  cmdTransport->add_option("--seed", seed)->required();

  CLI::App* cmdAnalyze = app.add_subcommand("analyze", "semantic analyses");
  cmdAnalyze->add_option("file", file)->required();
  cmdAnalyze->add_flag("--quiescent", quiescent);
  cmdAnalyze->add_flag("--periodic", periodic);
  cmdAnalyze->add_flag("--nilpotent", nilpotent);
  cmdAnalyze->add_flag("--fixed-points", fixedPoints);
  cmdAnalyze->add_option("--one-way", oneWay);
  cmdAnalyze->add_option("--cap", cap);
  cmdAnalyze->add_flag("--json", asJson);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (cmdValidate->parsed()) {
      mca::load_automaton(file);
      std::cout << "ok\n";
      return kExitPass;
    }
    if (cmdEvolve->parsed()) return run_evolve(file, configText, steps, format);
    if (cmdCheck->parsed()) {
      if (!validity && configText.empty())
        throw mca::Error("check needs --config unless --valid is given");
      return run_check(file, cellName, configText, formulaText, validity, sample, seed,
                       optSample->count() > 0);
    }
    if (cmdOrbits->parsed()) return run_orbits(file, cellName);
    if (cmdMorphism->parsed())
      return run_morphism(gFile, dFile, mapFile, sectionFile, baseText);
    if (cmdBisim->parsed()) return run_bisim(gFile, dFile, baseText);
    if (cmdTransport->parsed())
      return run_transport(gFile, dFile, specFile, depth, samples, seed);
    if (cmdAnalyze->parsed())
      return run_analyze(file, quiescent, periodic, nilpotent, fixedPoints, oneWay, cap,
                         asJson);
  } catch (const mca::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
