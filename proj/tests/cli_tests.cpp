#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "testutil.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(MCA_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/mca_test_" + name;
  std::ofstream(path) << content;
  return path;
}

const std::string kCyclic6 = std::string(MCA_EXAMPLES_DIR) + "/cyclic6.mca";
const std::string kWxyz = std::string(MCA_EXAMPLES_DIR) + "/wxyz.mca";

}  // namespace

TEST_CASE("cli validate") {
  CHECK(run_cli("validate " + kCyclic6).code == 0);
  std::string bad = write_temp("bad.mca", "[monoid]\ngenerators = p\n");
  RunResult r = run_cli("validate " + bad);
  CHECK(r.code == 2);
  std::string outOfRange = write_temp("range.mca", [] {
    std::string text = testutil::negation_text();
    text.replace(text.find("if n(z) == 0 then 1 else 0"), 26, "n(z) + 1");
    return text;
  }());
  CHECK(run_cli("validate " + outOfRange).code == 2);
}

TEST_CASE("cli evolve reproduces the golden tables") {
  RunResult left = run_cli("evolve " + kCyclic6 + " --config 0,0,2,0,0,0 --steps 7");
  CHECK(left.code == 0);
  CHECK(left.out ==
        "step k0 k1 k2 k3 k4 k5\n"
        "0 0 0 2 0 0 0\n"
        "1 0 0 2 2 0 0\n"
        "2 0 0 1 0 2 0\n"
        "3 0 1 1 3 2 2\n"
        "4 0 0 2 2 2 4\n"
        "5 0 0 1 2 3 0\n"
        "6 0 1 0 2 0 3\n"
        "7 0 1 0 2 0 3\n");
  RunResult json = run_cli("evolve " + kCyclic6 +
                           " --config 0,0,2,0,0,0 --steps 1 --format json");
  CHECK(json.code == 0);
  CHECK(json.out.find("\"trajectory\"") != std::string::npos);
  CHECK(run_cli("evolve " + kCyclic6 + " --config 0,0,2 --steps 1").code == 2);
}

TEST_CASE("cli check") {
  RunResult t =
      run_cli("check " + kWxyz + " --cell y --config 0,0,0,0 --formula \"O <r> #1\"");
  CHECK(t.code == 0);
  CHECK(t.out == "true\n");
  RunResult f =
      run_cli("check " + kWxyz + " --cell y --config 0,0,0,0 --formula \"O <r> #0\"");
  CHECK(f.code == 1);
  CHECK(f.out == "false\n");
  CHECK(run_cli("check " + kWxyz + " --cell y --config 0,0,0,0 --formula \"O <\"").code ==
        2);
  CHECK(run_cli("check " + kWxyz + " --cell nope --config 0,0,0,0 --formula \"#0\"")
            .code == 2);

  RunResult tautology =
      run_cli("check " + kCyclic6 + " --cell k0 --formula \"#0 | !#0\" --valid");
  CHECK(tautology.code == 0);
  RunResult sampled = run_cli("check " + kCyclic6 +
                              " --cell k0 --formula \"#0\" --valid --sample 100 --seed 5");
  CHECK(sampled.code == 1);
  CHECK(sampled.out.find("counterexample") != std::string::npos);
}

TEST_CASE("cli orbits") {
  RunResult r = run_cli("orbits " + kWxyz + " --cell x");
  CHECK(r.code == 0);
  CHECK(r.out == "{z, l}\n{r}\nclasses 2\nlocal_configs 4\n");
}

TEST_CASE("cli morphism") {
  std::string ring = write_temp("ring3.mca", testutil::ring_xor3_text(3));
  std::string torus = write_temp("torus3.mca", testutil::torus_xor3_text(3));
  std::string map = write_temp("ring3.map", testutil::ring_into_torus_map_text(3));
  std::string section =
      write_temp("ring3.section", testutil::ring_into_torus_section_text(3));
  CHECK(run_cli("morphism " + ring + " " + torus + " --map " + map).code == 0);
  CHECK(run_cli("morphism " + ring + " " + torus + " --map " + map + " --section " +
                section + " --base r0:t0_0")
            .code == 0);
  // declared base cells are used when --base is omitted
  CHECK(run_cli("morphism " + ring + " " + torus + " --map " + map + " --section " +
                section)
            .code == 0);
  std::string badMap = write_temp("ring3bad.map", "r0 -> t0_0\nr1 -> t1_1\nr2 -> t2_0\n");
  CHECK(run_cli("morphism " + ring + " " + torus + " --map " + badMap).code == 1);
}

TEST_CASE("cli bisim") {
  std::string gamma = write_temp("gamma72.mca", testutil::sec72_gamma_text());
  std::string delta = write_temp("delta72.mca", testutil::sec72_delta_text());
  RunResult ok = run_cli("bisim " + gamma + " " + delta + " --base a0:d0");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("bisimilar") != std::string::npos);
  CHECK(ok.out.find("a0 ~ d0") != std::string::npos);

  std::string perturbed = write_temp("cyclic6p.mca", [] {
    std::string text = testutil::cyclic6_text();
    text += "[rule k2]\n((n(m1) + n(z) + n(p1)) % (K + 1) + 1) % 6\n";
    return text;
  }());
  RunResult bad = run_cli("bisim " + kCyclic6 + " " + perturbed + " --base k0:k0");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("distinguished") != std::string::npos);
  CHECK(bad.out.find("formula ") != std::string::npos);
  CHECK(bad.out.find("config_left ") != std::string::npos);
}

TEST_CASE("cli transport") {
  // restrict to the circle so the section is exact
  mca::CellularAutomaton circle = testutil::sec72_gamma_restricted();
  std::string gamma = write_temp("circle72.mca", mca::save_automaton(circle));
  std::string delta = write_temp("delta72b.mca", testutil::sec72_delta_text());
  std::string spec = write_temp("sec72.section", testutil::sec72_section_text());
  RunResult ok = run_cli("transport " + gamma + " " + delta + " --spec " + spec +
                         " --depth 3 --samples 50 --seed 11");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("transport holds") != std::string::npos);
  CHECK(ok.out.find("a0 -> d0") != std::string::npos);

  std::string constSpec = write_temp("const72.section", [] {
    std::string text;
    for (int m = 0; m < 6; ++m) text += "d" + std::to_string(m) + " <= const 0\n";
    text += "a <= const 0\n";
    return text;
  }());
  RunResult bad = run_cli("transport " + gamma + " " + delta + " --spec " + constSpec +
                          " --depth 3 --samples 100 --seed 11");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("transport fails") != std::string::npos);
}

TEST_CASE("cli analyze") {
  RunResult quiescent = run_cli("analyze " + kCyclic6 + " --quiescent");
  CHECK(quiescent.code == 0);
  CHECK(quiescent.out == "quiescent states: 0\n");

  RunResult periodic = run_cli("analyze " + kCyclic6 + " --periodic");
  CHECK(periodic.code == 0);
  CHECK(periodic.out == "not periodic\n");

  std::string xor2 = write_temp("xor2.mca", testutil::xor2ring_text());
  RunResult nilpotent = run_cli("analyze " + xor2 + " --nilpotent");
  CHECK(nilpotent.code == 0);
  CHECK(nilpotent.out == "nilpotent: t=2 bottom=0,0\n");

  RunResult oneway = run_cli("analyze " + kWxyz + " --one-way 2");
  CHECK(oneway.code == 1);
  CHECK(oneway.out.find("witness (x, r.l)") != std::string::npos);

  std::string gammaOne = write_temp("onewayg.mca", testutil::oneway_gamma_text());
  CHECK(run_cli("analyze " + gammaOne + " --one-way 8").code == 0);

  RunResult fixed = run_cli("analyze " + xor2 + " --fixed-points");
  CHECK(fixed.code == 0);
  CHECK(fixed.out == "0,0\n");

  RunResult json = run_cli("analyze " + kCyclic6 + " --quiescent --json");
  CHECK(json.code == 0);
  CHECK(json.out.find("\"kind\": \"quiescent\"") != std::string::npos);

  CHECK(run_cli("analyze " + kCyclic6 + " --periodic --cap 10").code == 2);
  CHECK(run_cli("analyze " + kCyclic6).code == 2);
}

TEST_CASE("cli usage errors") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("evolve").code == 2);
  CHECK(run_cli("frobnicate x").code == 2);
}
