#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(QTOP_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), (int)buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string fixture(const std::string& name) {
  return std::string(QTOP_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("space check on the two-point space") {
  auto r = run("space check " + fixture("sierpinski.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("T0: true") != std::string::npos);
  CHECK(r.out.find("sober: true") != std::string::npos);
  CHECK(r.out.find("scattered: true") != std::string::npos);
  CHECK(r.out.find("cb_rank: 2") != std::string::npos);
}

TEST_CASE("space check names the broken closure axiom") {
  auto r = run("space check " + fixture("broken_space.json"));
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("UnionEscapesFamily") != std::string::npos);
}

TEST_CASE("catalog space check carries its depth") {
  auto r = run("space check " + fixture("omega_scott.json"));
  CHECK(r.exit_code == 0);  // witness found: refuted within depth
  CHECK(r.out.find("depth 10") != std::string::npos);
}

TEST_CASE("expression classification") {
  auto r = run("borel classify " + fixture("sierpinski.json") +
               " \"(diff (basic 2) (basic 1))\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("Sigma_2") != std::string::npos);
  CHECK(r.out.find("truth_table") != std::string::npos);
}

TEST_CASE("metric check finds the planted violation") {
  auto ok = run("qm check " + fixture("order_metric.json"));
  CHECK(ok.exit_code == 0);
  auto bad = run("qm check " + fixture("broken_metric.json"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("separation") != std::string::npos);
}

TEST_CASE("subspace re-metrization from files") {
  auto r = run("qm derive pi2 " + fixture("p2_space.json") + " " +
               fixture("p2_pairs.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("axioms_ok: true") != std::string::npos);
  CHECK(r.out.find("topology_matches: true") != std::string::npos);
}

TEST_CASE("game run on the chain-with-top window") {
  auto r = run("game play " + fixture("omega1_scott.json") +
               " --p1 chain --p2 qm-d1 --rounds 20 --seed 3 --json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("won-by-refinement") != std::string::npos);
  CHECK(r.out.find("\"point\": \"w\"") != std::string::npos);
}

TEST_CASE("game run on the topless chain window is undecided") {
  auto r = run("game play " + fixture("omega_scott.json") +
               " --p1 chain --p2 qm-order --rounds 20 --seed 3");
  CHECK(r.exit_code == 2);
}

TEST_CASE("tournament table") {
  auto r = run("game tournament " + fixture("tournament.json") + " --json");
  CHECK(r.exit_code == 2);  // contains the undecided window
  CHECK(r.out.find("results") != std::string::npos);
}

TEST_CASE("domain embedding dump") {
  auto r = run("domain embed " + fixture("presentation.json") + " --depth 3 --json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("universe_size") != std::string::npos);
  CHECK(r.out.find("phi_at_window_top") != std::string::npos);
}

TEST_CASE("representation translation and filter checks") {
  auto r = run("repr translate " + fixture("delta_table.json") + " --depth 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("factorization_ok: true") != std::string::npos);

  auto f = run("repr fcheck " + fixture("sierpinski.json"));
  CHECK(f.exit_code == 0);
  CHECK(f.out.find("ok: true") != std::string::npos);
}

TEST_CASE("json outputs are byte-identical across runs with a fixed seed") {
  std::string cmd = "game play " + fixture("p2_space.json") +
                    " --p1 random --p2 qm-order --rounds 8 --seed 42 --json";
  auto a = run(cmd);
  auto b = run(cmd);
  CHECK(a.exit_code == b.exit_code);
  CHECK(a.out == b.out);
}

TEST_CASE("usage errors exit with the IO code") {
  auto r = run("space check /nonexistent.json");
  CHECK(r.exit_code == 3);
}

TEST_CASE("poset facts from a file") {
  auto r = run("domain check " + fixture("diamond_poset.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("way_below_equals_order: true") != std::string::npos);
  CHECK(r.out.find("ideals: 4") != std::string::npos);
}

TEST_CASE("filter check from an explicit tables file") {
  auto r = run("repr fcheck " + fixture("repr_tables.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("conditions: true") != std::string::npos);
  CHECK(r.out.find("formulas_agree: true") != std::string::npos);
}

TEST_CASE("emitted json parses back unchanged") {
  auto r = run("game play " + fixture("sierpinski.json") +
               " --p1 sticker --p2 min-nbhd --rounds 4 --seed 1 --json");
  REQUIRE(r.exit_code == 0);
  auto parsed = nlohmann::ordered_json::parse(r.out);
  CHECK(parsed.dump(2) + "\n" == r.out);
}

TEST_CASE("a tiny horizon reports undecided through the exit code") {
  auto r = run("verify --horizon 1");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("undecided-at-depth") != std::string::npos);
}

TEST_CASE("the truncation default comes from the environment") {
  auto r = run("space check " + fixture("omega_scott_nodepth.json"));
  CHECK(r.out.find("depth: 10") != std::string::npos);
  std::string cmd = "QTOP_DEPTH_DEFAULT=6 " + std::string(QTOP_CLI_PATH) +
                    " space check " + fixture("omega_scott_nodepth.json") + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), (int)buf.size(), pipe)) out += buf.data();
  pclose(pipe);
  CHECK(out.find("depth: 6") != std::string::npos);
}

TEST_CASE("the default verification run passes") {
  auto r = run("verify");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[pass] qm-axiom-suite") != std::string::npos);
  CHECK(r.out.find("fail") == std::string::npos);
}
