#include "torusspace/cli.hpp"

#include <catch_amalgamated.hpp>

#include <json.hpp>

using namespace torusspace;

namespace {
JobSpec job(const std::string& cmd, const std::string& preset_name, const std::string& field = "Q") {
  JobSpec j;
  j.command = cmd;
  j.preset = preset_name;
  j.field = field;
  return j;
}
std::string data(const std::string& f) { return std::string(TORUSSPACE_DATA_DIR) + "/" + f; }
}  // namespace

TEST_CASE("output is deterministic", "[cli]") {
  for (const char* c : {"all", "facering"}) {
    auto a = run(job(c, "torus_7"));
    auto b = run(job(c, "torus_7"));
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(std::hash<std::string>{}(a.output) == std::hash<std::string>{}(b.output));
  }
}

TEST_CASE("JSON report round trips", "[cli]") {
  auto r = run(job("all", "torus_7"));
  auto j = nlohmann::ordered_json::parse(r.output);
  CHECK(j.dump(2) + "\n" == r.output);
  for (const char* key : {"command", "field", "validate", "vectors", "charmap", "sheaf", "verify", "specseq", "facering", "checks", "status"})
    CHECK(j.contains(key));
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c["pass"].is_boolean());
    CHECK(c["applicable"].is_boolean());
  }
  CHECK(j["status"] == "pass");
}

TEST_CASE("command outputs", "[cli]") {
  auto v = nlohmann::json::parse(run(job("validate", "torus_7")).output)["validate"];
  CHECK(v["pure"] == true);
  CHECK(v["classification"]["buchsbaum"] == true);
  CHECK(v["classification"]["homology_manifold"] == true);
  CHECK(v["classification"]["orientable"] == true);

  auto h = nlohmann::json::parse(run(job("vectors", "boundary_of_simplex(3)")).output)["vectors"]["h"];
  CHECK(h == nlohmann::json::array({1, 1, 1, 1}));

  auto j = job("specseq", "torus_7");
  j.charmap_file = data("torus_7.lam");
  auto s = nlohmann::json::parse(run(j).output)["specseq"];
  CHECK(s["einf"]["border"] == nlohmann::json::array({1, 4, 4, 1}));
  CHECK(s["e1plus"]["border"] == nlohmann::json::array({1, 10, 7, 1}));

  auto a = job("specseq", "digon_cycle(2)");
  a.profile_file = data("annulus_profile.json");
  a.charmap_file = data("annulus_charmap.lam");
  auto ar = run(a);
  CHECK(ar.exit_code == 0);
  auto aj = nlohmann::json::parse(ar.output)["specseq"];
  CHECK(aj["bigraded"]["totals"] == nlohmann::json::array({1, 1, 4, 1, 1}));
  CHECK(aj.contains("notes"));
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run(job("verify", "torus_7", "Fp:2")).exit_code == 1);
  CHECK(run(job("verify", "torus_7", "Fp:3")).exit_code == 0);
  CHECK(run(job("nonsense", "torus_7")).exit_code == 2);
  CHECK(run(job("all", "no_such_preset")).exit_code == 2);
  CHECK(run(job("all", "torus_7", "Fp:4")).exit_code == 2);
  CHECK(run(job("all", "torus_7", "R")).exit_code == 2);
  auto none = job("validate", "");
  CHECK(run(none).exit_code == 2);
  auto two = job("validate", "torus_7");
  two.facets_file = data("bowtie.facets");
  CHECK(run(two).exit_code == 2);

  auto bow = job("validate", "");
  bow.facets_file = data("bowtie.facets");
  auto br = run(bow);
  CHECK(br.exit_code == 0);
  CHECK(nlohmann::json::parse(br.output)["validate"]["classification"]["buchsbaum"] == false);
  bow.command = "facering";
  CHECK(run(bow).exit_code == 1);

  auto bad = job("validate", "");
  bad.poset_file = data("bad_cycle.poset");
  CHECK(run(bad).exit_code == 1);
  bad.command = "vectors";
  auto bv = run(bad);
  CHECK(bv.exit_code == 2);
  CHECK(bv.output.find("error:") == 0);
}

TEST_CASE("check selection", "[cli]") {
  auto j = job("verify", "torus_7", "Fp:2");
  j.checks = {"charmap_valid"};
  CHECK(run(j).exit_code == 2);  // not produced by verify
  j.command = "all";
  j.checks = {"cellular_vs_order_complex", "f_h_round_trip"};
  CHECK(run(j).exit_code == 0);
  j.checks = {"key_lemma"};
  CHECK(run(j).exit_code == 1);
}

TEST_CASE("markdown output", "[cli]") {
  auto j = job("vectors", "torus_7");
  j.out = "md";
  auto r = run(j);
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("# torusspace vectors", 0) == 0);
  CHECK(r.output.find("| h2_symmetry | pass |") != std::string::npos);
  j.out = "xml";
  CHECK(run(j).exit_code == 2);
}
