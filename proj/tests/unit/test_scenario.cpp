#include <doctest.h>

#include <fstream>

#include "wchi/io.hpp"
#include "wchi/scenario.hpp"

using namespace wchi;
using nlohmann::json;

namespace {

json base_config() { return builtin_scenario_config("second-chaos-converging"); }

std::string config_error(const json& j) {
  try {
    parse_scenario(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("shipped scenario files equal the built-in definitions") {
  const auto ids = builtin_scenario_ids();
  CHECK(ids.size() == 4);
  for (const auto& id : ids) {
    INFO(id);
    std::ifstream in(std::string(WCHI_SCENARIO_DIR) + "/" + id + ".json");
    REQUIRE(in);
    CHECK(json::parse(in) == builtin_scenario_config(id));
    CHECK_NOTHROW(load_scenario(std::string(WCHI_SCENARIO_DIR) + "/" + id + ".json"));
  }
}

TEST_CASE("config validation names fields and invariants") {
  json dup = base_config();
  dup["target"]["alphas"] = {1, 2, 1};
  const auto msg = config_error(dup);
  CHECK(msg.find("alphas[2]") != std::string::npos);
  CHECK(msg.find("TargetSpec") != std::string::npos);

  json dec = base_config();
  dec["sequence"]["indices"] = {4, 2};
  const auto msg2 = config_error(dec);
  CHECK(msg2.find("sequence.indices[1]") != std::string::npos);
  CHECK(msg2.find("Scenario invariant") != std::string::npos);

  json empty = base_config();
  empty["sequence"]["indices"] = json::array();
  CHECK(config_error(empty).find("nonempty") != std::string::npos);

  json fam = base_config();
  fam["sequence"]["family"] = "nope";
  CHECK(config_error(fam).find("sequence.family") != std::string::npos);

  json shift = base_config();
  shift["sequence"]["params"]["shift"] = {1};
  CHECK(config_error(shift).find("sequence.params.shift") != std::string::npos);

  json out = base_config();
  out["outputs"] = {"gamma_stat", "tv"};
  CHECK(config_error(out).find("outputs[1]") != std::string::npos);

  json q = base_config();
  q["target"]["alphas"] = {1};
  q["sequence"]["params"]["shift"] = {1};
  q["outputs"] = {"q_chaos"};
  CHECK(config_error(q).find("q_chaos") != std::string::npos);

  json missing = base_config();
  missing.erase("target");
  CHECK(config_error(missing).find("target") != std::string::npos);

  CHECK_THROWS_AS(load_scenario("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("families build the documented kernels") {
  const auto s = parse_scenario(base_config());
  const auto f4 = build_member(s, 4);
  const auto* k = f4.kernel(2);
  REQUIRE(k != nullptr);
  CHECK(k->dim() == 3);
  CHECK(k->at({0, 0}) == doctest::Approx(1.25));
  CHECK(k->at({1, 1}) == doctest::Approx(1.75));
  CHECK(k->at({2, 2}) == doctest::Approx(0.25));

  const auto flat = parse_scenario(builtin_scenario_config("gaussian-counterexample"));
  const auto g = build_member(flat, 8);
  CHECK(g.kernel(2)->dim() == 8);
  CHECK(exact_cumulant(g, 2) == doctest::Approx(1.0));

  const auto pair = parse_scenario(builtin_scenario_config("two-eigenvalue-q2-example"));
  const auto h = build_member(pair, 1);
  const double th = 0.7853981633974483;
  CHECK(h.kernel(2)->at({0, 1}) == doctest::Approx(0.5 * std::cos(th) * std::sin(th)));
  CHECK(h.kernel(2)->at({1, 1}) == doctest::Approx(0.5 * std::sin(th) * std::sin(th) - 0.5));
}

TEST_CASE("file-backed sequences") {
  const auto dir = std::filesystem::temp_directory_path() / "wchi_files_family";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "k1.json") << json{{"order", 2}, {"dim", 2}, {"coeffs", {1.5, 0, 0, 2.5}}}.dump();
    std::ofstream(dir / "k2.json")
        << json{{"dim", 2}, {"kernels", {{{"order", 2}, {"coeffs", {1.1, 0, 0, 2.1}}}}}}.dump();
    json cfg = {{"id", "files-demo"},
                {"target", {{"alphas", {1, 2}}}},
                {"sequence", {{"family", "files"}, {"params", {{"paths", {"k1.json", "k2.json"}}}}, {"indices", {1, 2}}}}};
    std::ofstream(dir / "cfg.json") << cfg.dump();
  }
  const auto s = load_scenario((dir / "cfg.json").string());
  CHECK(build_member(s, 1).kernel(2)->at({1, 1}) == 2.5);
  CHECK(build_member(s, 2).kernel(2)->at({0, 0}) == 1.1);
  RunOptions opt;
  opt.mc = false;
  const auto result = run_scenario(s, opt);
  CHECK(result.rows.size() == 2);
  CHECK(result.rows[1].report.gamma_stat < result.rows[0].report.gamma_stat);
}

TEST_CASE("runner output schema") {
  RunOptions opt;
  opt.mc = false;
  const auto result = run_scenario(parse_scenario(base_config()), opt);
  const auto cols = csv_columns(result);
  CHECK(cols == std::vector<std::string>{"n", "kappa_gap_2", "kappa_gap_3", "gamma_stat", "ks"});
  const std::string csv = csv_text(result);
  CHECK(csv.rfind("n,kappa_gap_2,kappa_gap_3,gamma_stat,ks\n2,", 0) == 0);
  CHECK(csv.find(",nan\n") != std::string::npos);

  const json summary = summary_json(result);
  CHECK(summary["monotonicity"]["gamma_stat_strictly_decreasing"] == true);
  CHECK(summary["gamma_stat_label"] == "unconditional (sufficient)");
  CHECK(summary["rows"].size() == 8);

  const auto q = run_scenario(parse_scenario(builtin_scenario_config("two-eigenvalue-q2-example")), opt);
  const auto qcols = csv_columns(q);
  CHECK(qcols.back() == "b1");
  CHECK(qcols[qcols.size() - 2] == "a");
}

TEST_CASE("guard abort reports the offending index") {
  json big = builtin_scenario_config("gaussian-counterexample");
  big["sequence"]["indices"] = {2, 5000};
  RunOptions opt;
  opt.mc = false;
  try {
    run_scenario(parse_scenario(big), opt);
    FAIL("expected an abort");
  } catch (const ScenarioAbort& e) {
    CHECK(e.n() == 5000);
  }
}
