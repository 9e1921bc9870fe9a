#include <doctest.h>

#include "../support/oracles.hpp"
#include "wchi/io.hpp"

using namespace wchi;
using nlohmann::json;

TEST_CASE("kernel round trip") {
  std::mt19937_64 rng(61);
  const auto f = oracle::random_kernel(3, 3, rng);
  const json j = to_json(f);
  CHECK(j["order"] == 3);
  CHECK(j["dim"] == 3);
  CHECK(j["coeffs"].size() == 27);
  const auto back = kernel_from_json(json::parse(j.dump()));
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
}

TEST_CASE("kernel loading rejects bad documents") {
  CHECK_THROWS_WITH_AS(kernel_from_json(json{{"order", 2}, {"dim", 2}}), doctest::Contains("coeffs"), FormatError);
  CHECK_THROWS_WITH_AS(kernel_from_json(json{{"order", 2}, {"dim", 2}, {"coeffs", {1, 2, 3}}}),
                       doctest::Contains("expected 4"), FormatError);
  CHECK_THROWS_WITH_AS(kernel_from_json(json{{"order", 2}, {"dim", 2}, {"coeffs", {0, 1, 0, 0}}}),
                       doctest::Contains("symmetric"), FormatError);
  CHECK_THROWS_AS(kernel_from_json(json{{"order", 1}, {"dim", 2}, {"coeffs", {0, "x"}}}), FormatError);
}

TEST_CASE("chaos round trip") {
  std::mt19937_64 rng(62);
  const auto F = oracle::random_chaos(2, 3, rng);
  const auto back = chaos_from_json(json::parse(to_json(F).dump()));
  CHECK(oracle::max_kernel_diff(F, back) == 0.0);
  json dup = {{"dim", 1}, {"kernels", {{{"order", 1}, {"coeffs", {1}}}, {{"order", 1}, {"coeffs", {2}}}}}};
  CHECK_THROWS_WITH_AS(chaos_from_json(dup), doctest::Contains("kernels[1]"), FormatError);
}

TEST_CASE("target and report documents") {
  const auto spec = target_from_json(json{{"alphas", {1.0, 2.0}}});
  CHECK(spec.k() == 2);
  CHECK(to_json(spec) == json{{"alphas", {1.0, 2.0}}});
  CHECK_THROWS_WITH_AS(target_from_json(json{{"alphas", {1.0, 1.0}}}), doctest::Contains("alphas[1]"), FormatError);

  CriterionReport r;
  r.cumulant_gaps.push_back({2, 1.5, 2.0, 0.5});
  r.gamma_stat = 0.25;
  r.contraction_norms["b1"] = 0.1;
  const json j = to_json(r);
  CHECK(j["cumulant_gaps"][0]["gap"] == 0.5);
  CHECK(j["gamma_stat"] == 0.25);
  CHECK(j["gamma_stat_label"] == "unconditional (sufficient)");
  CHECK(j["contraction_norms"]["b1"] == 0.1);
}
