#include <doctest.h>

#include <sstream>

#include "../support/oracles.hpp"
#include "wchi/montecarlo.hpp"
#include "wchi/rng.hpp"

using namespace wchi;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("batches are reproducible and independent of worker count") {
  const TargetSpec spec({1.0, -0.5});
  const auto a = sample_target(spec, 10007, 5, 1);
  const auto b = sample_target(spec, 10007, 5, 4);
  const auto c = sample_target(spec, 10007, 6, 3);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.generator_id == kGeneratorId);
  CHECK(a.seed == 5);

  std::mt19937_64 rng(51);
  const auto F = oracle::random_chaos(3, 3, rng);
  CHECK(sample_chaos(F, 5003, 9, 1).values == sample_chaos(F, 5003, 9, 7).values);
}

TEST_CASE("sample_target moments") {
  const std::size_t n = 400000;
  const auto chi = sample_target(TargetSpec({1.0}), n, 1);
  const auto k = k_statistics(chi.values, 4);
  CHECK(std::abs(k.estimates[0]) < 4 * std::sqrt(2.0 / n));
  CHECK(std::abs(k.estimates[1] - 2.0) < 4 * k.std_errors[1]);
  CHECK(std::abs(k.estimates[2] - 8.0) < 4 * k.std_errors[2]);

  const auto sym = sample_target(TargetSpec({0.5, -0.5}), n, 2);
  const auto ks = k_statistics(sym.values, 3);
  CHECK(std::abs(ks.estimates[2]) < 4 * ks.std_errors[2]);
}

TEST_CASE("sample_chaos examples") {
  const std::size_t n = 200000;
  const auto e1 = ChaosExpansion::integral(symmetrize(Tensor::basis(2, {0})));
  const auto normal = sample_chaos(e1, n, 3);
  const double ks_normal =
      kolmogorov_distance(normal.values, [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); });
  CHECK(ks_normal < 1.63 / std::sqrt(static_cast<double>(n)));

  const auto kn = k_statistics(normal.values, 4);
  CHECK(std::abs(kn.estimates[1] - 1.0) < 4 * kn.std_errors[1]);
  CHECK(std::abs(kn.estimates[2]) < 4 * kn.std_errors[2]);
  CHECK(std::abs(kn.estimates[3]) < 4 * kn.std_errors[3]);

  const auto e11 = ChaosExpansion::integral(symmetrize(Tensor::basis(2, {0, 0})));
  const auto chaos_chi = sample_chaos(e11, n, 4);
  const auto target_chi = sample_target(TargetSpec({1.0}), n, 5);
  // Two-sample KS at the 99% level: 1.63 sqrt(2/n).
  CHECK(kolmogorov_distance(chaos_chi.values, target_chi.values) < 1.63 * std::sqrt(2.0 / n));

  const auto constant = sample_chaos(ChaosExpansion::constant(1.25, 2), 100, 6);
  for (double v : constant.values) CHECK(v == 1.25);
  const auto kc = k_statistics(constant.values, 4);
  CHECK(kc.estimates[1] == 0.0);
  CHECK(kc.estimates[2] == 0.0);
  CHECK(kc.estimates[3] == 0.0);
}

TEST_CASE("k-statistics are unbiased on a small hand example") {
  // For {1, 2, 3, 4, 10}: m2 = 10, m3 = 36, m4 = 278.8 (central, divided by n).
  const std::vector<double> v{1, 2, 3, 4, 10};
  const auto k = k_statistics(v, 4);
  const double n = 5;
  CHECK(k.estimates[0] == doctest::Approx(4.0));
  CHECK(k.estimates[1] == doctest::Approx(n * 10 / (n - 1)));
  CHECK(k.estimates[2] == doctest::Approx(n * n * 36 / ((n - 1) * (n - 2))));
  CHECK(k.estimates[3] ==
        doctest::Approx(n * n * ((n + 1) * 278.8 - 3 * (n - 1) * 100) / ((n - 1) * (n - 2) * (n - 3))));
  CHECK(std::isnan(k.std_errors[1]));
  CHECK_THROWS_AS(k_statistics(std::vector<double>{1, 2, 3}, 4), std::invalid_argument);
  CHECK_THROWS_AS(k_statistics(v, 7), std::invalid_argument);
}

TEST_CASE("characteristic function sanity") {
  const TargetLaw law(TargetSpec({1.0, -0.3, 2.0}));
  CHECK(std::abs(law.cf(0.0) - 1.0) < 1e-15);
  for (double t = 1e-3; t < 1e3; t *= 1.7) {
    CHECK(std::abs(law.cf(t)) <= 1.0);
    CHECK(std::abs(law.cf(-t) - std::conj(law.cf(t))) < 1e-14);
  }
  // Second-order expansion: cf(t) = 1 - kappa_2 t^2 / 2 + O(t^3).
  const double t = 1e-4;
  CHECK(law.cf(t).real() == doctest::Approx(1.0 - law.spec().cumulant(2) * t * t / 2).epsilon(1e-10));
}

TEST_CASE("target cdf") {
  const TargetSpec chi({1.0});
  CHECK(target_cdf(chi, 0.0) == doctest::Approx(std::erf(std::sqrt(0.5))).epsilon(1e-8));
  CHECK(target_cdf(chi, 0.0) == doctest::Approx(0.6827).epsilon(1e-3));
  for (double x : {-0.99, -0.5, 0.7, 3.0, 12.0}) {
    INFO("x = " << x);
    CHECK(std::abs(target_cdf(chi, x) - std::erf(std::sqrt((x + 1) / 2))) < 1e-7);
  }
  CHECK(target_cdf(chi, -1.0) == 0.0);
  CHECK(target_cdf(chi, -5.0) == 0.0);

  const TargetSpec prod({0.5, -0.5});
  CHECK(target_cdf(prod, 0.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(target_cdf(prod, 1.3) + target_cdf(prod, -1.3) == doctest::Approx(1.0).epsilon(1e-8));

  CHECK(target_cdf(TargetSpec({-1.0, -2.0}), 3.0) == 1.0);
  for (auto alphas : {std::vector<double>{1, 2}, {0.5, -0.5}, {-1.0, 0.25, 2.0}}) {
    const TargetSpec spec(alphas);
    double prev = 0.0;
    for (double x = -40; x <= 60; x += 0.37) {
      const double c = target_cdf(spec, x);
      CHECK(c >= prev - 1e-7);
      prev = std::max(prev, c);
    }
    CHECK(target_cdf(spec, -400) < 1e-6);
    CHECK(target_cdf(spec, 800) > 1 - 1e-6);
  }

  // Sum of two equal-weight chi-squares is exponential: P(F <= x) = 1 - exp(-(x + 2)/2)
  // for weights (1, 1); a nearby distinct pair stays close.
  const TargetSpec near({1.0, 1.0 + 1e-9});
  CHECK(target_cdf(near, 1.0) == doctest::Approx(1 - std::exp(-1.5)).epsilon(1e-6));
}

TEST_CASE("tabulated cdf tracks direct inversion") {
  const TargetLaw law(TargetSpec({1.0, 2.0}));
  const TabulatedCdf tab(law);
  for (double x = -2.9; x < 30; x += 0.731) CHECK(std::abs(tab(x) - law.cdf(x)) < 2e-6);
  CHECK(tab(-3.5) == 0.0);
  CHECK(tab(1e6) == 1.0);
}

TEST_CASE("Kolmogorov distance examples") {
  const std::vector<double> one{0.0};
  CHECK(kolmogorov_distance(one, [](double x) { return x < 0 ? 0.0 : (x > 0 ? 1.0 : 0.5); }) == 0.5);

  const auto normal = sample_chaos(ChaosExpansion::integral(symmetrize(Tensor::basis(1, {0}))), 100000, 8);
  const double to_chi = kolmogorov_distance(normal.values, [](double x) { return target_cdf(TargetSpec({1.0}), x); });
  CHECK(to_chi > 0.1);

  const std::vector<double> a{1, 2, 3}, b{1, 2, 3};
  CHECK(kolmogorov_distance(a, b) == 0.0);
  CHECK(kolmogorov_distance(a, std::vector<double>{10, 11}) == 1.0);
}

TEST_CASE("batch CSV round trip") {
  const auto batch = sample_target(TargetSpec({0.5, -0.5}), 50, 77);
  std::stringstream ss;
  write_batch_csv(ss, batch);
  const std::string text = ss.str();
  CHECK(text.rfind("# seed=77 generator_id=philox4x32-10/box-muller n=50\nvalue\n", 0) == 0);
  const auto back = read_batch_csv(ss);
  CHECK(back.values == batch.values);
  CHECK(back.seed == 77);
  CHECK(back.generator_id == batch.generator_id);
  std::stringstream bad("value\nabc\n");
  CHECK_THROWS_AS(read_batch_csv(bad), FormatError);
}
