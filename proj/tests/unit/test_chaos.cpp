#include <doctest.h>

#include "../support/oracles.hpp"
#include "wchi/montecarlo.hpp"
#include "wchi/polynomial.hpp"

using namespace wchi;

namespace {

SymmetricKernel sym_basis(int dim, std::initializer_list<int> idx) { return symmetrize(Tensor::basis(dim, idx)); }

ChaosExpansion I(const SymmetricKernel& f) { return ChaosExpansion::integral(f); }

}  // namespace

TEST_CASE("probabilists' Hermite polynomials") {
  CHECK(hermite(0, 1.7) == 1.0);
  CHECK(hermite(2, 2.0) == 3.0);
  CHECK(hermite(3, 2.0) == 2.0);
  for (int n = 0; n <= 10; ++n) {
    for (double x : {-2.5, -0.3, 0.0, 1.1, 3.0}) {
      CHECK(hermite(n, x) == doctest::Approx(oracle::hermite_explicit(n, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("multiply: hand expansions") {
  const auto e1 = sym_basis(2, {0});
  const auto x2 = multiply(I(e1), I(e1));
  CHECK(x2.mean() == doctest::Approx(1.0));
  CHECK(x2.kernel(2)->at({0, 0}) == doctest::Approx(1.0));

  std::mt19937_64 rng(21);
  const auto f = oracle::random_chaos(2, 3, rng);
  CHECK(oracle::max_kernel_diff(multiply(f, ChaosExpansion::constant(1.0, 2)), f) < 1e-15);

  // (X^2 - 1)^2 = He_4 + 4 He_2 + 2.
  const auto e11 = sym_basis(2, {0, 0});
  const auto sq = multiply(I(e11), I(e11));
  CHECK(sq.mean() == doctest::Approx(2.0));
  CHECK(sq.kernel(2)->at({0, 0}) == doctest::Approx(4.0));
  CHECK(sq.kernel(4)->at({0, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(sq.kernel(4)->at({0, 0, 0, 1}) == 0.0);
}

TEST_CASE("multiply agrees with pointwise products") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = oracle::random_chaos(3, 2 + trial % 2, rng);
    const auto g = oracle::random_chaos(3, 2, rng);
    const auto fg = multiply(f, g);
    for (int k = 0; k < 5; ++k) {
      const auto x = oracle::random_normals(3, rng);
      const double lhs = evaluate(fg, x);
      const double rhs = evaluate(f, x) * evaluate(g, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("evaluate uses multinomial weights") {
  const std::vector<double> x{2.0, -0.7, 0.4};
  CHECK(evaluate(I(sym_basis(3, {0, 0})), x) == doctest::Approx(3.0));
  CHECK(evaluate(I(sym_basis(3, {1})), x) == doctest::Approx(-0.7));
  CHECK(evaluate(I(sym_basis(3, {0, 1})), x) == doctest::Approx(2.0 * -0.7));
  // I_3(sym(e1 (x) e1 (x) e2)) = He_2(x1) He_1(x2).
  CHECK(evaluate(I(sym_basis(3, {0, 0, 1})), x) == doctest::Approx(hermite(2, 2.0) * -0.7));
  // I_q(h^{(x)q}) = |h|^q He_q(<h, x>/|h|).
  const std::vector<double> h{0.6, -0.8, 0.0};
  const double w = 0.6 * 2.0 - 0.8 * -0.7;
  CHECK(evaluate(I(SymmetricKernel::power(h, 4)), x) == doctest::Approx(hermite(4, w)));
  CHECK(evaluate(ChaosExpansion::constant(2.5, 3), x) == 2.5);
  CHECK_THROWS_AS(evaluate(I(sym_basis(3, {1})), std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("derivative and L inverse") {
  const auto h = sym_basis(2, {1});
  const auto dh = derivative(I(h));
  REQUIRE(dh.entry(0) != nullptr);
  CHECK(dh.entry(0)->at({1}) == 1.0);

  const auto d2 = derivative(I(sym_basis(2, {0, 0})));
  REQUIRE(d2.entry(1) != nullptr);
  CHECK(d2.entry(1)->at({0, 0}) == 2.0);
  CHECK(derivative(ChaosExpansion::constant(3.0, 2)).entries().empty());

  std::mt19937_64 rng(23);
  const auto g = oracle::random_kernel(1, 3, rng);
  const auto k3 = oracle::random_kernel(3, 3, rng);
  const auto F = I(g) + I(k3) + ChaosExpansion::constant(0.7, 3);
  const auto Li = apply_L_inverse(F);
  CHECK(Li.kernel(0) == nullptr);
  CHECK(oracle::max_kernel_diff(Li, -1.0 * I(g) - (1.0 / 3) * I(k3)) < 1e-15);
  CHECK(oracle::max_kernel_diff(apply_L(Li), F.centered()) < 1e-15);
  CHECK(apply_L_inverse(ChaosExpansion::constant(4.0, 3)).kernels().empty());
}

TEST_CASE("gamma_step examples") {
  const auto e1 = sym_basis(2, {0});
  const auto g1 = gamma_step(I(e1), I(e1));
  CHECK(g1.mean() == doctest::Approx(1.0));
  CHECK(oracle::max_abs_coeff(g1.centered()) < 1e-15);

  const auto e11 = I(sym_basis(2, {0, 0}));
  const auto gam = gamma_step(e11, e11);
  CHECK(gam.mean() == doctest::Approx(2.0));
  CHECK(gam.kernel(2)->at({0, 0}) == doctest::Approx(2.0));
  CHECK(gamma_step(e11, ChaosExpansion::constant(1.0, 2)).kernels().empty());

  const auto seq = gamma_sequence(e11, 2);
  CHECK(seq[2].mean() == doctest::Approx(4.0));
  CHECK(seq[2].kernel(2)->at({0, 0}) == doctest::Approx(4.0));
  CHECK(gamma_sequence(e11, 0).size() == 1);

  const auto gs = gamma_sequence(I(e1), 3);
  CHECK(gs[1].mean() == doctest::Approx(1.0));
  CHECK(gs[2].kernels().empty());
  CHECK(gs[3].kernels().empty());
}

TEST_CASE("gamma_explicit matches the operator recursion") {
  const auto e11 = sym_basis(2, {0, 0});
  std::vector<int> r1{1};
  CHECK(gamma_constant(2, r1) == 2.0);
  CHECK(oracle::max_kernel_diff(gamma_explicit(e11, 1), gamma_sequence(I(e11), 1)[1]) < 1e-14);

  std::mt19937_64 rng(24);
  for (int q : {2, 3}) {
    const auto f = oracle::random_kernel(q, 3, rng);
    const auto seq = gamma_sequence(I(f), 2);
    for (int i = 1; i <= 2; ++i) {
      const auto ex = gamma_explicit(f, i);
      CHECK(oracle::max_kernel_diff(ex, seq[i]) <= 1e-10 * (1 + oracle::max_abs_coeff(seq[i])));
    }
  }
}

TEST_CASE("exact cumulants") {
  const auto h = sym_basis(3, {0}) * 0.5 + sym_basis(3, {2}) * 1.5;
  const auto kh = exact_cumulants(I(h), 4);
  CHECK(kh[1] == doctest::Approx(2.5));
  CHECK(std::abs(kh[2]) < 1e-14);
  CHECK(std::abs(kh[3]) < 1e-14);

  const auto k = exact_cumulants(I(sym_basis(2, {0, 0})) + ChaosExpansion::constant(0.3, 2), 4);
  CHECK(k[0] == doctest::Approx(0.3));
  CHECK(k[1] == doctest::Approx(2.0));
  CHECK(k[2] == doctest::Approx(8.0));
  CHECK(k[3] == doctest::Approx(48.0));
  CHECK(exact_cumulant(I(sym_basis(2, {0, 0})), 3) == doctest::Approx(8.0));
}

TEST_CASE("moments from cumulants") {
  const std::vector<double> normal{0, 1, 0, 0, 0, 0};
  const auto m = moments_from_cumulants(normal, 6);
  CHECK(m[1] == 0.0);
  CHECK(m[2] == 1.0);
  CHECK(m[4] == 3.0);
  CHECK(m[6] == 15.0);

  const std::vector<double> chi{0, 2, 8, 48};
  const auto mc = moments_from_cumulants(chi, 4);
  CHECK(mc[2] == 2.0);
  CHECK(mc[3] == 8.0);
  CHECK(mc[4] == 60.0);

  const std::vector<double> constant{1.5, 0, 0, 0};
  const auto mk = moments_from_cumulants(constant, 4);
  for (int i = 0; i <= 4; ++i) CHECK(mk[i] == doctest::Approx(std::pow(1.5, i)));
  CHECK_THROWS_AS(moments_from_cumulants(constant, 5), std::invalid_argument);
}

TEST_CASE("isometry: exact second cumulant and Monte Carlo") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 5; ++trial) {
    const auto F = oracle::random_chaos(3 + trial % 3, 4, rng).centered();
    double iso = 0.0;
    for (const auto& [q, fq] : F.kernels()) iso += factorial(q) * inner(fq, fq);
    CHECK(exact_cumulant(F, 2) == doctest::Approx(iso).epsilon(1e-10));
  }
  const auto F = oracle::random_chaos(3, 3, rng);
  const auto batch = sample_chaos(F, 100000, 99);
  const auto ks = k_statistics(batch.values, 2);
  CHECK(std::abs(ks.estimates[1] - exact_cumulant(F, 2)) < 4 * ks.std_errors[1]);
}

TEST_CASE("integration by parts: E[FG] = E F E G + E<DF, -DL^{-1}G>") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    const auto F = oracle::random_chaos(3, 3, rng);
    const auto G = oracle::random_chaos(3, 3, rng);
    const double lhs = expect_product(F, G);
    const double rhs = F.mean() * G.mean() + gamma_step(F, G).mean();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    CHECK(multiply(F, G).mean() == doctest::Approx(lhs).epsilon(1e-10));
  }
}

TEST_CASE("generalized integration by parts for polynomial test functions") {
  std::mt19937_64 rng(27);
  for (int q : {2, 3}) {
    const auto F = I(oracle::random_kernel(q, 3, rng));
    const auto seq = gamma_sequence(F, 3);
    const auto kappas = exact_cumulants(F, 5);
    const auto moments = moments_from_cumulants(kappas, 5);
    for (int k = 1; k <= 3; ++k) {
      for (int m : {k, k + 1}) {
        const Polynomial phi = Polynomial::monomial(m);
        // phi^{(k)} has degree m - k <= 1, so phi^{(k)}(F) is c0 + c1 F.
        const Polynomial dk = phi.derivative(k);
        const auto phik = ChaosExpansion::constant(dk.coefficient(0), 3) + dk.coefficient(1) * F;
        for (int r = 0; r <= k; ++r) {
          const double lhs = expect_product(phik, seq[r]);
          double rhs = expect_polynomial(Polynomial::monomial(1) * phi.derivative(k - r), moments);
          for (int s = 1; s <= r; ++s) {
            rhs -= expect_polynomial(phi.derivative(k - s), moments) * seq[r - s].mean();
          }
          INFO("q = " << q << " k = " << k << " m = " << m << " r = " << r);
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("Monte Carlo moments of random chaos match exact values") {
  std::mt19937_64 rng(28);
  const auto F = oracle::random_chaos(3, 3, rng) * 0.5;
  const auto kappas = exact_cumulants(F, 3);
  const auto batch = sample_chaos(F, 1000000, 7);
  const auto est = k_statistics(batch.values, 3);
  for (int r = 1; r <= 3; ++r) {
    INFO("r = " << r);
    CHECK(std::abs(est.estimates[r - 1] - kappas[r - 1]) < 4 * est.std_errors[r - 1]);
  }
}

TEST_CASE("product order guard") {
  const auto f = I(SymmetricKernel::zero(5, 2));
  CHECK_THROWS_AS(multiply(f, f), ResourceGuardError);
  CHECK_NOTHROW(multiply(f, f, Limits{10, 1u << 20}));
}
