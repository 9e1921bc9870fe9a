#include "wchi/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wchi/combinatorics.hpp"

namespace wchi {

CriterionPolynomials build_polynomials(const TargetSpec& spec) {
  std::vector<double> roots{0.0};
  roots.insert(roots.end(), spec.alphas().begin(), spec.alphas().end());
  Polynomial p = Polynomial::from_roots(roots);
  Polynomial q = p * p;
  return {std::move(p), std::move(q)};
}

double weighted_cumulant_sum(std::span<const double> kappas, const Polynomial& Q) {
  const int top = Q.degree();
  if (static_cast<int>(kappas.size()) < top) {
    throw std::invalid_argument("weighted_cumulant_sum: need cumulants up to order " +
                                std::to_string(top) + ", got " + std::to_string(kappas.size()));
  }
  double acc = 0.0;
  for (int r = 2; r <= top; ++r) {
    acc += Q.coefficient(r) * kappas[static_cast<std::size_t>(r - 1)] /
           (std::pow(2.0, r - 1) * factorial(r - 1));
  }
  return acc;
}

ChaosExpansion gamma_combination(const ChaosExpansion& f, const TargetSpec& spec,
                                 const Limits& limits) {
  const Polynomial p = build_polynomials(spec).P;
  const auto seq = gamma_sequence(f, spec.k(), limits);
  ChaosExpansion out(f.dim());
  for (int r = 1; r <= spec.k() + 1; ++r) {
    const double c = p.coefficient(r) / std::pow(2.0, r - 1);
    out += c * seq[static_cast<std::size_t>(r - 1)].centered();
  }
  return out;
}

double CriterionReport::max_gap() const {
  double m = 0.0;
  for (const auto& g : cumulant_gaps) m = std::max(m, g.gap);
  return m;
}

CriterionReport criterion_statistic(const ChaosExpansion& f, const TargetSpec& spec,
                                    const CriterionOptions& options) {
  const ChaosExpansion centered = f.centered();
  CriterionReport report;
  if (f.mean() != 0.0) report.notes.push_back("input recentred");

  const auto kappas = exact_cumulants(centered, spec.k() + 1, options.limits);
  for (int r = 2; r <= spec.k() + 1; ++r) {
    const double kn = kappas[static_cast<std::size_t>(r - 1)];
    const double kt = spec.cumulant(r);
    report.cumulant_gaps.push_back({r, kn, kt, std::abs(kn - kt)});
  }
  report.gamma_stat = 0.5 * gamma_combination(centered, spec, options.limits).second_moment();

  if (options.q_chaos) {
    const int q = centered.max_order();
    const bool single = centered.kernels().size() == 1 && q >= 2;
    if (spec.k() != 2) {
      report.notes.push_back("contraction conditions skipped: target has k != 2");
    } else if (!single) {
      report.notes.push_back("contraction conditions skipped: input is not a single chaos of order >= 2");
    } else {
      report.contraction_norms = q_chaos_conditions(*centered.kernel(q), spec, options.limits);
    }
  }
  return report;
}

double psi_functional(std::span<const double> kappas, std::span<const double> moments,
                      const TargetSpec& spec, const Polynomial& phi) {
  const int k = spec.k();
  if (static_cast<int>(kappas.size()) < k + 1) {
    throw std::invalid_argument("psi_functional: need cumulants up to order " +
                                std::to_string(k + 1) + ", got " + std::to_string(kappas.size()));
  }
  const Polynomial p = build_polynomials(spec).P;
  const Polynomial x = Polynomial::monomial(1);
  auto kappa = [&](int r) { return kappas[static_cast<std::size_t>(r - 1)]; };
  auto e_phi = [&](int j) { return expect_polynomial(phi.derivative(j), moments); };
  auto e_x_phi = [&](int j) { return expect_polynomial(x * phi.derivative(j), moments); };

  double psi = 0.0;
  for (int r = 0; r <= k - 1; ++r) psi += kappa(r + 1) / factorial(r) * e_phi(r);
  psi += kappa(k + 1) / factorial(k) * e_phi(k);
  for (int r = 1; r <= k; ++r) {
    const double w = std::pow(2.0, k - r + 1) * p.coefficient(r);
    psi += w * kappa(r) / factorial(r - 1) * e_phi(k);
    psi -= w * e_x_phi(k - r + 1);
    for (int s = 1; s <= r - 1; ++s) psi += w * e_phi(k - s) * kappa(r - s) / factorial(r - s - 1);
  }
  return psi;
}

PowerSumMatch power_sum_match(std::span<const double> a, std::span<const double> b, int pmax,
                              double tol) {
  PowerSumMatch out;
  out.power_sums_agree = true;
  for (int p = 1; p <= pmax; ++p) {
    double sa = 0.0, sb = 0.0, scale = 0.0;
    for (double v : a) {
      sa += std::pow(v, p);
      scale += std::pow(std::abs(v), p);
    }
    for (double v : b) {
      sb += std::pow(v, p);
      scale += std::pow(std::abs(v), p);
    }
    if (std::abs(sa - sb) > tol * std::max(1.0, scale)) {
      out.power_sums_agree = false;
      break;
    }
  }
  if (a.size() != b.size()) return out;

  std::vector<std::size_t> ia(a.size()), ib(b.size());
  std::iota(ia.begin(), ia.end(), 0);
  std::iota(ib.begin(), ib.end(), 0);
  std::stable_sort(ia.begin(), ia.end(), [&](auto i, auto j) { return a[i] < a[j]; });
  std::stable_sort(ib.begin(), ib.end(), [&](auto i, auto j) { return b[i] < b[j]; });
  std::vector<std::size_t> perm(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (std::abs(a[ia[t]] - b[ib[t]]) > tol) return out;
    perm[ia[t]] = ib[t];
  }
  out.match = true;
  out.permutation = std::move(perm);
  return out;
}

LemmaQuantities lemma_quantities(const SymmetricKernel& f, const TargetSpec& spec,
                                 const Limits& limits) {
  if (f.order() != 2) throw std::invalid_argument("lemma_quantities: expected an order-2 kernel");
  const auto polys = build_polynomials(spec);
  const auto F = ChaosExpansion::integral(f);

  LemmaQuantities out{};
  out.cumulant_sum = weighted_cumulant_sum(exact_cumulants(F, polys.Q.degree(), limits), polys.Q);

  out.eigen_sum = 0.0;
  for (double a : spectral(f).eigenvalues) out.eigen_sum += polys.Q(a);

  SymmetricKernel acc = SymmetricKernel::zero(2, f.dim());
  SymmetricKernel power = f;
  for (int r = 1; r <= polys.P.degree(); ++r) {
    if (r > 1) power = sym_contract(power, f, 1, limits);
    acc += polys.P.coefficient(r) * power;
  }
  out.contraction_norm = inner(acc, acc);

  out.gamma_moment = 0.5 * gamma_combination(F, spec, limits).second_moment();
  return out;
}

}  // namespace wchi
