#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "wchi/chaos.hpp"
#include "wchi/polynomial.hpp"
#include "wchi/spectral.hpp"

namespace wchi {

/// P(x) = x prod_i (x - alpha_i) and Q = P * P.
struct CriterionPolynomials {
  Polynomial P;
  Polynomial Q;
};

CriterionPolynomials build_polynomials(const TargetSpec& spec);

/// sum_{r=2}^{deg Q} Q^{(r)}(0)/r! * kappa_r / (2^{r-1} (r-1)!).
/// `kappas[0]` is kappa_1; throws std::invalid_argument unless it reaches deg Q.
double weighted_cumulant_sum(std::span<const double> kappas, const Polynomial& Q);

/// sum_{r=1}^{k+1} P^{(r)}(0)/(r! 2^{r-1}) (Gamma_{r-1}(F) - E Gamma_{r-1}(F)).
/// Has no order-0 component.
ChaosExpansion gamma_combination(const ChaosExpansion& f, const TargetSpec& spec,
                                 const Limits& limits = {});

struct CumulantGap {
  int r;
  double kappa_n;
  double kappa_target;
  double gap;
};

inline constexpr const char* kGammaStatLabel = "unconditional (sufficient)";

struct CriterionReport {
  std::vector<CumulantGap> cumulant_gaps;
  /// (1/2) E[gamma_combination^2]; for a second-chaos F this equals
  /// sum_j Q(alpha_j).
  double gamma_stat = 0.0;
  std::string gamma_stat_label = kGammaStatLabel;
  /// Filled only when requested and applicable (single chaos of order q >= 2, k = 2).
  std::map<std::string, double> contraction_norms;
  std::vector<std::string> notes;

  double max_gap() const;
};

struct CriterionOptions {
  bool q_chaos = false;
  Limits limits{};
};

/// Cumulant gaps for 2 <= r <= k+1 from exact cumulants and the
/// unconditional Gamma statistic. F is recentred first.
CriterionReport criterion_statistic(const ChaosExpansion& f, const TargetSpec& spec,
                                    const CriterionOptions& options = {});

/// Right side of the Stein-type identity E[F phi(F)] = Psi_phi(F) for a polynomial phi,
/// with k = deg(P) - 1. `kappas[0]` is kappa_1 and `moments[0]` is E F^0 = 1.
double psi_functional(std::span<const double> kappas, std::span<const double> moments,
                      const TargetSpec& spec, const Polynomial& phi);

/// Contraction conditions for F = I_q(f) against a two-weight target.
///
/// Keys: "a" (q even only), "b1", "b2_k<m>", "b3_k<m>". The b-values are squared
/// norms sum |.|^2 (no m! factor) of the order-m kernel of
///   1/4 (Gamma_2 - E) - (alpha_1 + alpha_2)/2 (Gamma_1 - E) + alpha_1 alpha_2 F,
/// built from iterated symmetrized contractions. "b1" is order q, "b2_k<m>" covers
/// 1 <= m <= 2q-2, m != q (m = 1 only occurs for odd q), "b3_k<m>" covers
/// 2q-1 <= m <= 3q-4. Consequently
///   q! b1 + sum_m m! b*_k<m> = E[gamma_combination(F)^2].
std::map<std::string, double> q_chaos_conditions(const SymmetricKernel& f, const TargetSpec& spec,
                                                 const Limits& limits = {});

struct PowerSumMatch {
  /// Multisets equal within tolerance.
  bool match = false;
  /// a[i] matches b[permutation[i]]; empty unless `match`.
  std::vector<std::size_t> permutation;
  /// sum a^p == sum b^p (relative 1e-10) for p = 1..pmax.
  bool power_sums_agree = false;
};

PowerSumMatch power_sum_match(std::span<const double> a, std::span<const double> b, int pmax,
                              double tol = 1e-10);

/// The four equal expressions for a second-chaos F = I_2(f).
struct LemmaQuantities {
  double cumulant_sum;     // weighted_cumulant_sum of exact cumulants
  double eigen_sum;        // sum_j Q(alpha_j)
  double contraction_norm; // |sum_r P^{(r)}(0)/r! f (x)_1^{(r)} f|^2
  double gamma_moment;     // (1/2) E[gamma_combination^2]
};

LemmaQuantities lemma_quantities(const SymmetricKernel& f, const TargetSpec& spec,
                                 const Limits& limits = {});

}  // namespace wchi
