#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "wchi/errors.hpp"
#include "wchi/tensor.hpp"

namespace wchi {

/// Probabilists' Hermite polynomial He_q(x): He_0 = 1, He_1 = x,
/// He_{q+1} = x He_q - q He_{q-1}. The physicists' H_q would break the
/// identity I_q(h^{(x)q}) = He_q(W(h)) that `evaluate` relies on.
double hermite(int q, double x);

/// F = sum_q I_q(f_q) on the isonormal process over R^d, W(e_i) iid N(0,1).
/// Order 0 holds the mean. Absent orders are zero.
class ChaosExpansion {
 public:
  explicit ChaosExpansion(int dim = 1);

  static ChaosExpansion constant(double c, int dim);
  /// I_q(f).
  static ChaosExpansion integral(SymmetricKernel f);

  int dim() const { return dim_; }
  const std::map<int, SymmetricKernel>& kernels() const { return kernels_; }
  /// Kernel of order q, or nullptr when absent.
  const SymmetricKernel* kernel(int q) const;
  /// Highest order present, -1 for the empty expansion.
  int max_order() const;

  /// Adds I_q(f) for q = f.order().
  ChaosExpansion& add(const SymmetricKernel& f);

  double mean() const;
  ChaosExpansion centered() const;
  /// E[F^2] = f_0^2 + sum_{q>=1} q! |f_q|^2.
  double second_moment() const;
  /// sqrt(E[F^2]).
  double l2_norm() const;

  ChaosExpansion& operator+=(const ChaosExpansion& other);
  ChaosExpansion& operator-=(const ChaosExpansion& other);
  ChaosExpansion& operator*=(double c);

  friend ChaosExpansion operator+(ChaosExpansion a, const ChaosExpansion& b) { return a += b; }
  friend ChaosExpansion operator-(ChaosExpansion a, const ChaosExpansion& b) { return a -= b; }
  friend ChaosExpansion operator*(ChaosExpansion a, double c) { return a *= c; }
  friend ChaosExpansion operator*(double c, ChaosExpansion a) { return a *= c; }

 private:
  void require_dim(int d) const;

  int dim_;
  std::map<int, SymmetricKernel> kernels_;
};

/// E[F G] through the isometry, without forming the product.
double expect_product(const ChaosExpansion& f, const ChaosExpansion& g);

/// H-valued chaos expansion D_t F = sum_q q I_{q-1}(f_q(., t)).
///
/// `entries()` maps the chaos order a of the integrand to a dense tensor of
/// order a + 1 whose first a slots are symmetric and whose last slot is the
/// free H index t.
class GradientField {
 public:
  explicit GradientField(int dim = 1) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::map<int, Tensor>& entries() const { return entries_; }
  const Tensor* entry(int order) const;
  void set(int order, Tensor t);

 private:
  int dim_;
  std::map<int, Tensor> entries_;
};

/// Product formula I_p(f) I_q(g) = sum_r r! C(p,r) C(q,r) I_{p+q-2r}(f ~(x)_r g),
/// extended bilinearly.
ChaosExpansion multiply(const ChaosExpansion& f, const ChaosExpansion& g,
                        const Limits& limits = {});

/// Pathwise value of F at W(e_i) = x_i.
double evaluate(const ChaosExpansion& f, std::span<const double> x);

/// Precompiled form of `evaluate` for repeated evaluation (sampling).
///
/// Each unordered multi-index with multiplicities (m_1..m_d) contributes
/// coeff * q!/prod(m_i!) * prod_i He_{m_i}(x_i); zero coefficients are dropped.
class ChaosEvaluator {
 public:
  explicit ChaosEvaluator(const ChaosExpansion& f);

  int dim() const { return dim_; }
  int max_order() const { return max_order_; }
  std::size_t term_count() const { return coeffs_.size(); }

  /// `scratch` must hold dim * (max_order + 1) doubles.
  double operator()(std::span<const double> x, std::span<double> scratch) const;
  double operator()(std::span<const double> x) const;

 private:
  int dim_;
  int max_order_ = 0;
  double constant_ = 0.0;
  std::vector<double> coeffs_;
  std::vector<std::size_t> offsets_;  // term t uses factors_[offsets_[t] .. offsets_[t+1])
  std::vector<int> factors_;          // var * (max_order+1) + multiplicity
};

GradientField derivative(const ChaosExpansion& f);

/// Ornstein-Uhlenbeck generator: order q scaled by -q.
ChaosExpansion apply_L(const ChaosExpansion& f);
/// Pseudo-inverse: order q >= 1 scaled by -1/q, order 0 dropped.
ChaosExpansion apply_L_inverse(const ChaosExpansion& f);

/// <u, v>_H as a chaos expansion. For entries of integrand orders a and b the
/// pointwise product formula is summed over the free index, which turns the
/// order-r pairing into a contraction of order r + 1.
ChaosExpansion h_inner(const GradientField& u, const GradientField& v, const Limits& limits = {});

/// <DF, -D L^{-1} G>_H.
ChaosExpansion gamma_step(const ChaosExpansion& f, const ChaosExpansion& g,
                          const Limits& limits = {});

/// [Gamma_0(F) = F, Gamma_1(F), ..., Gamma_imax(F)] with
/// Gamma_i(F) = gamma_step(F, Gamma_{i-1}(F)).
std::vector<ChaosExpansion> gamma_sequence(const ChaosExpansion& f, int imax,
                                           const Limits& limits = {});

/// Gamma_i(I_q(f)) from the closed-form multi-sum over contraction orders
/// (r_1, ..., r_i) with constants
///   c_q(r)          = q (r-1)! C(q-1, r-1)^2
///   c_q(r_1..r_a)   = q (r_a-1)! C(a q - 2 r_1 - ... - 2 r_{a-1} - 1, r_a - 1)
///                     * C(q-1, r_a - 1) * c_q(r_1..r_{a-1}),
/// where a branch survives only while the running kernel order stays positive.
/// Independent of `gamma_sequence`; the two are cross-checked in tests.
ChaosExpansion gamma_explicit(const SymmetricKernel& f, int i, const Limits& limits = {});

/// The constant c_q(r_1, ..., r_a) of `gamma_explicit`.
double gamma_constant(int q, std::span<const int> r);

/// kappa_1 = E[F]; for j >= 2, kappa_j = (j-1)! E[Gamma_{j-1}(F - E F)].
double exact_cumulant(const ChaosExpansion& f, int j, const Limits& limits = {});
/// [kappa_1, ..., kappa_jmax] sharing one Gamma sequence.
std::vector<double> exact_cumulants(const ChaosExpansion& f, int jmax, const Limits& limits = {});

/// Moment recursion E[F^{m+1}] = sum_{i=0}^m C(m,i) kappa_{i+1} E[F^{m-i}].
/// `kappas[0]` is kappa_1. Returns [E F^0 = 1, E F, ..., E F^mmax].
std::vector<double> moments_from_cumulants(std::span<const double> kappas, int mmax);

}  // namespace wchi
