#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wchi/chaos.hpp"
#include "wchi/tensor.hpp"

namespace wchi {

/// Weights (alpha_1, ..., alpha_k) of the target F_inf = sum_i alpha_i (N_i^2 - 1).
/// Nonempty, all nonzero, pairwise distinct; repeated weights are rejected.
class TargetSpec {
 public:
  /// Throws std::invalid_argument naming the offending entry.
  explicit TargetSpec(std::vector<double> alphas);

  const std::vector<double>& alphas() const { return alphas_; }
  int k() const { return static_cast<int>(alphas_.size()); }

  /// kappa_i(F_inf) = 2^{i-1} (i-1)! sum_j alpha_j^i for i >= 2, and 0 for i = 1.
  double cumulant(int i) const;

 private:
  std::vector<double> alphas_;
};

/// Eigen-decomposition of the Hilbert-Schmidt operator of an order-2 kernel.
struct SpectralForm {
  /// Descending.
  std::vector<double> eigenvalues;
  /// Orthonormal columns; column j pairs with eigenvalues[j]. The first
  /// component of magnitude above 1e-12 in each column is positive.
  Eigen::MatrixXd eigenvectors;

  /// Eigenvalues with |alpha| > rel_tol * |f|_HS.
  std::vector<double> nonzero_eigenvalues(double rel_tol = 1e-12) const;
  /// sum_j alpha_j eta_j (x) eta_j.
  Eigen::MatrixXd reconstruct() const;
};

/// Matrix of A_f : g -> f (x)_1 g in the canonical basis.
Eigen::MatrixXd hs_matrix(const SymmetricKernel& f);

SpectralForm spectral(const SymmetricKernel& f);

/// f (x)_1^{(1)} f = f and f (x)_1^{(p)} f = (f (x)_1^{(p-1)} f) (x)_1 f.
SymmetricKernel iterated_contraction(const SymmetricKernel& f, int p);

/// kappa_i(I_2(f)) for i >= 2, computed both as 2^{i-1}(i-1)! sum_j alpha_j^i
/// and as 2^{i-1}(i-1)! <f (x)_1^{(i-1)} f, f>. Throws ConsistencyFault if
/// the two disagree beyond 1e-10 relative.
double cumulant_spectral(const SymmetricKernel& f, int i);

/// Diagonal kernel sum_i alpha_i e_i (x) e_i over R^d, d >= k.
SymmetricKernel target_kernel(const TargetSpec& spec, int d);

/// L2 norm of I_2(f (x)_1^{(r)} f) - 2^{1-r} (Gamma_{r-1}(F) - E Gamma_{r-1}(F))
/// for F = I_2(f), with the right side from `gamma_sequence`.
double gamma_identity_defect(const SymmetricKernel& f, int r);

}  // namespace wchi
