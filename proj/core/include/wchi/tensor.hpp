#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "wchi/errors.hpp"

namespace wchi {

/// d^q with overflow and limit checks. Throws ResourceGuardError if the
/// tensor would be larger than `limits` allows.
std::size_t checked_size(int order, int dim, const Limits& limits = {});

/// Dense order-q tensor over R^d, stored row-major over all d^q index tuples.
/// Order 0 holds a single scalar. No symmetry is assumed.
class Tensor {
 public:
  Tensor() : Tensor(0, 1) {}
  Tensor(int order, int dim);
  Tensor(int order, int dim, std::vector<double> coeffs);

  /// e_{i1} (x) ... (x) e_{iq}, zero-based indices.
  static Tensor basis(int dim, std::initializer_list<int> indices);
  /// h^{(x)q}.
  static Tensor power(std::span<const double> h, int order);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_[i]; }
  double& operator[](std::size_t i) { return coeffs_[i]; }

  std::size_t flat_index(std::span<const int> index) const;
  double at(std::span<const int> index) const { return coeffs_[flat_index(index)]; }
  double at(std::initializer_list<int> index) const {
    return at(std::span<const int>(index.begin(), index.size()));
  }

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(double c);

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double c) { return a *= c; }
  friend Tensor operator*(double c, Tensor a) { return a *= c; }

 private:
  void require_same_shape(const Tensor& other) const;

  int order_;
  int dim_;
  std::vector<double> coeffs_;
};

/// Element of the q-th symmetric tensor power of R^d: a Tensor whose
/// coefficients are invariant under every permutation of the q slots.
///
/// Instances are only produced by symmetrization, by validated loading, or
/// by linear operations on other kernels, so symmetry holds exactly.
class SymmetricKernel {
 public:
  SymmetricKernel() = default;

  static SymmetricKernel zero(int order, int dim);
  static SymmetricKernel scalar(double value, int dim);
  /// h^{(x)q}, which is already symmetric.
  static SymmetricKernel power(std::span<const double> h, int order);
  /// Accepts `t` if it is symmetric to `rel_tol * norm(t)`, else throws
  /// FormatError. Entries of each permutation class are then made identical.
  static SymmetricKernel from_symmetric(Tensor t, double rel_tol = 1e-12);

  const Tensor& tensor() const { return t_; }
  int order() const { return t_.order(); }
  int dim() const { return t_.dim(); }
  std::size_t size() const { return t_.size(); }
  std::span<const double> coeffs() const { return t_.coeffs(); }
  double operator[](std::size_t i) const { return t_[i]; }
  double at(std::initializer_list<int> index) const { return t_.at(index); }

  SymmetricKernel& operator+=(const SymmetricKernel& other);
  SymmetricKernel& operator-=(const SymmetricKernel& other);
  SymmetricKernel& operator*=(double c);

  friend SymmetricKernel operator+(SymmetricKernel a, const SymmetricKernel& b) { return a += b; }
  friend SymmetricKernel operator-(SymmetricKernel a, const SymmetricKernel& b) { return a -= b; }
  friend SymmetricKernel operator*(SymmetricKernel a, double c) { return a *= c; }
  friend SymmetricKernel operator*(double c, SymmetricKernel a) { return a *= c; }

 private:
  explicit SymmetricKernel(Tensor t) : t_(std::move(t)) {}
  friend SymmetricKernel symmetrize(const Tensor& t, const Limits& limits);

  Tensor t_;
};

/// Average of `t` over all q! permutations of its slots.
///
/// Computed class by class: every index tuple with the same multiset of
/// indices receives the mean of `t` over that class, which equals the
/// permutation average and costs O(d^q) instead of O(q! d^q).
SymmetricKernel symmetrize(const Tensor& t, const Limits& limits = {});

/// Contraction of order r: pairs the last r slots of `f` with the last r
/// slots of `g`. The result has order p + q - 2r with the free slots of `f`
/// first. r = 0 gives the tensor product; r = p = q gives <f, g>.
Tensor contract(const Tensor& f, const Tensor& g, int r, const Limits& limits = {});
inline Tensor contract(const SymmetricKernel& f, const SymmetricKernel& g, int r,
                       const Limits& limits = {}) {
  return contract(f.tensor(), g.tensor(), r, limits);
}

/// symmetrize(contract(f, g, r)).
SymmetricKernel sym_contract(const SymmetricKernel& f, const SymmetricKernel& g, int r,
                             const Limits& limits = {});

/// Plain Euclidean inner product of the coefficient arrays (no q! factor).
double inner(const Tensor& f, const Tensor& g);
inline double inner(const SymmetricKernel& f, const SymmetricKernel& g) {
  return inner(f.tensor(), g.tensor());
}
double norm(const Tensor& f);
inline double norm(const SymmetricKernel& f) { return norm(f.tensor()); }

/// Largest deviation of `t` from its own class means, relative to norm(t).
double symmetry_defect(const Tensor& t);

}  // namespace wchi
