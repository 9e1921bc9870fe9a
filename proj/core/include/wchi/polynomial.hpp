#pragma once

#include <span>
#include <vector>

namespace wchi {

/// Real polynomial with coefficients stored from the constant term upward.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  /// prod_i (x - roots[i]), built by repeated multiplication by linear factors.
  static Polynomial from_roots(std::span<const double> roots);
  /// x^m.
  static Polynomial monomial(int m);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  /// P^{(r)}(0) / r!; zero beyond the degree.
  double coefficient(int r) const;

  double operator()(double x) const;
  Polynomial derivative(int times = 1) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// E[p(F)] from raw moments [E F^0, E F^1, ...]. Throws std::invalid_argument
/// if fewer than degree + 1 moments are supplied.
double expect_polynomial(const Polynomial& p, std::span<const double> moments);

}  // namespace wchi
