#include "wchi/polynomial.hpp"

#include <stdexcept>
#include <string>

namespace wchi {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::from_roots(std::span<const double> roots) {
  std::vector<double> c{1.0};
  for (double a : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= a * c[i];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monomial(int m) {
  if (m < 0) throw std::invalid_argument("Polynomial::monomial: negative degree");
  std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

double Polynomial::coefficient(int r) const {
  if (r < 0 || r > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(r)];
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative(int times) const {
  if (times < 0) throw std::invalid_argument("Polynomial::derivative: negative order");
  std::vector<double> c = coeffs_;
  for (int t = 0; t < times && !c.empty(); ++t) {
    for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = static_cast<double>(i) * c[i];
    c.pop_back();
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

double expect_polynomial(const Polynomial& p, std::span<const double> moments) {
  if (static_cast<int>(moments.size()) < p.degree() + 1) {
    throw std::invalid_argument("expect_polynomial: need moments up to order " +
                                std::to_string(p.degree()) + ", got " +
                                std::to_string(static_cast<int>(moments.size()) - 1));
  }
  double acc = 0.0;
  for (int i = 0; i <= p.degree(); ++i) acc += p.coefficient(i) * moments[static_cast<std::size_t>(i)];
  return acc;
}

}  // namespace wchi
