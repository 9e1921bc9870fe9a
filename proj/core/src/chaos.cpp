#include "wchi/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wchi/combinatorics.hpp"

namespace wchi {

double hermite(int q, double x) {
  if (q < 0) throw std::invalid_argument("hermite: negative degree");
  if (q == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < q; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ChaosExpansion::ChaosExpansion(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("ChaosExpansion: dim must be positive");
}

ChaosExpansion ChaosExpansion::constant(double c, int dim) {
  ChaosExpansion f(dim);
  f.add(SymmetricKernel::scalar(c, dim));
  return f;
}

ChaosExpansion ChaosExpansion::integral(SymmetricKernel f) {
  ChaosExpansion out(f.dim());
  out.add(f);
  return out;
}

const SymmetricKernel* ChaosExpansion::kernel(int q) const {
  auto it = kernels_.find(q);
  return it == kernels_.end() ? nullptr : &it->second;
}

int ChaosExpansion::max_order() const { return kernels_.empty() ? -1 : kernels_.rbegin()->first; }

void ChaosExpansion::require_dim(int d) const {
  if (d != dim_) {
    throw std::invalid_argument("chaos expansion dim mismatch: " + std::to_string(dim_) + " vs " +
                                std::to_string(d));
  }
}

ChaosExpansion& ChaosExpansion::add(const SymmetricKernel& f) {
  require_dim(f.dim());
  auto it = kernels_.find(f.order());
  if (it == kernels_.end()) {
    kernels_.emplace(f.order(), f);
  } else {
    it->second += f;
  }
  return *this;
}

double ChaosExpansion::mean() const {
  const auto* f0 = kernel(0);
  return f0 ? (*f0)[0] : 0.0;
}

ChaosExpansion ChaosExpansion::centered() const {
  ChaosExpansion out = *this;
  out.kernels_.erase(0);
  return out;
}

double ChaosExpansion::second_moment() const { return expect_product(*this, *this); }

double ChaosExpansion::l2_norm() const { return std::sqrt(second_moment()); }

ChaosExpansion& ChaosExpansion::operator+=(const ChaosExpansion& other) {
  require_dim(other.dim_);
  for (const auto& [q, f] : other.kernels_) add(f);
  return *this;
}

ChaosExpansion& ChaosExpansion::operator-=(const ChaosExpansion& other) {
  require_dim(other.dim_);
  for (const auto& [q, f] : other.kernels_) add(-1.0 * f);
  return *this;
}

ChaosExpansion& ChaosExpansion::operator*=(double c) {
  for (auto& [q, f] : kernels_) f *= c;
  return *this;
}

double expect_product(const ChaosExpansion& f, const ChaosExpansion& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("expect_product: dim mismatch");
  double acc = 0.0;
  for (const auto& [q, fq] : f.kernels()) {
    if (const auto* gq = g.kernel(q)) acc += factorial(q) * inner(fq, *gq);
  }
  return acc;
}

const Tensor* GradientField::entry(int order) const {
  auto it = entries_.find(order);
  return it == entries_.end() ? nullptr : &it->second;
}

void GradientField::set(int order, Tensor t) {
  if (t.dim() != dim_ || t.order() != order + 1) {
    throw std::invalid_argument("GradientField: entry of integrand order " + std::to_string(order) +
                                " must be a tensor of order " + std::to_string(order + 1));
  }
  entries_.insert_or_assign(order, std::move(t));
}

ChaosExpansion multiply(const ChaosExpansion& f, const ChaosExpansion& g, const Limits& limits) {
  if (f.dim() != g.dim()) throw std::invalid_argument("multiply: dim mismatch");
  ChaosExpansion out(f.dim());
  for (const auto& [p, fp] : f.kernels()) {
    for (const auto& [q, gq] : g.kernels()) {
      if (p + q > limits.max_order) {
        throw ResourceGuardError("multiply: product order " + std::to_string(p + q) +
                                 " exceeds max_order " + std::to_string(limits.max_order));
      }
      for (int r = 0; r <= std::min(p, q); ++r) {
        const double c = factorial(r) * binomial(p, r) * binomial(q, r);
        out.add(c * sym_contract(fp, gq, r, limits));
      }
    }
  }
  return out;
}

ChaosEvaluator::ChaosEvaluator(const ChaosExpansion& f) : dim_(f.dim()) {
  max_order_ = std::max(0, f.max_order());
  const int stride = max_order_ + 1;
  offsets_.push_back(0);
  std::vector<int> idx;
  for (const auto& [q, fq] : f.kernels()) {
    if (q == 0) {
      constant_ += fq[0];
      continue;
    }
    idx.assign(q, 0);
    for (std::size_t flat = 0; flat < fq.size(); ++flat) {
      bool sorted = true;
      for (int k = 1; k < q && sorted; ++k) sorted = idx[k] >= idx[k - 1];
      const double c = fq[flat];
      if (sorted && c != 0.0) {
        double weight = factorial(q);
        int k = 0;
        while (k < q) {
          int m = 1;
          while (k + m < q && idx[k + m] == idx[k]) ++m;
          weight /= factorial(m);
          factors_.push_back(idx[k] * stride + m);
          k += m;
        }
        coeffs_.push_back(c * weight);
        offsets_.push_back(factors_.size());
      }
      for (int k = q - 1; k >= 0; --k) {
        if (++idx[k] < dim_) break;
        idx[k] = 0;
      }
    }
  }
}

double ChaosEvaluator::operator()(std::span<const double> x, std::span<double> scratch) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw std::invalid_argument("evaluate: point has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(dim_));
  }
  const int stride = max_order_ + 1;
  for (int i = 0; i < dim_; ++i) {
    double* h = scratch.data() + static_cast<std::size_t>(i) * stride;
    h[0] = 1.0;
    if (max_order_ >= 1) h[1] = x[i];
    for (int m = 1; m < max_order_; ++m) h[m + 1] = x[i] * h[m] - m * h[m - 1];
  }
  double acc = constant_;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double v = coeffs_[t];
    for (std::size_t k = offsets_[t]; k < offsets_[t + 1]; ++k) v *= scratch[factors_[k]];
    acc += v;
  }
  return acc;
}

double ChaosEvaluator::operator()(std::span<const double> x) const {
  std::vector<double> scratch(static_cast<std::size_t>(dim_) * (max_order_ + 1));
  return (*this)(x, scratch);
}

double evaluate(const ChaosExpansion& f, std::span<const double> x) { return ChaosEvaluator(f)(x); }

GradientField derivative(const ChaosExpansion& f) {
  GradientField out(f.dim());
  for (const auto& [q, fq] : f.kernels()) {
    if (q == 0) continue;
    out.set(q - 1, static_cast<double>(q) * fq.tensor());
  }
  return out;
}

ChaosExpansion apply_L(const ChaosExpansion& f) {
  ChaosExpansion out(f.dim());
  for (const auto& [q, fq] : f.kernels()) {
    if (q > 0) out.add(-static_cast<double>(q) * fq);
  }
  return out;
}

ChaosExpansion apply_L_inverse(const ChaosExpansion& f) {
  ChaosExpansion out(f.dim());
  for (const auto& [q, fq] : f.kernels()) {
    if (q > 0) out.add((-1.0 / q) * fq);
  }
  return out;
}

}  // namespace wchi
