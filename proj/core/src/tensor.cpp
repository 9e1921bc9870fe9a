#include "wchi/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace wchi {
namespace {

constexpr int kMaxSlots = 32;

// Odometer over {0..d-1}^q in row-major order.
class IndexCursor {
 public:
  IndexCursor(int order, int dim) : order_(order), dim_(dim) { idx_.fill(0); }

  void advance() {
    for (int k = order_ - 1; k >= 0; --k) {
      if (++idx_[k] < dim_) return;
      idx_[k] = 0;
    }
  }
  const std::array<int, kMaxSlots>& index() const { return idx_; }

 private:
  int order_;
  int dim_;
  std::array<int, kMaxSlots> idx_;
};

// Flat index of the sorted version of `idx` together with the size of its
// permutation class q! / prod(m_i!).
struct CanonicalSlot {
  std::size_t flat;
  double class_size;
};

CanonicalSlot canonical(const std::array<int, kMaxSlots>& idx, int order, int dim) {
  std::array<int, kMaxSlots> s;
  std::copy_n(idx.begin(), order, s.begin());
  for (int i = 1; i < order; ++i) {
    int v = s[i];
    int j = i - 1;
    while (j >= 0 && s[j] > v) {
      s[j + 1] = s[j];
      --j;
    }
    s[j + 1] = v;
  }
  std::size_t flat = 0;
  double count = 1.0;
  int run = 1;
  for (int i = 0; i < order; ++i) {
    flat = flat * static_cast<std::size_t>(dim) + static_cast<std::size_t>(s[i]);
    if (i > 0 && s[i] == s[i - 1]) {
      ++run;
      count *= static_cast<double>(i + 1) / run;
    } else {
      run = 1;
      count *= static_cast<double>(i + 1);
    }
  }
  return {flat, count};
}

bool is_canonical(const std::array<int, kMaxSlots>& idx, int order) {
  for (int i = 1; i < order; ++i) {
    if (idx[i] < idx[i - 1]) return false;
  }
  return true;
}

void average_classes(std::span<const double> in, std::span<double> out, int order, int dim) {
  std::fill(out.begin(), out.end(), 0.0);
  {
    IndexCursor cur(order, dim);
    for (std::size_t i = 0; i < in.size(); ++i, cur.advance()) {
      out[canonical(cur.index(), order, dim).flat] += in[i];
    }
  }
  {
    IndexCursor cur(order, dim);
    for (std::size_t i = 0; i < in.size(); ++i, cur.advance()) {
      if (is_canonical(cur.index(), order)) {
        out[i] /= canonical(cur.index(), order, dim).class_size;
      }
    }
  }
  IndexCursor cur(order, dim);
  for (std::size_t i = 0; i < in.size(); ++i, cur.advance()) {
    if (!is_canonical(cur.index(), order)) {
      out[i] = out[canonical(cur.index(), order, dim).flat];
    }
  }
}

}  // namespace

std::size_t checked_size(int order, int dim, const Limits& limits) {
  if (order < 0) throw std::invalid_argument("tensor order must be non-negative");
  if (dim < 1) throw std::invalid_argument("tensor dim must be positive");
  if (order > limits.max_order || order > kMaxSlots) {
    throw ResourceGuardError("tensor order " + std::to_string(order) + " exceeds max_order " +
                             std::to_string(limits.max_order));
  }
  std::size_t n = 1;
  for (int k = 0; k < order; ++k) {
    if (n > limits.max_entries / static_cast<std::size_t>(dim)) {
      throw ResourceGuardError("tensor of order " + std::to_string(order) + " over dim " +
                               std::to_string(dim) + " exceeds max_entries " +
                               std::to_string(limits.max_entries));
    }
    n *= static_cast<std::size_t>(dim);
  }
  return n;
}

Tensor::Tensor(int order, int dim)
    : order_(order),
      dim_(dim),
      coeffs_(checked_size(order, dim, {kMaxSlots, std::numeric_limits<std::size_t>::max()}), 0.0) {}

Tensor::Tensor(int order, int dim, std::vector<double> coeffs)
    : order_(order), dim_(dim), coeffs_(std::move(coeffs)) {
  const auto n = checked_size(order, dim, {kMaxSlots, std::numeric_limits<std::size_t>::max()});
  if (coeffs_.size() != n) {
    throw std::invalid_argument("tensor of order " + std::to_string(order) + " over dim " +
                                std::to_string(dim) + " needs " + std::to_string(n) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

Tensor Tensor::basis(int dim, std::initializer_list<int> indices) {
  Tensor t(static_cast<int>(indices.size()), dim);
  t.coeffs_[t.flat_index(std::span<const int>(indices.begin(), indices.size()))] = 1.0;
  return t;
}

Tensor Tensor::power(std::span<const double> h, int order) {
  const int d = static_cast<int>(h.size());
  Tensor t(order, d);
  IndexCursor cur(order, d);
  for (std::size_t i = 0; i < t.size(); ++i, cur.advance()) {
    double v = 1.0;
    for (int k = 0; k < order; ++k) v *= h[cur.index()[k]];
    t.coeffs_[i] = v;
  }
  return t;
}

std::size_t Tensor::flat_index(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order_) {
    throw std::invalid_argument("index length does not match tensor order");
  }
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw std::out_of_range("tensor index out of range");
    flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return flat;
}

void Tensor::require_same_shape(const Tensor& other) const {
  if (order_ != other.order_ || dim_ != other.dim_) {
    throw std::invalid_argument("tensor shape mismatch: (order " + std::to_string(order_) +
                                ", dim " + std::to_string(dim_) + ") vs (order " +
                                std::to_string(other.order_) + ", dim " +
                                std::to_string(other.dim_) + ")");
  }
}

Tensor& Tensor::operator+=(const Tensor& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Tensor& Tensor::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  return *this;
}

SymmetricKernel SymmetricKernel::zero(int order, int dim) { return SymmetricKernel(Tensor(order, dim)); }

SymmetricKernel SymmetricKernel::scalar(double value, int dim) {
  return SymmetricKernel(Tensor(0, dim, {value}));
}

SymmetricKernel SymmetricKernel::power(std::span<const double> h, int order) {
  return SymmetricKernel(Tensor::power(h, order));
}

SymmetricKernel SymmetricKernel::from_symmetric(Tensor t, double rel_tol) {
  const double defect = symmetry_defect(t);
  if (defect > rel_tol) {
    throw FormatError("kernel of order " + std::to_string(t.order()) +
                      " is not symmetric: relative defect " + std::to_string(defect) +
                      " exceeds tolerance " + std::to_string(rel_tol));
  }
  if (t.order() < 2) return SymmetricKernel(std::move(t));
  Tensor out(t.order(), t.dim());
  average_classes(t.coeffs(), out.coeffs(), t.order(), t.dim());
  return SymmetricKernel(std::move(out));
}

SymmetricKernel& SymmetricKernel::operator+=(const SymmetricKernel& other) {
  t_ += other.t_;
  return *this;
}

SymmetricKernel& SymmetricKernel::operator-=(const SymmetricKernel& other) {
  t_ -= other.t_;
  return *this;
}

SymmetricKernel& SymmetricKernel::operator*=(double c) {
  t_ *= c;
  return *this;
}

SymmetricKernel symmetrize(const Tensor& t, const Limits& limits) {
  checked_size(t.order(), t.dim(), limits);
  if (t.order() < 2) return SymmetricKernel(t);
  Tensor out(t.order(), t.dim());
  average_classes(t.coeffs(), out.coeffs(), t.order(), t.dim());
  return SymmetricKernel(std::move(out));
}

Tensor contract(const Tensor& f, const Tensor& g, int r, const Limits& limits) {
  if (f.dim() != g.dim()) {
    throw std::invalid_argument("contract: dim mismatch " + std::to_string(f.dim()) + " vs " +
                                std::to_string(g.dim()));
  }
  if (r < 0 || r > std::min(f.order(), g.order())) {
    throw std::invalid_argument("contract: order " + std::to_string(r) + " outside [0, " +
                                std::to_string(std::min(f.order(), g.order())) + "]");
  }
  const int d = f.dim();
  const int out_order = f.order() + g.order() - 2 * r;
  checked_size(out_order, d, limits);
  Tensor out(out_order, d);

  const std::size_t s = checked_size(r, d, {kMaxSlots, std::numeric_limits<std::size_t>::max()});
  const std::size_t m = f.size() / s;
  const std::size_t n = g.size() / s;
  const double* fp = f.coeffs().data();
  const double* gp = g.coeffs().data();
  double* op = out.coeffs().data();
  for (std::size_t x = 0; x < m; ++x) {
    const double* fx = fp + x * s;
    for (std::size_t y = 0; y < n; ++y) {
      const double* gy = gp + y * s;
      double acc = 0.0;
      for (std::size_t a = 0; a < s; ++a) acc += fx[a] * gy[a];
      op[x * n + y] = acc;
    }
  }
  return out;
}

SymmetricKernel sym_contract(const SymmetricKernel& f, const SymmetricKernel& g, int r,
                             const Limits& limits) {
  return symmetrize(contract(f, g, r, limits), limits);
}

double inner(const Tensor& f, const Tensor& g) {
  if (f.order() != g.order() || f.dim() != g.dim()) {
    throw std::invalid_argument("inner: shape mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * g[i];
  return acc;
}

double norm(const Tensor& f) { return std::sqrt(inner(f, f)); }

double symmetry_defect(const Tensor& t) {
  if (t.order() < 2) return 0.0;
  Tensor means(t.order(), t.dim());
  average_classes(t.coeffs(), means.coeffs(), t.order(), t.dim());
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, std::abs(t[i] - means[i]));
  const double scale = norm(t);
  if (scale == 0.0) return worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return worst / scale;
}

}  // namespace wchi
