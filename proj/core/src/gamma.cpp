#include <algorithm>
#include <string>

#include "wchi/chaos.hpp"
#include "wchi/combinatorics.hpp"

namespace wchi {

ChaosExpansion h_inner(const GradientField& u, const GradientField& v, const Limits& limits) {
  if (u.dim() != v.dim()) throw std::invalid_argument("h_inner: dim mismatch");
  ChaosExpansion out(u.dim());
  for (const auto& [a, ua] : u.entries()) {
    for (const auto& [b, vb] : v.entries()) {
      for (int r = 0; r <= std::min(a, b); ++r) {
        const double c = factorial(r) * binomial(a, r) * binomial(b, r);
        out.add(c * symmetrize(contract(ua, vb, r + 1, limits), limits));
      }
    }
  }
  return out;
}

ChaosExpansion gamma_step(const ChaosExpansion& f, const ChaosExpansion& g, const Limits& limits) {
  return h_inner(derivative(f), derivative(-1.0 * apply_L_inverse(g)), limits);
}

std::vector<ChaosExpansion> gamma_sequence(const ChaosExpansion& f, int imax, const Limits& limits) {
  if (imax < 0) throw std::invalid_argument("gamma_sequence: imax must be non-negative");
  std::vector<ChaosExpansion> seq;
  seq.reserve(static_cast<std::size_t>(imax) + 1);
  seq.push_back(f);
  for (int i = 1; i <= imax; ++i) seq.push_back(gamma_step(f, seq.back(), limits));
  return seq;
}

double gamma_constant(int q, std::span<const int> r) {
  double c = 1.0;
  int sum = 0;
  for (std::size_t a = 0; a < r.size(); ++a) {
    const int order = static_cast<int>(a + 1) * q - 2 * sum;  // order of the running kernel
    c *= q * factorial(r[a] - 1) * binomial(order - 1, r[a] - 1) * binomial(q - 1, r[a] - 1);
    sum += r[a];
  }
  return c;
}

namespace {

struct ExplicitGamma {
  const SymmetricKernel& f;
  int q;
  int depth;
  const Limits& limits;
  ChaosExpansion out;

  // `kernel` is the level-`level` iterated contraction, with constant `c`.
  void descend(const SymmetricKernel& kernel, int level, double c) {
    if (level == depth) {
      out.add(c * kernel);
      return;
    }
    const int order = kernel.order();
    // D kills constants: a branch whose running order reached zero stops.
    if (order == 0) return;
    for (int r = 1; r <= std::min(order, q); ++r) {
      const double step = q * factorial(r - 1) * binomial(order - 1, r - 1) * binomial(q - 1, r - 1);
      descend(sym_contract(kernel, f, r, limits), level + 1, c * step);
    }
  }
};

}  // namespace

ChaosExpansion gamma_explicit(const SymmetricKernel& f, int i, const Limits& limits) {
  if (f.order() < 1) throw std::invalid_argument("gamma_explicit: kernel order must be >= 1");
  if (i < 1) throw std::invalid_argument("gamma_explicit: i must be >= 1");
  ExplicitGamma g{f, f.order(), i, limits, ChaosExpansion(f.dim())};
  g.descend(f, 0, 1.0);
  return std::move(g.out);
}

std::vector<double> exact_cumulants(const ChaosExpansion& f, int jmax, const Limits& limits) {
  if (jmax < 1) throw std::invalid_argument("exact_cumulants: jmax must be >= 1");
  std::vector<double> kappas{f.mean()};
  if (jmax == 1) return kappas;
  const auto seq = gamma_sequence(f.centered(), jmax - 1, limits);
  for (int j = 2; j <= jmax; ++j) kappas.push_back(factorial(j - 1) * seq[j - 1].mean());
  return kappas;
}

double exact_cumulant(const ChaosExpansion& f, int j, const Limits& limits) {
  if (j < 1) throw std::invalid_argument("exact_cumulant: j must be >= 1");
  return exact_cumulants(f, j, limits).back();
}

std::vector<double> moments_from_cumulants(std::span<const double> kappas, int mmax) {
  if (mmax < 0) throw std::invalid_argument("moments_from_cumulants: mmax must be >= 0");
  if (static_cast<int>(kappas.size()) < mmax) {
    throw std::invalid_argument("moments_from_cumulants: need " + std::to_string(mmax) +
                                " cumulants, got " + std::to_string(kappas.size()));
  }
  std::vector<double> m(static_cast<std::size_t>(mmax) + 1, 0.0);
  m[0] = 1.0;
  for (int n = 0; n < mmax; ++n) {
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) acc += binomial(n, i) * kappas[i] * m[n - i];
    m[n + 1] = acc;
  }
  return m;
}

}  // namespace wchi
