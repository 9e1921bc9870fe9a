#include <map>
#include <string>

#include "wchi/combinatorics.hpp"
#include "wchi/criteria.hpp"

namespace wchi {

std::map<std::string, double> q_chaos_conditions(const SymmetricKernel& f, const TargetSpec& spec,
                                                 const Limits& limits) {
  if (spec.k() != 2) {
    throw std::invalid_argument("q_chaos_conditions: target must have exactly two weights, got " +
                                std::to_string(spec.k()));
  }
  const int q = f.order();
  if (q < 2) throw std::invalid_argument("q_chaos_conditions: kernel order must be >= 2");
  const double a1 = spec.alphas()[0];
  const double a2 = spec.alphas()[1];

  std::map<int, SymmetricKernel> by_order;
  auto add = [&](double c, const SymmetricKernel& g) {
    auto it = by_order.find(g.order());
    if (it == by_order.end()) {
      by_order.emplace(g.order(), c * g);
    } else {
      it->second += c * g;
    }
  };

  // 1/4 (Gamma_2 - E): (f ~(x)_r f) ~(x)_s f with r < q, s <= min(2q - 2r, q).
  for (int r = 1; r <= q - 1; ++r) {
    const SymmetricKernel inner_r = sym_contract(f, f, r, limits);
    const double cr = q * factorial(r - 1) * binomial(q - 1, r - 1) * binomial(q - 1, r - 1);
    for (int s = 1; s <= std::min(2 * q - 2 * r, q); ++s) {
      if (3 * q - 2 * (r + s) == 0) continue;
      const double cs = q * factorial(s - 1) * binomial(2 * q - 2 * r - 1, s - 1) * binomial(q - 1, s - 1);
      add(0.25 * cr * cs, sym_contract(inner_r, f, s, limits));
    }
    // -(alpha_1 + alpha_2)/2 (Gamma_1 - E), whose order-q piece (r = q/2) is the
    // middle term of the order-q condition. It vanishes when alpha_1 = -alpha_2.
    if (a1 + a2 != 0.0) add(-0.5 * (a1 + a2) * cr, inner_r);
  }
  add(a1 * a2, f);

  std::map<std::string, double> out;
  if (q % 2 == 0) out["a"] = inner(sym_contract(f, f, q / 2, limits), f);
  out["b1"] = 0.0;
  for (const auto& [m, g] : by_order) {
    const double sq = inner(g, g);
    if (m == q) {
      out["b1"] = sq;
    } else if (m <= 2 * q - 2) {
      out["b2_k" + std::to_string(m)] = sq;
    } else {
      out["b3_k" + std::to_string(m)] = sq;
    }
  }
  return out;
}

}  // namespace wchi
