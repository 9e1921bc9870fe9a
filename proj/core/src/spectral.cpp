#include "wchi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "wchi/combinatorics.hpp"

namespace wchi {
namespace {

void require_order_two(const SymmetricKernel& f, const char* what) {
  if (f.order() != 2) {
    throw std::invalid_argument(std::string(what) + ": expected an order-2 kernel, got order " +
                                std::to_string(f.order()));
  }
}

std::string entry_name(std::size_t i) { return "alphas[" + std::to_string(i) + "]"; }

}  // namespace

TargetSpec::TargetSpec(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw std::invalid_argument("alphas: TargetSpec needs at least one weight");
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    const double a = alphas_[i];
    if (!std::isfinite(a)) throw std::invalid_argument(entry_name(i) + " is not finite");
    if (a == 0.0) {
      throw std::invalid_argument(entry_name(i) + " is zero (TargetSpec requires nonzero weights)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (alphas_[j] == a) {
        std::ostringstream msg;
        msg << entry_name(i) << " = " << a << " duplicates " << entry_name(j)
            << " (TargetSpec requires pairwise-distinct weights)";
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

double TargetSpec::cumulant(int i) const {
  if (i < 1) throw std::invalid_argument("TargetSpec::cumulant: i must be >= 1");
  if (i == 1) return 0.0;
  double s = 0.0;
  for (double a : alphas_) s += std::pow(a, i);
  return std::pow(2.0, i - 1) * factorial(i - 1) * s;
}

std::vector<double> SpectralForm::nonzero_eigenvalues(double rel_tol) const {
  double hs = 0.0;
  for (double a : eigenvalues) hs += a * a;
  const double cut = rel_tol * std::sqrt(hs);
  std::vector<double> out;
  for (double a : eigenvalues) {
    if (std::abs(a) > cut) out.push_back(a);
  }
  return out;
}

Eigen::MatrixXd SpectralForm::reconstruct() const {
  const Eigen::Index d = eigenvectors.rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    m += eigenvalues[static_cast<std::size_t>(j)] * eigenvectors.col(j) * eigenvectors.col(j).transpose();
  }
  return m;
}

Eigen::MatrixXd hs_matrix(const SymmetricKernel& f) {
  require_order_two(f, "hs_matrix");
  const int d = f.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = f[static_cast<std::size_t>(i) * d + j];
  }
  return m;
}

SpectralForm spectral(const SymmetricKernel& f) {
  const Eigen::MatrixXd m = hs_matrix(f);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  const Eigen::Index d = m.rows();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return solver.eigenvalues()(a) > solver.eigenvalues()(b);
  });

  SpectralForm out;
  out.eigenvectors.resize(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.eigenvalues.push_back(solver.eigenvalues()(src));
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    for (Eigen::Index i = 0; i < d; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    out.eigenvectors.col(j) = v;
  }
  return out;
}

SymmetricKernel iterated_contraction(const SymmetricKernel& f, int p) {
  require_order_two(f, "iterated_contraction");
  if (p < 1) throw std::invalid_argument("iterated_contraction: p must be >= 1");
  SymmetricKernel acc = f;
  for (int step = 2; step <= p; ++step) acc = sym_contract(acc, f, 1);
  return acc;
}

double cumulant_spectral(const SymmetricKernel& f, int i) {
  require_order_two(f, "cumulant_spectral");
  if (i < 2) throw std::invalid_argument("cumulant_spectral: i must be >= 2");
  const double scale = std::pow(2.0, i - 1) * factorial(i - 1);

  double power_sum = 0.0;
  double magnitude = 0.0;
  for (double a : spectral(f).eigenvalues) {
    power_sum += std::pow(a, i);
    magnitude += std::pow(std::abs(a), i);
  }
  const double by_eigenvalues = scale * power_sum;
  const double by_contractions = scale * inner(iterated_contraction(f, i - 1), f);

  if (std::abs(by_eigenvalues - by_contractions) > 1e-10 * scale * magnitude + 1e-300) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "cumulant_spectral: kappa_" << i << " eigenvalue route " << by_eigenvalues
        << " disagrees with contraction route " << by_contractions;
    throw ConsistencyFault(msg.str());
  }
  return by_eigenvalues;
}

SymmetricKernel target_kernel(const TargetSpec& spec, int d) {
  if (d < spec.k()) {
    throw std::invalid_argument("target_kernel: dim " + std::to_string(d) + " is smaller than k = " +
                                std::to_string(spec.k()));
  }
  Tensor t(2, d);
  for (int i = 0; i < spec.k(); ++i) {
    t[static_cast<std::size_t>(i) * d + i] = spec.alphas()[static_cast<std::size_t>(i)];
  }
  return SymmetricKernel::from_symmetric(std::move(t));
}

double gamma_identity_defect(const SymmetricKernel& f, int r) {
  require_order_two(f, "gamma_identity_defect");
  if (r < 1) throw std::invalid_argument("gamma_identity_defect: r must be >= 1");
  const auto lhs = ChaosExpansion::integral(iterated_contraction(f, r));
  const auto seq = gamma_sequence(ChaosExpansion::integral(f), r - 1);
  const auto rhs = std::pow(2.0, 1 - r) * seq.back().centered();
  return (lhs - rhs).l2_norm();
}

}  // namespace wchi
