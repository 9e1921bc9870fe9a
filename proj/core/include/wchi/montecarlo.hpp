#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wchi/chaos.hpp"
#include "wchi/spectral.hpp"

namespace wchi {

struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string generator_id;
};

/// n draws of sum_i alpha_i (N_i^2 - 1).
SampleBatch sample_target(const TargetSpec& spec, std::size_t n, std::uint64_t seed,
                          unsigned workers = 0);

/// n evaluations of F at iid standard normal vectors in R^dim.
SampleBatch sample_chaos(const ChaosExpansion& f, std::size_t n, std::uint64_t seed,
                         unsigned workers = 0);

struct CumulantEstimates {
  /// estimates[r-1] estimates kappa_r. r <= 4 are k-statistics (unbiased);
  /// r = 5, 6 are central-moment plug-ins and carry O(1/n) bias.
  std::vector<double> estimates;
  /// Standard deviation of the estimates over 10 contiguous sub-batches,
  /// divided by sqrt(10). NaN when a sub-batch is too small.
  std::vector<double> std_errors;
};

/// Throws std::invalid_argument unless values.size() > rmax and 1 <= rmax <= 6.
CumulantEstimates k_statistics(std::span<const double> values, int rmax);

/// sup_x |ECDF(x) - cdf(x)| over the sorted sample.
double kolmogorov_distance(std::span<const double> values, const std::function<double(double)>& cdf);

/// sup_x |ECDF_a(x) - ECDF_b(x)|.
double kolmogorov_distance(std::span<const double> a, std::span<const double> b);

/// Single-column CSV: `# seed=<s> generator_id=<id> n=<n>`, then `value`, then %.17g rows.
void write_batch_csv(std::ostream& os, const SampleBatch& batch);
SampleBatch read_batch_csv(std::istream& is);

/// Law of F_inf = sum_i alpha_i (N_i^2 - 1).
class TargetLaw {
 public:
  explicit TargetLaw(TargetSpec spec) : spec_(std::move(spec)) {}

  const TargetSpec& spec() const { return spec_; }

  /// prod_j (1 - 2 i alpha_j t)^{-1/2} exp(-i alpha_j t).
  std::complex<double> cf(double t) const;

  /// P(F_inf <= x) by Gil-Pelaez inversion, clamped to [0, 1]. Exactly 0 below
  /// the lower edge of the support (all alpha > 0) and exactly 1 above the
  /// upper edge (all alpha < 0). Throws NumericalError if the oscillatory tail
  /// fails to settle.
  double cdf(double x) const;

  /// Support edges; +-infinity when unbounded.
  double lower_edge() const;
  double upper_edge() const;

 private:
  TargetSpec spec_;
};

/// Piecewise-linear tabulation of a TargetLaw cdf, refined by bisection until
/// midpoints are reproduced to `tol`, then made monotone. Cheap to evaluate.
class TabulatedCdf {
 public:
  explicit TabulatedCdf(const TargetLaw& law, double tol = 1e-6);

  double operator()(double x) const;
  std::size_t size() const { return xs_.size(); }

 private:
  std::vector<double> xs_;
  std::vector<double> ps_;
};

/// TargetLaw(spec).cdf(x).
double target_cdf(const TargetSpec& spec, double x);

}  // namespace wchi
