#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wchi/montecarlo.hpp"

namespace wchi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxIntervals = 20000;
constexpr double kSettle = 1e-10;

// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon(const std::vector<double>& s) {
  const std::size_t m = std::min<std::size_t>(s.size(), 25);
  std::vector<double> prev(m + 1, 0.0);  // column k-1
  std::vector<double> cur(s.end() - static_cast<std::ptrdiff_t>(m), s.end());  // column k
  double best = cur.back();
  for (std::size_t k = 0; cur.size() > 1; ++k) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const double diff = cur[j + 1] - cur[j];
      if (diff == 0.0) return best;
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 1) {
      if (!std::isfinite(cur.back())) return best;
      best = cur.back();
    }
  }
  return best;
}

}  // namespace

std::complex<double> TargetLaw::cf(double t) const {
  std::complex<double> log_cf = 0.0;
  for (double a : spec_.alphas()) {
    log_cf += -0.5 * std::log(std::complex<double>(1.0, -2.0 * a * t)) - std::complex<double>(0.0, a * t);
  }
  return std::exp(log_cf);
}

double TargetLaw::lower_edge() const {
  const auto& al = spec_.alphas();
  if (std::all_of(al.begin(), al.end(), [](double a) { return a > 0; })) {
    double s = 0.0;
    for (double a : al) s += a;
    return -s;
  }
  return -kInf;
}

double TargetLaw::upper_edge() const {
  const auto& al = spec_.alphas();
  if (std::all_of(al.begin(), al.end(), [](double a) { return a < 0; })) {
    double s = 0.0;
    for (double a : al) s += a;
    return -s;
  }
  return kInf;
}

double TargetLaw::cdf(double x) const {
  if (x <= lower_edge()) return 0.0;
  if (x >= upper_edge()) return 1.0;

  const auto& al = spec_.alphas();
  double sum = 0.0, amax = 0.0;
  for (double a : al) {
    sum += a;
    amax = std::max(amax, std::abs(a));
  }
  // e^{-itx} cf(t) = exp(i theta(t)) / rho(t).
  auto integrand = [&](double t) {
    double theta = -t * x;
    double log_rho = 0.0;
    for (double a : al) {
      theta += 0.5 * std::atan(2.0 * a * t) - a * t;
      log_rho += 0.25 * std::log1p(4.0 * a * a * t * t);
    }
    return std::sin(theta) * std::exp(-log_rho) / t;
  };

  // Steps grow geometrically from the arctan scale until they reach the
  // asymptotic half-period pi/|x + sum alpha|; from then on consecutive pieces
  // alternate in sign and the partial sums are extrapolated.
  const double slope = std::abs(x + sum);
  const double half_period = slope > 0.0 ? std::numbers::pi / slope : kInf;
  double step = std::min(0.25 / amax, half_period);
  bool periodic = step == half_period;

  double t = 0.0, total = 0.0;
  std::vector<double> partial;
  double last = std::numeric_limits<double>::quiet_NaN();
  int settled = 0;
  for (int i = 0; i < kMaxIntervals; ++i) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, t, t + step, 12,
                                                                            1e-12, &err);
    t += step;
    partial.push_back(total);
    if (!periodic) {
      step *= 2.0;
      if (step >= half_period) {
        step = half_period;
        periodic = true;
        partial.clear();
        last = std::numeric_limits<double>::quiet_NaN();
        settled = 0;
        continue;
      }
      // Without a half-period the tail never oscillates; geometric extrapolation applies.
      if (half_period != kInf) continue;
    }
    if (partial.size() < 4) continue;
    const double est = wynn_epsilon(partial);
    settled = std::abs(est - last) < kSettle ? settled + 1 : 0;
    last = est;
    if (settled >= 2) return std::clamp(0.5 - est / std::numbers::pi, 0.0, 1.0);
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "target_cdf: inversion integral did not settle at x = " << x << " after " << kMaxIntervals
      << " intervals (t = " << t << ", last estimate " << last << ")";
  throw NumericalError(msg.str());
}

TabulatedCdf::TabulatedCdf(const TargetLaw& law, double tol) {
  const double sd = std::sqrt(law.spec().cumulant(2));
  const double lo = std::max(law.lower_edge(), -40.0 * sd);
  const double hi = std::min(law.upper_edge(), 40.0 * sd);
  const double min_width = 1e-12 * (hi - lo);

  auto refine = [&](auto&& self, double a, double pa, double b, double pb) -> void {
    const double m = 0.5 * (a + b);
    const double pm = law.cdf(m);
    if (std::abs(pm - 0.5 * (pa + pb)) > tol && b - a > min_width) {
      self(self, a, pa, m, pm);
      self(self, m, pm, b, pb);
      return;
    }
    xs_.push_back(m);
    ps_.push_back(pm);
    xs_.push_back(b);
    ps_.push_back(pb);
  };

  constexpr int kInitial = 128;
  double a = lo;
  double pa = law.cdf(lo);
  xs_.push_back(a);
  ps_.push_back(pa);
  for (int i = 1; i <= kInitial; ++i) {
    const double b = lo + (hi - lo) * i / kInitial;
    const double pb = law.cdf(b);
    refine(refine, a, pa, b, pb);
    a = b;
    pa = pb;
  }
  double running = 0.0;
  for (double& p : ps_) {
    running = std::clamp(std::max(running, p), 0.0, 1.0);
    p = running;
  }
}

double TabulatedCdf::operator()(double x) const {
  if (x < xs_.front()) return 0.0;
  if (x >= xs_.back()) return 1.0;
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - xs_.begin());
  const double w = (x - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
  return ps_[j - 1] + w * (ps_[j] - ps_[j - 1]);
}

double target_cdf(const TargetSpec& spec, double x) { return TargetLaw(spec).cdf(x); }

}  // namespace wchi
