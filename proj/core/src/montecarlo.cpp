#include "wchi/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "wchi/parallel.hpp"
#include "wchi/rng.hpp"

namespace wchi {
namespace {

constexpr std::uint32_t kTargetStream = 1;
constexpr std::uint32_t kChaosStream = 2;
constexpr int kSubBatches = 10;

std::vector<double> cumulant_estimates(std::span<const double> v, int rmax) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double m[7] = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  for (double x : v) {
    const double d = x - mean;
    double p = d;
    for (int j = 2; j <= rmax; ++j) {
      p *= d;
      m[j] += p;
    }
  }
  for (int j = 2; j <= rmax; ++j) m[j] /= n;

  std::vector<double> k(static_cast<std::size_t>(rmax));
  k[0] = mean;
  if (rmax >= 2) k[1] = n * m[2] / (n - 1);
  if (rmax >= 3) k[2] = n * n * m[3] / ((n - 1) * (n - 2));
  if (rmax >= 4) {
    k[3] = n * n * ((n + 1) * m[4] - 3 * (n - 1) * m[2] * m[2]) / ((n - 1) * (n - 2) * (n - 3));
  }
  if (rmax >= 5) k[4] = m[5] - 10 * m[3] * m[2];
  if (rmax >= 6) k[5] = m[6] - 15 * m[4] * m[2] - 10 * m[3] * m[3] + 30 * m[2] * m[2] * m[2];
  return k;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SampleBatch sample_target(const TargetSpec& spec, std::size_t n, std::uint64_t seed, unsigned workers) {
  if (n < 1) throw std::invalid_argument("sample_target: n must be >= 1");
  SampleBatch batch{std::vector<double>(n), seed, kGeneratorId};
  const auto& alphas = spec.alphas();
  parallel_for(
      n,
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> z(alphas.size());
        for (std::size_t i = begin; i < end; ++i) {
          standard_normals(seed, i, kTargetStream, z);
          double acc = 0.0;
          for (std::size_t j = 0; j < alphas.size(); ++j) acc += alphas[j] * (z[j] * z[j] - 1.0);
          batch.values[i] = acc;
        }
      },
      workers);
  return batch;
}

SampleBatch sample_chaos(const ChaosExpansion& f, std::size_t n, std::uint64_t seed, unsigned workers) {
  if (n < 1) throw std::invalid_argument("sample_chaos: n must be >= 1");
  SampleBatch batch{std::vector<double>(n), seed, kGeneratorId};
  const ChaosEvaluator eval(f);
  parallel_for(
      n,
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> z(static_cast<std::size_t>(eval.dim()));
        std::vector<double> scratch(static_cast<std::size_t>(eval.dim()) * (eval.max_order() + 1));
        for (std::size_t i = begin; i < end; ++i) {
          standard_normals(seed, i, kChaosStream, z);
          batch.values[i] = eval(z, scratch);
        }
      },
      workers);
  return batch;
}

CumulantEstimates k_statistics(std::span<const double> values, int rmax) {
  if (rmax < 1 || rmax > 6) throw std::invalid_argument("k_statistics: rmax must be in [1, 6]");
  const int need = std::max(rmax, 3) + 1;
  if (static_cast<int>(values.size()) < need) {
    throw std::invalid_argument("k_statistics: need at least " + std::to_string(need) +
                                " values for rmax = " + std::to_string(rmax) + ", got " +
                                std::to_string(values.size()));
  }
  CumulantEstimates out;
  out.estimates = cumulant_estimates(values, rmax);
  out.std_errors.assign(static_cast<std::size_t>(rmax), std::numeric_limits<double>::quiet_NaN());

  const std::size_t n = values.size();
  if (n / kSubBatches < static_cast<std::size_t>(need)) return out;
  std::vector<std::vector<double>> sub;
  for (int b = 0; b < kSubBatches; ++b) {
    const std::size_t begin = n * b / kSubBatches;
    const std::size_t end = n * (b + 1) / kSubBatches;
    sub.push_back(cumulant_estimates(values.subspan(begin, end - begin), rmax));
  }
  for (int r = 0; r < rmax; ++r) {
    double mean = 0.0;
    for (const auto& s : sub) mean += s[r];
    mean /= kSubBatches;
    double var = 0.0;
    for (const auto& s : sub) var += (s[r] - mean) * (s[r] - mean);
    var /= kSubBatches - 1;
    out.std_errors[r] = std::sqrt(var / kSubBatches);
  }
  return out;
}

double kolmogorov_distance(std::span<const double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw std::invalid_argument("kolmogorov_distance: empty sample");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - c, c - static_cast<double>(i) / n});
  }
  return d;
}

double kolmogorov_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("kolmogorov_distance: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

void write_batch_csv(std::ostream& os, const SampleBatch& batch) {
  os << "# seed=" << batch.seed << " generator_id=" << batch.generator_id
     << " n=" << batch.values.size() << "\n";
  os << "value\n";
  for (double v : batch.values) os << format_double(v) << "\n";
}

SampleBatch read_batch_csv(std::istream& is) {
  SampleBatch batch;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream fields(line.substr(1));
      std::string field;
      while (fields >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "seed") batch.seed = std::stoull(value);
        if (key == "generator_id") batch.generator_id = value;
      }
      continue;
    }
    if (!header) {
      if (line != "value") throw FormatError("batch csv: expected header 'value', got '" + line + "'");
      header = true;
      continue;
    }
    try {
      batch.values.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw FormatError("batch csv: bad value '" + line + "'");
    }
  }
  if (!header) throw FormatError("batch csv: missing header");
  return batch;
}

}  // namespace wchi
