#include "wchi/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "wchi/io.hpp"
#include "wchi/parallel.hpp"
#include "wchi/rng.hpp"

namespace wchi {
namespace {

using nlohmann::json;

const std::set<std::string> kOutputs = {"kappa_gaps", "gamma_stat", "ks", "k_statistics", "q_chaos"};
const std::set<std::string> kFamilies = {"perturbed-target", "flat-spectrum", "rotated-pair", "files"};

constexpr const char* kMetricLabel = "kolmogorov distance (empirical proxy for total variation)";

const std::map<std::string, const char*>& builtins() {
  static const std::map<std::string, const char*> table = {
      {"second-chaos-converging", R"({
  "id": "second-chaos-converging",
  "description": "diag(1 + 1/n, 2 - 1/n, 1/n) converging to the (1, 2) target",
  "target": {"alphas": [1, 2]},
  "sequence": {"family": "perturbed-target",
               "params": {"shift": [1, -1], "extra": [1]},
               "indices": [2, 4, 8, 16, 32, 64, 128, 256]},
  "mc": {"samples": 100000, "seed": 20240601},
  "outputs": ["kappa_gaps", "gamma_stat", "ks", "k_statistics"]
})"},
      {"gaussian-counterexample", R"({
  "id": "gaussian-counterexample",
  "description": "n equal eigenvalues 1/sqrt(2n): unit variance, Gaussian limit, (1, 2) target",
  "target": {"alphas": [1, 2]},
  "sequence": {"family": "flat-spectrum",
               "params": {"variance": 1},
               "indices": [2, 4, 8, 16, 32, 64, 128, 256]},
  "mc": {"samples": 100000, "seed": 20240602},
  "outputs": ["kappa_gaps", "gamma_stat", "ks", "k_statistics"]
})"},
      {"two-eigenvalue-q2-example", R"({
  "id": "two-eigenvalue-q2-example",
  "description": "(G_n^2 - H_n^2)/2 with Cov(G_n, H_n) = sin(a/n) -> 0, target N1 N2",
  "target": {"alphas": [0.5, -0.5]},
  "sequence": {"family": "rotated-pair",
               "params": {"angle": 0.7853981633974483, "weight": 0.5},
               "indices": [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]},
  "mc": {"samples": 100000, "seed": 20240603},
  "outputs": ["kappa_gaps", "gamma_stat", "ks", "k_statistics", "q_chaos"]
})"},
      {"gamma-nu1", R"({
  "id": "gamma-nu1",
  "description": "diag(1, 1/n) converging to a centered chi-square with one degree of freedom",
  "target": {"alphas": [1]},
  "sequence": {"family": "perturbed-target",
               "params": {"shift": [0], "extra": [1]},
               "indices": [2, 4, 8, 16, 32, 64, 128, 256]},
  "mc": {"samples": 100000, "seed": 20240604},
  "outputs": ["kappa_gaps", "gamma_stat", "ks", "k_statistics"]
})"},
  };
  return table;
}

const json& require(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw ConfigError(where + (where.empty() ? "" : ".") + name + ": missing");
  return *it;
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(where + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

double number(const json& params, const char* name, const std::string& where) {
  const json& v = require(params, name, where);
  if (!v.is_number() || !std::isfinite(v.get<double>())) {
    throw ConfigError(where + "." + name + ": expected a finite number");
  }
  return v.get<double>();
}

void check_family_params(const Scenario& s) {
  const std::string where = "sequence.params";
  const json& p = s.params;
  if (!p.is_object()) throw ConfigError(where + ": expected an object");
  if (s.family == "perturbed-target") {
    const auto shift = numbers(require(p, "shift", where), where + ".shift");
    if (static_cast<int>(shift.size()) != s.target.k()) {
      throw ConfigError(where + ".shift: expected " + std::to_string(s.target.k()) +
                        " entries (one per target weight), got " + std::to_string(shift.size()));
    }
    if (p.contains("extra")) numbers(p["extra"], where + ".extra");
  } else if (s.family == "flat-spectrum") {
    if (number(p, "variance", where) <= 0.0) throw ConfigError(where + ".variance: must be positive");
  } else if (s.family == "rotated-pair") {
    number(p, "angle", where);
    if (number(p, "weight", where) == 0.0) throw ConfigError(where + ".weight: must be nonzero");
  } else if (s.family == "files") {
    const json& paths = require(p, "paths", where);
    if (!paths.is_array() || paths.size() != s.indices.size()) {
      throw ConfigError(where + ".paths: expected one path per index (" +
                        std::to_string(s.indices.size()) + ")");
    }
    for (std::size_t i = 0; i < paths.size(); ++i) {
      if (!paths[i].is_string()) {
        throw ConfigError(where + ".paths[" + std::to_string(i) + "]: expected a string");
      }
    }
  }
}

SymmetricKernel diagonal(const std::vector<double>& d) {
  const int dim = static_cast<int>(d.size());
  checked_size(2, dim);
  Tensor t(2, dim);
  for (int i = 0; i < dim; ++i) t[static_cast<std::size_t>(i) * dim + i] = d[static_cast<std::size_t>(i)];
  return SymmetricKernel::from_symmetric(std::move(t));
}

json read_json_file(const std::filesystem::path& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(what + ": cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

bool Scenario::q_chaos() const {
  return std::find(outputs.begin(), outputs.end(), "q_chaos") != outputs.end();
}

Scenario parse_scenario(const json& config, const std::filesystem::path& base_dir) {
  if (!config.is_object()) throw ConfigError("config: expected a JSON object");
  Scenario s;
  s.base_dir = base_dir;

  const json& id = require(config, "id", "");
  if (!id.is_string() || id.get<std::string>().empty()) throw ConfigError("id: expected a nonempty string");
  s.id = id.get<std::string>();
  if (s.id.find_first_of("/\\") != std::string::npos) throw ConfigError("id: must not contain path separators");
  if (config.contains("description")) {
    if (!config["description"].is_string()) throw ConfigError("description: expected a string");
    s.description = config["description"].get<std::string>();
  }

  const json& target = require(config, "target", "");
  try {
    s.target = TargetSpec(numbers(require(target, "alphas", "target"), "target.alphas"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("target.") + e.what());
  }

  const json& seq = require(config, "sequence", "");
  const json& family = require(seq, "family", "sequence");
  if (!family.is_string() || !kFamilies.count(family.get<std::string>())) {
    throw ConfigError("sequence.family: expected one of perturbed-target, flat-spectrum, rotated-pair, files");
  }
  s.family = family.get<std::string>();
  s.params = seq.contains("params") ? seq["params"] : json::object();

  const json& indices = require(seq, "indices", "sequence");
  if (!indices.is_array() || indices.empty()) {
    throw ConfigError("sequence.indices: expected a nonempty array (Scenario invariant)");
  }
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const std::string where = "sequence.indices[" + std::to_string(i) + "]";
    if (!indices[i].is_number_integer() || indices[i].get<long long>() < 1 ||
        indices[i].get<long long>() > std::numeric_limits<int>::max()) {
      throw ConfigError(where + ": expected a positive integer");
    }
    const int n = indices[i].get<int>();
    if (!s.indices.empty() && n <= s.indices.back()) {
      throw ConfigError(where + " = " + std::to_string(n) +
                        ": indices must be strictly increasing (Scenario invariant)");
    }
    s.indices.push_back(n);
  }
  check_family_params(s);

  if (config.contains("mc")) {
    const json& mc = config["mc"];
    if (!mc.is_object()) throw ConfigError("mc: expected an object");
    if (mc.contains("samples")) {
      if (!mc["samples"].is_number_unsigned() || mc["samples"].get<std::uint64_t>() < 100) {
        throw ConfigError("mc.samples: expected an integer >= 100");
      }
      s.mc_samples = mc["samples"].get<std::size_t>();
    }
    if (mc.contains("seed")) {
      if (!mc["seed"].is_number_unsigned()) throw ConfigError("mc.seed: expected a non-negative integer");
      s.mc_seed = mc["seed"].get<std::uint64_t>();
    }
  }

  if (config.contains("outputs")) {
    const json& out = config["outputs"];
    if (!out.is_array()) throw ConfigError("outputs: expected an array of metric names");
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::string where = "outputs[" + std::to_string(i) + "]";
      if (!out[i].is_string() || !kOutputs.count(out[i].get<std::string>())) {
        throw ConfigError(where + ": expected one of kappa_gaps, gamma_stat, ks, k_statistics, q_chaos");
      }
      s.outputs.push_back(out[i].get<std::string>());
    }
  }
  if (s.q_chaos() && s.target.k() != 2) {
    throw ConfigError("outputs: q_chaos needs a target with exactly two weights");
  }
  return s;
}

std::vector<std::string> builtin_scenario_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, text] : builtins()) ids.push_back(id);
  return ids;
}

json builtin_scenario_config(const std::string& id) {
  auto it = builtins().find(id);
  if (it == builtins().end()) throw ConfigError("unknown scenario '" + id + "'");
  return json::parse(it->second);
}

Scenario load_scenario(const std::string& path_or_id) {
  if (builtins().count(path_or_id)) return parse_scenario(builtin_scenario_config(path_or_id));
  const std::filesystem::path path(path_or_id);
  return parse_scenario(read_json_file(path, "config"), path.parent_path());
}

ChaosExpansion build_member(const Scenario& s, int n) {
  const json& p = s.params;
  const double inv = 1.0 / n;
  if (s.family == "perturbed-target") {
    std::vector<double> diag;
    const auto shift = p["shift"].get<std::vector<double>>();
    for (int i = 0; i < s.target.k(); ++i) diag.push_back(s.target.alphas()[i] + shift[i] * inv);
    if (p.contains("extra")) {
      for (double e : p["extra"].get<std::vector<double>>()) diag.push_back(e * inv);
    }
    return ChaosExpansion::integral(diagonal(diag));
  }
  if (s.family == "flat-spectrum") {
    const double a = std::sqrt(p["variance"].get<double>() / (2.0 * n));
    return ChaosExpansion::integral(diagonal(std::vector<double>(static_cast<std::size_t>(n), a)));
  }
  if (s.family == "rotated-pair") {
    const double theta = p["angle"].get<double>() * inv;
    const double w = p["weight"].get<double>();
    const double u[2] = {std::cos(theta), std::sin(theta)};
    const double e2[2] = {0.0, 1.0};
    return ChaosExpansion::integral(w * SymmetricKernel::power(u, 2) - w * SymmetricKernel::power(e2, 2));
  }
  // files
  const auto it = std::find(s.indices.begin(), s.indices.end(), n);
  if (it == s.indices.end()) throw ConfigError("sequence: index " + std::to_string(n) + " not listed");
  const auto i = static_cast<std::size_t>(it - s.indices.begin());
  const std::string where = "sequence.params.paths[" + std::to_string(i) + "]";
  const json doc = read_json_file(s.base_dir / p["paths"][i].get<std::string>(), where);
  try {
    if (doc.contains("kernels")) return chaos_from_json(doc);
    return ChaosExpansion::integral(kernel_from_json(doc));
  } catch (const FormatError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ScenarioResult run_scenario(const Scenario& s, const RunOptions& options) {
  ScenarioResult result;
  result.scenario = s;
  result.mc = options.mc;
  result.mc_samples = options.mc_samples.value_or(s.mc_samples);
  result.seed = options.seed.value_or(s.mc_seed);
  result.rows.resize(s.indices.size());

  std::optional<TabulatedCdf> cdf;
  if (options.mc) {
    try {
      cdf.emplace(TargetLaw(s.target));
    } catch (const NumericalError& e) {
      throw ScenarioAbort(s.indices.front(), e.what());
    }
  }

  CriterionOptions crit;
  crit.q_chaos = s.q_chaos();
  parallel_for(
      s.indices.size(),
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          const int n = s.indices[i];
          ScenarioRow& row = result.rows[i];
          row.n = n;
          try {
            const ChaosExpansion f = build_member(s, n);
            row.report = criterion_statistic(f, s.target, crit);
            row.ks = std::numeric_limits<double>::quiet_NaN();
            if (options.mc) {
              const SampleBatch batch = sample_chaos(f, result.mc_samples, result.seed, 1);
              row.ks = kolmogorov_distance(batch.values, [&](double x) { return (*cdf)(x); });
              row.k_statistics = k_statistics(batch.values, 4);
            }
          } catch (const ResourceGuardError& e) {
            throw ScenarioAbort(n, e.what());
          } catch (const NumericalError& e) {
            throw ScenarioAbort(n, e.what());
          }
        }
      },
      options.workers);
  return result;
}

std::vector<std::string> csv_columns(const ScenarioResult& result) {
  std::vector<std::string> cols{"n"};
  for (int r = 2; r <= result.scenario.target.k() + 1; ++r) cols.push_back("kappa_gap_" + std::to_string(r));
  cols.push_back("gamma_stat");
  cols.push_back("ks");
  if (result.scenario.q_chaos() && !result.rows.empty()) {
    for (const auto& [key, value] : result.rows.front().report.contraction_norms) cols.push_back(key);
  }
  return cols;
}

std::string csv_text(const ScenarioResult& result) {
  const auto cols = csv_columns(result);
  std::ostringstream os;
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << "\n";
  const std::size_t fixed = static_cast<std::size_t>(result.scenario.target.k()) + 3;
  for (const auto& row : result.rows) {
    os << row.n;
    for (const auto& g : row.report.cumulant_gaps) os << "," << fmt(g.gap);
    os << "," << fmt(row.report.gamma_stat) << "," << fmt(row.ks);
    for (std::size_t c = fixed; c < cols.size(); ++c) {
      auto it = row.report.contraction_norms.find(cols[c]);
      os << "," << fmt(it == row.report.contraction_norms.end() ? std::nan("") : it->second);
    }
    os << "\n";
  }
  return os.str();
}

json summary_json(const ScenarioResult& result) {
  const Scenario& s = result.scenario;
  json rows = json::array();
  json decreasing = json::array();
  json ks_decreasing = json::array();
  json ratios = json::array();
  bool strictly = true;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    json r = {{"n", row.n}, {"criterion", to_json(row.report)}, {"ks", finite_or_null(row.ks)}};
    if (result.mc) {
      json est = json::array(), se = json::array();
      for (double v : row.k_statistics.estimates) est.push_back(finite_or_null(v));
      for (double v : row.k_statistics.std_errors) se.push_back(finite_or_null(v));
      r["k_statistics"] = {{"estimates", est}, {"std_errors", se}};
    }
    rows.push_back(r);
    if (i > 0) {
      const auto& prev = result.rows[i - 1];
      const bool dec = row.report.gamma_stat < prev.report.gamma_stat;
      strictly = strictly && dec;
      decreasing.push_back(dec);
      ratios.push_back(finite_or_null(row.report.gamma_stat / prev.report.gamma_stat));
      if (result.mc) ks_decreasing.push_back(row.ks < prev.ks);
    }
  }
  return {{"id", s.id},
          {"description", s.description},
          {"target", to_json(s.target)},
          {"family", s.family},
          {"params", s.params},
          {"indices", s.indices},
          {"columns", csv_columns(result)},
          {"gamma_stat_label", kGammaStatLabel},
          {"metric", kMetricLabel},
          {"mc", result.mc ? json{{"samples", result.mc_samples},
                                  {"seed", result.seed},
                                  {"generator_id", kGeneratorId}}
                           : json(nullptr)},
          {"monotonicity",
           {{"gamma_stat_decreasing", decreasing},
            {"gamma_stat_strictly_decreasing", strictly},
            {"gamma_stat_ratios", ratios},
            {"ks_decreasing", result.mc ? ks_decreasing : json(nullptr)}}},
          {"rows", rows}};
}

void write_outputs(const ScenarioResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto base = dir / result.scenario.id;
  {
    std::ofstream csv(base.string() + ".csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + base.string() + ".csv");
    csv << csv_text(result);
  }
  std::ofstream js(base.string() + ".summary.json", std::ios::binary);
  if (!js) throw std::runtime_error("cannot write " + base.string() + ".summary.json");
  js << summary_json(result).dump(2) << "\n";
}

}  // namespace wchi
