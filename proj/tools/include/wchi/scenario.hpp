#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wchi/criteria.hpp"
#include "wchi/montecarlo.hpp"

namespace wchi {

/// Schema or invariant violation in a scenario config. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A guard or numerical failure while evaluating member `n`. Maps to exit code 3.
class ScenarioAbort : public std::runtime_error {
 public:
  ScenarioAbort(int n, const std::string& what)
      : std::runtime_error("aborted at n = " + std::to_string(n) + ": " + what), n_(n) {}
  int n() const { return n_; }

 private:
  int n_;
};

/// Kernel families:
///   perturbed-target  {"shift": [c_1..c_k], "extra": [e_1..e_m]}
///                     f_n = diag(alpha_i + c_i/n, e_j/n)
///   flat-spectrum     {"variance": v}
///                     f_n = sqrt(v/(2n)) * identity on R^n
///   rotated-pair      {"angle": a, "weight": w}
///                     f_n = w u u^T - w e_2 e_2^T, u = (cos(a/n), sin(a/n))
///   files             {"paths": [...]}, one kernel or chaos document per index,
///                     relative to the config file
struct Scenario {
  std::string id;
  std::string description;
  TargetSpec target{{1.0}};
  std::string family;
  nlohmann::json params;
  std::vector<int> indices;
  std::size_t mc_samples = 100000;
  std::uint64_t mc_seed = 1;
  std::vector<std::string> outputs;
  std::filesystem::path base_dir;

  bool q_chaos() const;
};

/// Throws ConfigError naming the offending field.
Scenario parse_scenario(const nlohmann::json& config, const std::filesystem::path& base_dir = {});

/// A built-in id, or a path to a JSON config.
Scenario load_scenario(const std::string& path_or_id);

std::vector<std::string> builtin_scenario_ids();
/// Throws ConfigError for unknown ids.
nlohmann::json builtin_scenario_config(const std::string& id);

/// F_n for index n.
ChaosExpansion build_member(const Scenario& scenario, int n);

struct RunOptions {
  std::optional<std::size_t> mc_samples;
  std::optional<std::uint64_t> seed;
  bool mc = true;
  unsigned workers = 0;
};

struct ScenarioRow {
  int n = 0;
  CriterionReport report;
  /// NaN without Monte Carlo.
  double ks = 0.0;
  CumulantEstimates k_statistics;
};

struct ScenarioResult {
  Scenario scenario;
  std::size_t mc_samples = 0;
  std::uint64_t seed = 0;
  bool mc = true;
  std::vector<ScenarioRow> rows;
};

/// Rows come back in index order. Throws ScenarioAbort on guard or numerical failure.
ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

std::vector<std::string> csv_columns(const ScenarioResult& result);
std::string csv_text(const ScenarioResult& result);
nlohmann::json summary_json(const ScenarioResult& result);

/// Writes <dir>/<id>.csv and <dir>/<id>.summary.json.
void write_outputs(const ScenarioResult& result, const std::filesystem::path& dir);

}  // namespace wchi
