#include <CLI11.hpp>

#include <iostream>

#include "wchi/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;

int run(const std::string& config, const std::string& out, std::optional<std::size_t> samples,
        std::optional<std::uint64_t> seed, bool no_mc, unsigned workers) {
  const wchi::Scenario scenario = wchi::load_scenario(config);
  wchi::RunOptions options;
  options.mc_samples = samples;
  options.seed = seed;
  options.mc = !no_mc;
  options.workers = workers;
  const auto result = wchi::run_scenario(scenario, options);
  wchi::write_outputs(result, out);
  std::cout << wchi::csv_text(result);
  std::cerr << "wrote " << (std::filesystem::path(out) / (scenario.id + ".csv")).string() << " and "
            << scenario.id << ".summary.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-chaos target criteria: exact statistics and Monte Carlo validation"};
  app.require_subcommand(1);

  std::string config, out;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  bool no_mc = false;
  unsigned workers = 0;
  auto* run_cmd = app.add_subcommand("run", "Evaluate a scenario and write <id>.csv and <id>.summary.json");
  run_cmd->add_option("config", config, "Config JSON path or built-in scenario id")->required();
  run_cmd->add_option("--out", out, "Output directory")->required();
  run_cmd->add_option("--mc-samples", samples, "Override mc.samples")->check(CLI::Range(100ul, 1ul << 40));
  run_cmd->add_option("--seed", seed, "Override mc.seed");
  run_cmd->add_flag("--no-mc", no_mc, "Skip Monte Carlo; ks is written as nan");
  run_cmd->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a config without running it");
  validate_cmd->add_option("config", validate_path, "Config JSON path or built-in id")->required();

  auto* list_cmd = app.add_subcommand("list-scenarios", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) return run(config, out, samples, seed, no_mc, workers);
    if (*validate_cmd) {
      wchi::load_scenario(validate_path);
      std::cout << "ok\n";
      return 0;
    }
    if (*list_cmd) {
      for (const auto& id : wchi::builtin_scenario_ids()) {
        const auto s = wchi::parse_scenario(wchi::builtin_scenario_config(id));
        std::cout << id << "\t" << s.description << "\n";
      }
      return 0;
    }
  } catch (const wchi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wchi::ScenarioAbort& e) {
    std::cerr << "guard abort: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
