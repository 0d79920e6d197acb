// Command-line front end: parses a JSON experiment config and dispatches the
// sweep / simulation / comparison subcommands. Exit codes: 0 success,
// 1 validation error, 2 runtime error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plcsense/config.hpp"
#include "plcsense/experiments.hpp"
#include "plcsense/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"OCDM/TDR power line sensing simulator"};
  app.set_version_flag("--version", std::string("plcsense ") + plcsense::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t trials = 0;
  bool trials_set = false;
  bool quiet = false;

  const std::vector<std::string> subcommands = {
      "resolution-sweep", "range-sweep", "rates", "simulate", "compare-sinr"};
  const std::vector<std::string> descriptions = {
      "Range resolution vs bandwidth per velocity preset",
      "Maximum unambiguous range vs modem count per CP length",
      "Reflectogram/transferogram rates per scheme",
      "Run campaigns and emit measurement trace CSVs",
      "Monte-Carlo per-modem SINR comparison across schemes"};

  for (std::size_t i = 0; i < subcommands.size(); ++i) {
    auto* sub = app.add_subcommand(subcommands[i], descriptions[i]);
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides config)");
    sub->add_option("--seed", seed, "Seed override")->each([&](const std::string&) {
      seed_set = true;
    });
    sub->add_option("--trials", trials, "Monte-Carlo trials override")
        ->each([&](const std::string&) { trials_set = true; });
    sub->add_flag("--quiet", quiet, "Suppress warnings");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = plcsense::config::parse_config(config_path);
    if (seed_set) cfg.seed = seed;
    if (trials_set) cfg.trials = trials;
    plcsense::experiments::RunOptions options;
    options.out_dir = out_dir;
    options.quiet = quiet;
    return plcsense::experiments::run_subcommand(app.get_subcommands().front()->get_name(),
                                                 cfg, options);
  } catch (const plcsense::config::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}
