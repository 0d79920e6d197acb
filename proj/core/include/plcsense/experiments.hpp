#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "plcsense/baselines.hpp"
#include "plcsense/config.hpp"

namespace plcsense::experiments {

struct RunOptions {
  std::filesystem::path out_dir;
  bool quiet = false;
};

/// Dispatches a CLI subcommand: resolution-sweep, range-sweep, rates,
/// simulate, compare-sinr. Returns 0 on success; throws ConfigError for
/// validation problems and std::runtime_error for runtime failures.
int run_subcommand(const std::string& name, const config::ExperimentConfig& cfg,
                   const RunOptions& options);

struct SinrRow {
  baselines::Scheme scheme;
  std::size_t modem = 0;
  std::size_t trials = 0;
  double mean_db = 0.0;
  double ci95_lo_db = 0.0;
  double ci95_hi_db = 0.0;
};

/// Per-trial reflectogram SINR samples for one scheme: result[modem][trial]
/// in dB. Each trial runs a fresh seeded campaign at symbol 0 (one TDMA
/// round / one CDMA block), so FDMA modem u is evaluated on comb u.
std::vector<std::vector<double>> sinr_trials(baselines::Scheme scheme,
                                             const config::ExperimentConfig& cfg);

/// Monte-Carlo SINR comparison across the configured schemes.
std::vector<SinrRow> compare_sinr(const config::ExperimentConfig& cfg);

/// Ground-truth reflectogram for SINR scoring, as seen through the scheme's
/// estimation pipeline (FDMA is limited to modem u's symbol-0 comb).
std::vector<double> scheme_truth(baselines::Scheme scheme,
                                 const tdr::SystemParams& params,
                                 const chanmodel::SensingScenario& scenario,
                                 std::size_t modem);

/// Runs the configured scheme campaigns and writes one trace CSV per
/// (observer, injector) pair. Returns the written file paths.
std::vector<std::filesystem::path> simulate(const config::ExperimentConfig& cfg,
                                            const std::filesystem::path& out_dir,
                                            bool quiet = true);

}  // namespace plcsense::experiments
