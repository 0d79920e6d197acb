#include "plcsense/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "plcsense/fft.hpp"
#include "plcsense/metrics.hpp"
#include "plcsense/version.hpp"

namespace plcsense::experiments {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const config::ExperimentConfig& cfg,
            const std::string& header) {
    std::filesystem::create_directories(path.parent_path());
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config::config_hash(cfg.canonical_json)));
    out_ << "# plcsense " << kVersion << "\n";
    out_ << "# config-hash: " << hash << "\n";
    out_ << "# seed: " << cfg.seed << "\n";
    out_ << header << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

std::filesystem::path out_path(const RunOptions& options,
                               const config::ExperimentConfig& cfg,
                               const std::string& file) {
  const auto dir = options.out_dir.empty() ? std::filesystem::path(cfg.output_dir)
                                           : options.out_dir;
  return dir / file;
}

int resolution_sweep(const config::ExperimentConfig& cfg, const RunOptions& options) {
  CsvWriter csv(out_path(options, cfg, "resolution_sweep.csv"), cfg,
                "velocity,v_p_mps,bandwidth_hz,delta_d_m");
  for (const auto& v : cfg.sweep.velocities) {
    for (double b : cfg.sweep.bandwidths_hz) {
      csv.row({v.name, fmt(v.v_p_mps), fmt(b), fmt(metrics::range_resolution(v.v_p_mps, b))});
    }
  }
  return 0;
}

int range_sweep(const config::ExperimentConfig& cfg, const RunOptions& options) {
  CsvWriter csv(out_path(options, cfg, "range_sweep.csv"), cfg,
                "velocity,v_p_mps,cp_length,n_plm,l_rho,kind,d_max_m");
  for (const auto& v : cfg.sweep.velocities) {
    for (std::size_t cp : cfg.sweep.cp_lengths) {
      for (std::size_t n : cfg.sweep.n_plms) {
        if (n == 0 || cfg.system.frame_size % n != 0) continue;
        const std::size_t l_rho = cfg.system.frame_size / n;
        for (auto kind : {tdr::MeasurementKind::reflectogram,
                          tdr::MeasurementKind::transferogram}) {
          csv.row({v.name, fmt(v.v_p_mps), std::to_string(cp), std::to_string(n),
                   std::to_string(l_rho),
                   kind == tdr::MeasurementKind::reflectogram ? "reflectogram"
                                                              : "transferogram",
                   fmt(metrics::max_unambiguous_range(v.v_p_mps, cfg.system.sample_rate_hz,
                                                      l_rho, cp, kind))});
        }
      }
    }
  }
  return 0;
}

int rates(const config::ExperimentConfig& cfg, const RunOptions& options) {
  CsvWriter csv(out_path(options, cfg, "rates.csv"), cfg,
                "scheme,n_plm,cp_length,t_symb_s,n_rho,n_tau,n_meas");
  for (auto scheme : cfg.schemes) {
    for (std::size_t cp : cfg.sweep.cp_lengths) {
      for (std::size_t n : cfg.sweep.n_plms) {
        if (n == 0 || cfg.system.frame_size % n != 0) continue;
        tdr::SystemParams p = cfg.system;
        p.cp_length = cp;
        p.n_plm = n;
        p.window_length.reset();
        const auto r = metrics::measurement_rates(scheme, p);
        csv.row({baselines::scheme_name(scheme), std::to_string(n), std::to_string(cp),
                 fmt(r.t_symb_s), fmt(r.n_rho), fmt(r.n_tau), fmt(r.n_meas)});
      }
    }
  }
  return 0;
}

}  // namespace

std::vector<double> scheme_truth(baselines::Scheme scheme,
                                 const tdr::SystemParams& params,
                                 const chanmodel::SensingScenario& scenario,
                                 std::size_t modem) {
  const std::size_t l_rho = params.window();
  const auto& h = scenario.at(modem, modem).h;
  std::vector<double> truth(l_rho, 0.0);
  if (scheme != baselines::Scheme::fdma) {
    for (std::size_t k = 0; k < h.size() && k < l_rho; ++k) truth[k] = h[k];
    return truth;
  }
  // FDMA estimates only modem u's comb bins; score against the
  // comb-limited image of the true channel.
  std::vector<double> padded(params.frame_size, 0.0);
  for (std::size_t k = 0; k < h.size() && k < padded.size(); ++k) padded[k] = h[k];
  auto spec = fft::forward(padded);
  std::vector<std::complex<double>> limited(spec.size(), 0.0);
  for (std::size_t k : baselines::allocate_fdma(params, modem, 0)) {
    limited[k] = spec[k];
    limited[spec.size() - k] = spec[spec.size() - k];
  }
  auto t = fft::inverse(limited);
  for (std::size_t k = 0; k < l_rho; ++k) truth[k] = t[k].real();
  return truth;
}

std::vector<std::vector<double>> sinr_trials(baselines::Scheme scheme,
                                             const config::ExperimentConfig& cfg) {
  const auto& params = cfg.system;
  const auto scenario = cfg.scenario.build(params);
  const std::size_t n = params.n_plm;
  const std::size_t symbols_per_trial =
      (scheme == baselines::Scheme::tdma || scheme == baselines::Scheme::cdma) ? n : 1;

  std::vector<std::vector<double>> truth(n);
  for (std::size_t u = 0; u < n; ++u) truth[u] = scheme_truth(scheme, params, scenario, u);

  std::vector<std::vector<double>> out(n);
  const std::uint64_t scheme_salt = static_cast<std::uint64_t>(scheme) + 1;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const auto seed = chanmodel::mix_seed(cfg.seed, scheme_salt * 0x10000000ULL + t);
    const auto result = baselines::run_campaign_baseline(scheme, params, scenario,
                                                         cfg.noise, symbols_per_trial, seed);
    for (const auto& m : result.measurements) {
      if (m.kind != tdr::MeasurementKind::reflectogram) continue;
      if (scheme == baselines::Scheme::fdma && m.symbol_index != 0) continue;
      const auto sinr = metrics::estimate_sinr(m.estimate(), truth[m.observer]);
      if (sinr) out[m.observer].push_back(*sinr);
    }
  }
  return out;
}

std::vector<SinrRow> compare_sinr(const config::ExperimentConfig& cfg) {
  std::vector<SinrRow> rows;
  for (auto scheme : cfg.schemes) {
    const auto samples = sinr_trials(scheme, cfg);
    for (std::size_t u = 0; u < samples.size(); ++u) {
      const auto& s = samples[u];
      SinrRow row;
      row.scheme = scheme;
      row.modem = u;
      row.trials = s.size();
      if (s.empty()) {
        rows.push_back(row);
        continue;
      }
      double mean = 0.0;
      for (double v : s) mean += v;
      mean /= static_cast<double>(s.size());
      double var = 0.0;
      for (double v : s) var += (v - mean) * (v - mean);
      var = s.size() > 1 ? var / static_cast<double>(s.size() - 1) : 0.0;
      const double half = 1.96 * std::sqrt(var / static_cast<double>(s.size()));
      row.mean_db = mean;
      row.ci95_lo_db = mean - half;
      row.ci95_hi_db = mean + half;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<std::filesystem::path> simulate(const config::ExperimentConfig& cfg,
                                            const std::filesystem::path& out_dir,
                                            bool quiet) {
  const auto& params = cfg.system;
  const auto scenario = cfg.scenario.build(params);
  const auto report = tdr::validate_configuration(params, scenario);
  if (!quiet) {
    for (const auto& c : report.checks) {
      if (!c.pass) std::cerr << "warning: " << c.name << " check failed (" << c.detail << ")\n";
    }
  }
  std::vector<std::filesystem::path> written;
  for (auto scheme : cfg.schemes) {
    const auto result = baselines::run_campaign_baseline(scheme, params, scenario, cfg.noise,
                                                         cfg.n_symbols, cfg.seed);
    // One trace per (observer, injector) pair, flat rows.
    for (std::size_t i = 0; i < params.n_plm; ++i) {
      for (std::size_t j = 0; j < params.n_plm; ++j) {
        char name[96];
        std::snprintf(name, sizeof(name), "trace_%s_obs%zu_inj%zu.csv",
                      baselines::scheme_name(scheme), i, j);
        const auto path = out_dir / name;
        CsvWriter csv(path, cfg, "symbol_index,sample_index,amplitude");
        for (const auto& m : result.measurements) {
          if (m.observer != i || m.injector != j) continue;
          const auto est = m.estimate();
          for (std::size_t k = 0; k < est.size(); ++k) {
            csv.row({std::to_string(m.symbol_index), std::to_string(k), fmt(est[k])});
          }
        }
        written.push_back(path);
      }
    }
  }
  return written;
}

int run_subcommand(const std::string& name, const config::ExperimentConfig& cfg,
                   const RunOptions& options) {
  if (name == "resolution-sweep") return resolution_sweep(cfg, options);
  if (name == "range-sweep") return range_sweep(cfg, options);
  if (name == "rates") return rates(cfg, options);
  if (name == "simulate") {
    const auto dir = options.out_dir.empty() ? std::filesystem::path(cfg.output_dir)
                                             : options.out_dir;
    std::filesystem::create_directories(dir);
    simulate(cfg, dir, options.quiet);
    return 0;
  }
  if (name == "compare-sinr") {
    CsvWriter csv(out_path(options, cfg, "compare_sinr.csv"), cfg,
                  "scheme,modem,trials,mean_sinr_db,ci95_lo_db,ci95_hi_db");
    for (const auto& row : compare_sinr(cfg)) {
      csv.row({baselines::scheme_name(row.scheme), std::to_string(row.modem),
               std::to_string(row.trials), fmt(row.mean_db), fmt(row.ci95_lo_db),
               fmt(row.ci95_hi_db)});
    }
    return 0;
  }
  throw config::ConfigError("unknown subcommand '" + name + "'");
}

}  // namespace plcsense::experiments
