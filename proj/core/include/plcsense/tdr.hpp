#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plcsense/chanmodel.hpp"
#include "plcsense/fresnel.hpp"

namespace plcsense::tdr {

/// Table-style system parametrization. Defaults: 0-500 kHz band, Fs = 2B,
/// 256-sample OCDM symbol, standard 30-sample cyclic prefix.
struct SystemParams {
  double bandwidth_hz = 500e3;
  double sample_rate_hz = 1e6;
  std::size_t frame_size = 256;  // 2N
  std::size_t cp_length = 30;
  std::size_t n_plm = 1;
  double tx_psd_dbm_hz = -40.0;
  /// Pilot spacing override for the single-modem multi-pilot frame. Only
  /// meaningful with n_plm = 1; defaults to frame_size (one pilot, one
  /// full-length window).
  std::optional<std::size_t> window_length;

  std::size_t window() const {
    return window_length.value_or(frame_size / n_plm);
  }
  std::size_t windows_per_symbol() const { return frame_size / window(); }
  double symbol_duration_s() const {
    return static_cast<double>(frame_size + cp_length) / sample_rate_hz;
  }
  /// Mean-square transmit power target: PSD_linear * Fs on the normalized
  /// 1-ohm reference.
  double tx_power_w() const {
    return chanmodel::dbm_to_watts(tx_psd_dbm_hz) * sample_rate_hz;
  }

  void validate() const;  // throws std::invalid_argument
};

enum class MeasurementKind { reflectogram, transferogram };

/// One L_rho-length measurement window, raw (pilot scale included).
struct Measurement {
  std::vector<double> window;
  std::size_t observer = 0;
  std::size_t injector = 0;
  MeasurementKind kind = MeasurementKind::reflectogram;
  std::size_t symbol_index = 0;
  double pilot_scale = 1.0;

  /// Window normalized by the pilot amplitude: a direct channel estimate.
  std::vector<double> estimate() const;
};

/// Pilot amplitude that meets the transmit PSD target given the number of
/// pilots in the frame.
double pilot_amplitude(const SystemParams& params);

/// Fresnel-domain pilot frame for modem u: a single pilot at k = u * L_rho
/// for n_plm > 1, or pilots every L_rho samples for the single-modem case.
std::vector<double> make_pilot_frame(const SystemParams& params, std::size_t modem);

/// Inverse DFnT plus cyclic prefix.
std::vector<double> ocdm_modulate(const fresnel::FresnelBasis& basis,
                                  std::span<const double> xdot,
                                  std::size_t cp_length);

/// Cyclic prefix removal plus forward DFnT.
std::vector<double> ocdm_demodulate(const fresnel::FresnelBasis& basis,
                                    std::span<const double> received,
                                    std::size_t cp_length);

/// Splits a demodulated Fresnel-domain vector into tagged measurement windows.
std::vector<Measurement> extract_measurements(std::span<const double> ydot,
                                              const SystemParams& params,
                                              std::size_t observer,
                                              std::size_t symbol_index,
                                              double pilot_scale);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
};

/// Checks window interference (L_rho >= L_h_max), ISI (L_cp >= L_h_max - 1)
/// and channel coherence (T_symb <= T_c / 10). Failures are reported, never
/// thrown.
ValidationReport validate_configuration(const SystemParams& params,
                                        const chanmodel::SensingScenario& scenario);

/// Per-(observer, injector) average of the normalized measurement windows.
struct AveragedEstimate {
  std::size_t observer = 0;
  std::size_t injector = 0;
  std::vector<double> window;
};

struct CampaignResult {
  std::vector<Measurement> measurements;
  std::vector<AveragedEstimate> averaged;
  /// Full-band reassembled reflectograms (FDMA hop cycles only).
  std::vector<Measurement> fullband;
};

/// Runs n_symbols OCDM symbols with all modems transmitting simultaneously.
/// Deterministic given the seed.
CampaignResult run_campaign(const SystemParams& params,
                            const chanmodel::SensingScenario& scenario,
                            const chanmodel::NoiseModel& noise,
                            std::size_t n_symbols,
                            std::uint64_t seed);

/// Averages normalized windows per (observer, injector) pair.
std::vector<AveragedEstimate> average_measurements(
    std::span<const Measurement> measurements, std::size_t n_plm,
    std::size_t window_length);

}  // namespace plcsense::tdr
