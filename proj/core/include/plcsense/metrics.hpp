#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "plcsense/baselines.hpp"
#include "plcsense/tdr.hpp"

namespace plcsense::metrics {

/// Range resolution Delta_d = v_p / (4B).
double range_resolution(double v_p_mps, double bandwidth_hz);

/// Maximum unambiguous range (v_p T_s / 2) * min{L_rho, L_cp}; doubled for
/// transferograms.
double max_unambiguous_range(double v_p_mps, double sample_rate_hz,
                             std::size_t l_rho, std::size_t l_cp,
                             tdr::MeasurementKind kind);

struct RateReport {
  baselines::Scheme scheme;
  std::size_t n_plm = 1;
  double t_symb_s = 0.0;
  double n_rho = 0.0;   // reflectograms per modem per second
  double n_tau = 0.0;   // transferograms per modem per second
  double n_meas = 0.0;  // total per modem per second
};

/// Measurement rates per scheme: OCDM/FDMA run every symbol, TDMA/CDMA pay a
/// 1/n_plm multiplexing/spreading penalty.
RateReport measurement_rates(baselines::Scheme scheme, const tdr::SystemParams& params);

/// 10 log10(||truth||^2 / ||estimate - truth||^2); nullopt is the
/// +infinity sentinel for a (numerically) exact estimate. The truth span is
/// zero-extended to the estimate length.
std::optional<double> estimate_sinr(std::span<const double> estimate,
                                    std::span<const double> truth);

struct SidelobeReport {
  std::optional<double> pslr_db;  // nullopt: no sidelobe energy (-inf)
  std::optional<double> islr_db;
};

/// Peak and integrated sidelobe ratios; the main lobe is the single global
/// maximum sample.
SidelobeReport sidelobe_metrics(std::span<const double> window);

/// Fourier zero-stuffing upsampler; input samples are preserved at stride
/// `factor`.
std::vector<double> sinc_interpolate(std::span<const double> window, std::size_t factor);

}  // namespace plcsense::metrics
