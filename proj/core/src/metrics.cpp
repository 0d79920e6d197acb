#include "plcsense/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plcsense/fft.hpp"

namespace plcsense::metrics {

double range_resolution(double v_p_mps, double bandwidth_hz) {
  if (v_p_mps <= 0.0 || bandwidth_hz <= 0.0)
    throw std::invalid_argument("metrics: inputs must be positive");
  return v_p_mps / (4.0 * bandwidth_hz);
}

double max_unambiguous_range(double v_p_mps, double sample_rate_hz,
                             std::size_t l_rho, std::size_t l_cp,
                             tdr::MeasurementKind kind) {
  if (v_p_mps <= 0.0 || sample_rate_hz <= 0.0)
    throw std::invalid_argument("metrics: inputs must be positive");
  const double limit = static_cast<double>(std::min(l_rho, l_cp));
  const double d = v_p_mps / sample_rate_hz / 2.0 * limit;
  return kind == tdr::MeasurementKind::transferogram ? 2.0 * d : d;
}

RateReport measurement_rates(baselines::Scheme scheme, const tdr::SystemParams& params) {
  params.validate();
  RateReport r;
  r.scheme = scheme;
  r.n_plm = params.n_plm;
  r.t_symb_s = params.symbol_duration_s();
  const double per_symbol = 1.0 / r.t_symb_s;
  const double penalty =
      (scheme == baselines::Scheme::tdma || scheme == baselines::Scheme::cdma)
          ? static_cast<double>(params.n_plm)
          : 1.0;
  r.n_rho = per_symbol / penalty;
  r.n_tau = static_cast<double>(params.n_plm - 1) * per_symbol / penalty;
  r.n_meas = r.n_rho + r.n_tau;
  return r;
}

std::optional<double> estimate_sinr(std::span<const double> estimate,
                                    std::span<const double> truth) {
  if (estimate.empty()) throw std::invalid_argument("metrics: empty estimate");
  if (truth.size() > estimate.size())
    throw std::invalid_argument("metrics: truth longer than the estimate window");
  double signal = 0.0;
  for (double t : truth) signal += t * t;
  if (signal == 0.0) throw std::invalid_argument("metrics: all-zero truth");
  double error = 0.0;
  for (std::size_t k = 0; k < estimate.size(); ++k) {
    const double t = k < truth.size() ? truth[k] : 0.0;
    const double e = estimate[k] - t;
    error += e * e;
  }
  if (std::sqrt(error) < 1e-15) return std::nullopt;
  return 10.0 * std::log10(signal / error);
}

SidelobeReport sidelobe_metrics(std::span<const double> window) {
  if (window.empty()) throw std::invalid_argument("metrics: empty window");
  std::size_t peak = 0;
  double total = 0.0;
  for (std::size_t k = 0; k < window.size(); ++k) {
    total += window[k] * window[k];
    if (std::abs(window[k]) > std::abs(window[peak])) peak = k;
  }
  const double main_power = window[peak] * window[peak];
  if (main_power == 0.0) throw std::invalid_argument("metrics: all-zero window");

  double max_side = 0.0;
  for (std::size_t k = 0; k < window.size(); ++k) {
    if (k == peak) continue;
    max_side = std::max(max_side, window[k] * window[k]);
  }
  const double side_energy = total - main_power;

  SidelobeReport report;
  if (max_side > 0.0) report.pslr_db = 10.0 * std::log10(max_side / main_power);
  if (side_energy > 0.0) report.islr_db = 10.0 * std::log10(side_energy / main_power);
  return report;
}

std::vector<double> sinc_interpolate(std::span<const double> window, std::size_t factor) {
  if (factor < 2) throw std::invalid_argument("metrics: factor must be >= 2");
  if (window.empty()) throw std::invalid_argument("metrics: empty window");
  const std::size_t l = window.size();
  const std::size_t out_len = l * factor;
  auto spec = fft::forward(window);
  std::vector<std::complex<double>> stuffed(out_len, 0.0);
  const std::size_t half = l / 2;
  for (std::size_t k = 0; k < l; ++k) {
    if (k < half || (l % 2 == 1 && k == half)) {
      stuffed[k] = spec[k];
    } else if (l % 2 == 0 && k == half) {
      // Split the Nyquist bin so the upsampled signal stays real and the
      // original samples are preserved exactly.
      stuffed[half] = spec[k] * 0.5;
      stuffed[out_len - half] = std::conj(spec[k]) * 0.5;
    } else {
      stuffed[out_len - (l - k)] = spec[k];
    }
  }
  auto t = fft::inverse(stuffed);
  std::vector<double> out(out_len);
  for (std::size_t n = 0; n < out_len; ++n)
    out[n] = t[n].real() * static_cast<double>(factor);
  return out;
}

}  // namespace plcsense::metrics
