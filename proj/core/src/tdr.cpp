#include "plcsense/tdr.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace plcsense::tdr {

void SystemParams::validate() const {
  if (bandwidth_hz <= 0.0 || sample_rate_hz <= 0.0)
    throw std::invalid_argument("tdr: bandwidth and sample rate must be positive");
  if (frame_size < 4 || frame_size % 2 != 0 || (frame_size / 2) % 2 != 0)
    throw std::invalid_argument("tdr: frame size must be even, >= 4, with even half-size");
  if (cp_length >= frame_size)
    throw std::invalid_argument("tdr: cyclic prefix must be shorter than the frame");
  if (n_plm == 0) throw std::invalid_argument("tdr: n_plm must be >= 1");
  if (frame_size % n_plm != 0)
    throw std::invalid_argument("tdr: frame size must be divisible by n_plm");
  if (window_length) {
    if (n_plm != 1)
      throw std::invalid_argument("tdr: window_length override requires n_plm = 1");
    if (*window_length == 0 || frame_size % *window_length != 0)
      throw std::invalid_argument("tdr: window_length must divide the frame size");
  }
}

std::vector<double> Measurement::estimate() const {
  std::vector<double> out(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) out[i] = window[i] / pilot_scale;
  return out;
}

double pilot_amplitude(const SystemParams& params) {
  const std::size_t n_pilots = params.n_plm == 1 ? params.windows_per_symbol() : 1;
  // n_pilots orthonormal chirps at amplitude A give mean-square power
  // A^2 * n_pilots / 2N; match that to the PSD target.
  return std::sqrt(params.tx_power_w() * static_cast<double>(params.frame_size) /
                   static_cast<double>(n_pilots));
}

std::vector<double> make_pilot_frame(const SystemParams& params, std::size_t modem) {
  params.validate();
  if (modem >= params.n_plm) throw std::invalid_argument("tdr: modem index out of range");
  const std::size_t l_rho = params.window();
  const double amp = pilot_amplitude(params);
  std::vector<double> xdot(params.frame_size, 0.0);
  if (params.n_plm == 1) {
    for (std::size_t k = 0; k < params.frame_size; k += l_rho) xdot[k] = amp;
  } else {
    xdot[modem * l_rho] = amp;
  }
  return xdot;
}

std::vector<double> ocdm_modulate(const fresnel::FresnelBasis& basis,
                                  std::span<const double> xdot,
                                  std::size_t cp_length) {
  if (cp_length >= basis.size())
    throw std::invalid_argument("tdr: cyclic prefix must be shorter than the frame");
  auto body = basis.inverse(xdot);
  std::vector<double> frame;
  frame.reserve(body.size() + cp_length);
  frame.insert(frame.end(), body.end() - static_cast<std::ptrdiff_t>(cp_length), body.end());
  frame.insert(frame.end(), body.begin(), body.end());
  return frame;
}

std::vector<double> ocdm_demodulate(const fresnel::FresnelBasis& basis,
                                    std::span<const double> received,
                                    std::size_t cp_length) {
  if (received.size() != basis.size() + cp_length)
    throw std::invalid_argument("tdr: received length mismatch");
  return basis.forward(received.subspan(cp_length));
}

std::vector<Measurement> extract_measurements(std::span<const double> ydot,
                                              const SystemParams& params,
                                              std::size_t observer,
                                              std::size_t symbol_index,
                                              double pilot_scale) {
  if (ydot.size() != params.frame_size)
    throw std::invalid_argument("tdr: Fresnel vector length mismatch");
  const std::size_t l_rho = params.window();
  std::vector<Measurement> out;
  out.reserve(params.frame_size / l_rho);
  for (std::size_t w = 0; w * l_rho < params.frame_size; ++w) {
    Measurement m;
    m.window.assign(ydot.begin() + static_cast<std::ptrdiff_t>(w * l_rho),
                    ydot.begin() + static_cast<std::ptrdiff_t>((w + 1) * l_rho));
    m.observer = observer;
    m.injector = params.n_plm == 1 ? 0 : w;
    m.kind = m.injector == observer ? MeasurementKind::reflectogram
                                    : MeasurementKind::transferogram;
    m.symbol_index = symbol_index;
    m.pilot_scale = pilot_scale;
    out.push_back(std::move(m));
  }
  return out;
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ValidationReport validate_configuration(const SystemParams& params,
                                        const chanmodel::SensingScenario& scenario) {
  const std::size_t l_h_max = scenario.max_channel_length();
  const std::size_t l_rho = params.window();
  const double t_symb = params.symbol_duration_s();
  char detail[96];
  ValidationReport report;
  std::snprintf(detail, sizeof(detail), "L_rho = %zu vs L_h_max = %zu", l_rho, l_h_max);
  report.checks.push_back({"window-interference", l_rho >= l_h_max, detail});
  std::snprintf(detail, sizeof(detail), "L_cp = %zu vs L_h_max - 1 = %zu",
                params.cp_length, l_h_max - 1);
  report.checks.push_back({"isi", params.cp_length + 1 >= l_h_max, detail});
  std::snprintf(detail, sizeof(detail), "T_symb = %.6g s vs T_c / 10 = %.6g s", t_symb,
                scenario.coherence_time_s / 10.0);
  report.checks.push_back(
      {"coherence", t_symb <= scenario.coherence_time_s / 10.0, detail});
  return report;
}

std::vector<AveragedEstimate> average_measurements(
    std::span<const Measurement> measurements, std::size_t n_plm,
    std::size_t window_length) {
  std::vector<AveragedEstimate> avg(n_plm * n_plm);
  std::vector<std::size_t> counts(n_plm * n_plm, 0);
  for (std::size_t i = 0; i < n_plm; ++i) {
    for (std::size_t j = 0; j < n_plm; ++j) {
      auto& a = avg[i * n_plm + j];
      a.observer = i;
      a.injector = j;
      a.window.assign(window_length, 0.0);
    }
  }
  for (const auto& m : measurements) {
    auto& a = avg[m.observer * n_plm + m.injector];
    const auto est = m.estimate();
    for (std::size_t k = 0; k < window_length && k < est.size(); ++k) a.window[k] += est[k];
    ++counts[m.observer * n_plm + m.injector];
  }
  for (std::size_t idx = 0; idx < avg.size(); ++idx) {
    if (counts[idx] == 0) continue;
    for (auto& v : avg[idx].window) v /= static_cast<double>(counts[idx]);
  }
  return avg;
}

CampaignResult run_campaign(const SystemParams& params,
                            const chanmodel::SensingScenario& scenario,
                            const chanmodel::NoiseModel& noise,
                            std::size_t n_symbols,
                            std::uint64_t seed) {
  params.validate();
  if (scenario.n_plm != params.n_plm)
    throw std::invalid_argument("tdr: scenario modem count does not match params");
  const auto basis = fresnel::FresnelBasis::create(params.frame_size);
  const double amp = pilot_amplitude(params);

  std::vector<std::vector<double>> frames(params.n_plm);
  for (std::size_t u = 0; u < params.n_plm; ++u)
    frames[u] = ocdm_modulate(basis, make_pilot_frame(params, u), params.cp_length);

  const std::size_t frame_len = params.frame_size + params.cp_length;
  const std::size_t noise_len = frame_len % 2 == 0 ? frame_len : frame_len + 1;

  CampaignResult result;
  for (std::size_t s = 0; s < n_symbols; ++s) {
    for (std::size_t i = 0; i < params.n_plm; ++i) {
      std::vector<double> rx(frame_len, 0.0);
      for (std::size_t u = 0; u < params.n_plm; ++u) {
        const auto echoed = chanmodel::apply_channel(frames[u], scenario.at(i, u));
        for (std::size_t n = 0; n < frame_len; ++n) rx[n] += echoed[n];
      }
      if (noise.kind != chanmodel::NoiseKind::none) {
        const auto v = chanmodel::generate_noise(
            noise, params.sample_rate_hz, noise_len,
            chanmodel::mix_seed(seed, s * params.n_plm + i));
        for (std::size_t n = 0; n < frame_len; ++n) rx[n] += v[n];
      }
      auto ydot = ocdm_demodulate(basis, rx, params.cp_length);
      auto ms = extract_measurements(ydot, params, i, s, amp);
      result.measurements.insert(result.measurements.end(),
                                 std::make_move_iterator(ms.begin()),
                                 std::make_move_iterator(ms.end()));
    }
  }
  result.averaged =
      average_measurements(result.measurements, params.n_plm, params.window());
  return result;
}

}  // namespace plcsense::tdr
