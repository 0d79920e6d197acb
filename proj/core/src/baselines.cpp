#include "plcsense/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "plcsense/fft.hpp"

namespace plcsense::baselines {

namespace {

constexpr double kPilotGuard = 1e-12;

void check_hermitian(std::span<const std::complex<double>> spectrum) {
  const std::size_t m = spectrum.size();
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("baselines: spectrum length must be even and >= 2");
  double scale = 0.0;
  for (const auto& s : spectrum) scale = std::max(scale, std::abs(s));
  const double tol = 1e-9 * std::max(scale, 1.0);
  if (std::abs(spectrum[0].imag()) > tol || std::abs(spectrum[m / 2].imag()) > tol)
    throw std::invalid_argument("baselines: bins 0 and N must be real");
  for (std::size_t k = 1; k < m / 2; ++k) {
    if (std::abs(spectrum[m - k] - std::conj(spectrum[k])) > tol)
      throw std::invalid_argument("baselines: spectrum is not Hermitian symmetric");
  }
}

std::vector<double> real_ifft(std::span<const std::complex<double>> spectrum) {
  auto t = fft::inverse(spectrum);
  std::vector<double> out(t.size());
  for (std::size_t n = 0; n < t.size(); ++n) out[n] = t[n].real();
  return out;
}

std::vector<double> truncate_window(std::vector<double> est, std::size_t l_rho) {
  est.resize(l_rho);
  return est;
}

std::vector<double> add_noise(std::vector<double> rx,
                              const chanmodel::NoiseModel& noise,
                              const tdr::SystemParams& params,
                              std::uint64_t seed, std::size_t symbol,
                              std::size_t observer) {
  if (noise.kind == chanmodel::NoiseKind::none) return rx;
  const std::size_t noise_len = rx.size() % 2 == 0 ? rx.size() : rx.size() + 1;
  const auto v = chanmodel::generate_noise(
      noise, params.sample_rate_hz, noise_len,
      chanmodel::mix_seed(seed, symbol * params.n_plm + observer));
  for (std::size_t n = 0; n < rx.size(); ++n) rx[n] += v[n];
  return rx;
}

tdr::Measurement make_measurement(std::vector<double> window, std::size_t observer,
                                  std::size_t injector, std::size_t symbol) {
  tdr::Measurement m;
  m.window = std::move(window);
  m.observer = observer;
  m.injector = injector;
  m.kind = observer == injector ? tdr::MeasurementKind::reflectogram
                                : tdr::MeasurementKind::transferogram;
  m.symbol_index = symbol;
  m.pilot_scale = 1.0;
  return m;
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::ocdm: return "ocdm";
    case Scheme::tdma: return "tdma";
    case Scheme::fdma: return "fdma";
    case Scheme::cdma: return "cdma";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "ocdm") return Scheme::ocdm;
  if (name == "tdma") return Scheme::tdma;
  if (name == "fdma") return Scheme::fdma;
  if (name == "cdma") return Scheme::cdma;
  throw std::invalid_argument("baselines: unknown scheme '" + name + "'");
}

std::vector<std::complex<double>> default_pilot_spectrum(const tdr::SystemParams& params) {
  const double amp =
      std::sqrt(params.tx_power_w() * static_cast<double>(params.frame_size));
  return std::vector<std::complex<double>>(params.frame_size, amp);
}

std::vector<std::complex<double>> fdma_pilot_spectrum(const tdr::SystemParams& params,
                                                      std::span<const std::size_t> comb) {
  const std::size_t m = params.frame_size;
  const double amp = std::sqrt(params.tx_power_w() * static_cast<double>(m));
  std::vector<std::complex<double>> spectrum(m, 0.0);
  for (std::size_t k : comb) {
    if (k == 0 || k >= m / 2)
      throw std::invalid_argument("baselines: comb bins must lie in 1..N-1");
    spectrum[k] = amp;
    spectrum[m - k] = amp;
  }
  return spectrum;
}

std::vector<double> hsofdm_modulate(std::span<const std::complex<double>> spectrum,
                                    std::size_t cp_length) {
  check_hermitian(spectrum);
  if (cp_length >= spectrum.size())
    throw std::invalid_argument("baselines: cyclic prefix must be shorter than the frame");
  auto body = real_ifft(spectrum);
  std::vector<double> frame;
  frame.reserve(body.size() + cp_length);
  frame.insert(frame.end(), body.end() - static_cast<std::ptrdiff_t>(cp_length), body.end());
  frame.insert(frame.end(), body.begin(), body.end());
  return frame;
}

std::vector<std::complex<double>> hsofdm_demodulate(std::span<const double> received,
                                                    std::size_t cp_length) {
  if (received.size() <= cp_length)
    throw std::invalid_argument("baselines: received frame too short");
  return fft::forward(received.subspan(cp_length));
}

std::vector<double> estimate_reflectogram(std::span<const std::complex<double>> received_bins,
                                          std::span<const std::complex<double>> pilot_bins) {
  if (received_bins.size() != pilot_bins.size())
    throw std::invalid_argument("baselines: bin count mismatch");
  std::vector<std::complex<double>> est(received_bins.size(), 0.0);
  for (std::size_t k = 0; k < est.size(); ++k) {
    if (std::abs(pilot_bins[k]) > kPilotGuard) est[k] = received_bins[k] / pilot_bins[k];
  }
  return real_ifft(est);
}

std::size_t schedule_tdma(std::size_t n_plm, std::size_t symbol_index) {
  if (n_plm == 0) throw std::invalid_argument("baselines: n_plm must be >= 1");
  return symbol_index % n_plm;
}

std::vector<std::size_t> allocate_fdma(const tdr::SystemParams& params, std::size_t modem,
                                       std::size_t symbol_index) {
  const std::size_t half = params.frame_size / 2;
  if (params.n_plm > half - 1)
    throw std::invalid_argument("baselines: more modems than usable subcarriers");
  if (modem >= params.n_plm) throw std::invalid_argument("baselines: modem index out of range");
  const std::size_t comb = (modem + symbol_index) % params.n_plm;
  std::vector<std::size_t> bins;
  for (std::size_t k = 1; k < half; ++k) {
    if ((k - 1) % params.n_plm == comb) bins.push_back(k);
  }
  return bins;
}

std::vector<std::vector<int>> walsh_hadamard(std::size_t order) {
  if (order == 0 || (order & (order - 1)) != 0)
    throw std::invalid_argument("baselines: Walsh-Hadamard order must be a power of two");
  std::vector<std::vector<int>> h(order, std::vector<int>(order, 1));
  for (std::size_t block = 1; block < order; block *= 2) {
    for (std::size_t r = 0; r < block; ++r) {
      for (std::size_t c = 0; c < block; ++c) {
        h[r + block][c] = h[r][c];
        h[r][c + block] = h[r][c];
        h[r + block][c + block] = -h[r][c];
      }
    }
  }
  return h;
}

std::vector<double> despread_cdma(std::span<const std::vector<std::complex<double>>> received_symbols,
                                  std::span<const int> code,
                                  std::span<const std::complex<double>> pilot_bins) {
  if (received_symbols.size() != code.size() || code.empty())
    throw std::invalid_argument("baselines: block length must match the code length");
  std::vector<std::complex<double>> acc(pilot_bins.size(), 0.0);
  for (std::size_t m = 0; m < code.size(); ++m) {
    const auto& y = received_symbols[m];
    if (y.size() != acc.size()) throw std::invalid_argument("baselines: bin count mismatch");
    const double sign = static_cast<double>(code[m]);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += sign * y[k];
  }
  const double inv = 1.0 / static_cast<double>(code.size());
  for (auto& v : acc) v *= inv;
  return estimate_reflectogram(acc, pilot_bins);
}

namespace {

tdr::CampaignResult run_tdma(const tdr::SystemParams& params,
                             const chanmodel::SensingScenario& scenario,
                             const chanmodel::NoiseModel& noise,
                             std::size_t n_symbols, std::uint64_t seed) {
  const auto pilots = default_pilot_spectrum(params);
  const auto frame = hsofdm_modulate(pilots, params.cp_length);
  const std::size_t l_rho = params.window();
  tdr::CampaignResult result;
  for (std::size_t s = 0; s < n_symbols; ++s) {
    const std::size_t active = schedule_tdma(params.n_plm, s);
    for (std::size_t i = 0; i < params.n_plm; ++i) {
      auto rx = add_noise(chanmodel::apply_channel(frame, scenario.at(i, active)),
                          noise, params, seed, s, i);
      auto bins = hsofdm_demodulate(rx, params.cp_length);
      auto est = truncate_window(estimate_reflectogram(bins, pilots), l_rho);
      result.measurements.push_back(make_measurement(std::move(est), i, active, s));
    }
  }
  result.averaged =
      tdr::average_measurements(result.measurements, params.n_plm, l_rho);
  return result;
}

tdr::CampaignResult run_fdma(const tdr::SystemParams& params,
                             const chanmodel::SensingScenario& scenario,
                             const chanmodel::NoiseModel& noise,
                             std::size_t n_symbols, std::uint64_t seed) {
  const std::size_t m = params.frame_size;
  const std::size_t l_rho = params.window();
  const std::size_t n = params.n_plm;
  tdr::CampaignResult result;

  // Full-band reassembly state per (observer, injector) across a hop cycle.
  std::vector<std::vector<std::complex<double>>> assembled(
      n * n, std::vector<std::complex<double>>(m, 0.0));

  for (std::size_t s = 0; s < n_symbols; ++s) {
    std::vector<std::vector<std::size_t>> combs(n);
    std::vector<std::vector<std::complex<double>>> spectra(n);
    std::vector<std::vector<double>> frames(n);
    for (std::size_t u = 0; u < n; ++u) {
      combs[u] = allocate_fdma(params, u, s);
      spectra[u] = fdma_pilot_spectrum(params, combs[u]);
      frames[u] = hsofdm_modulate(spectra[u], params.cp_length);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> rx(frames[0].size(), 0.0);
      for (std::size_t u = 0; u < n; ++u) {
        const auto echoed = chanmodel::apply_channel(frames[u], scenario.at(i, u));
        for (std::size_t k = 0; k < rx.size(); ++k) rx[k] += echoed[k];
      }
      rx = add_noise(std::move(rx), noise, params, seed, s, i);
      const auto bins = hsofdm_demodulate(rx, params.cp_length);
      for (std::size_t u = 0; u < n; ++u) {
        auto est = truncate_window(estimate_reflectogram(bins, spectra[u]), l_rho);
        result.measurements.push_back(make_measurement(std::move(est), i, u, s));
        auto& acc = assembled[i * n + u];
        for (std::size_t k : combs[u]) {
          acc[k] = bins[k] / spectra[u][k];
          acc[m - k] = std::conj(acc[k]);
        }
      }
    }
    if (s % n == n - 1) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t u = 0; u < n; ++u) {
          auto est = truncate_window(real_ifft(assembled[i * n + u]), l_rho);
          result.fullband.push_back(make_measurement(std::move(est), i, u, s));
        }
      }
    }
  }
  result.averaged =
      tdr::average_measurements(result.measurements, params.n_plm, l_rho);
  return result;
}

tdr::CampaignResult run_cdma(const tdr::SystemParams& params,
                             const chanmodel::SensingScenario& scenario,
                             const chanmodel::NoiseModel& noise,
                             std::size_t n_symbols, std::uint64_t seed) {
  const std::size_t n = params.n_plm;
  const auto codes = walsh_hadamard(n);
  const auto pilots = default_pilot_spectrum(params);
  const auto frame = hsofdm_modulate(pilots, params.cp_length);
  const std::size_t l_rho = params.window();
  tdr::CampaignResult result;

  // Trailing symbols that do not fill a block are dropped.
  for (std::size_t block = 0; (block + 1) * n <= n_symbols; ++block) {
    std::vector<std::vector<std::vector<std::complex<double>>>> bins(
        n, std::vector<std::vector<std::complex<double>>>(n));
    for (std::size_t slot = 0; slot < n; ++slot) {
      const std::size_t s = block * n + slot;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> rx(frame.size(), 0.0);
        for (std::size_t u = 0; u < n; ++u) {
          const double sign = static_cast<double>(codes[u][slot]);
          const auto echoed = chanmodel::apply_channel(frame, scenario.at(i, u));
          for (std::size_t k = 0; k < rx.size(); ++k) rx[k] += sign * echoed[k];
        }
        rx = add_noise(std::move(rx), noise, params, seed, s, i);
        bins[i][slot] = hsofdm_demodulate(rx, params.cp_length);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t u = 0; u < n; ++u) {
        std::vector<int> code(codes[u].begin(), codes[u].end());
        auto est = truncate_window(despread_cdma(bins[i], code, pilots), l_rho);
        result.measurements.push_back(make_measurement(std::move(est), i, u, block * n));
      }
    }
  }
  result.averaged =
      tdr::average_measurements(result.measurements, params.n_plm, l_rho);
  return result;
}

}  // namespace

tdr::CampaignResult run_campaign_baseline(Scheme scheme,
                                          const tdr::SystemParams& params,
                                          const chanmodel::SensingScenario& scenario,
                                          const chanmodel::NoiseModel& noise,
                                          std::size_t n_symbols,
                                          std::uint64_t seed) {
  params.validate();
  if (scenario.n_plm != params.n_plm)
    throw std::invalid_argument("baselines: scenario modem count does not match params");
  switch (scheme) {
    case Scheme::ocdm:
      return tdr::run_campaign(params, scenario, noise, n_symbols, seed);
    case Scheme::tdma:
      return run_tdma(params, scenario, noise, n_symbols, seed);
    case Scheme::fdma:
      return run_fdma(params, scenario, noise, n_symbols, seed);
    case Scheme::cdma:
      return run_cdma(params, scenario, noise, n_symbols, seed);
  }
  throw std::logic_error("baselines: unreachable");
}

}  // namespace plcsense::baselines
