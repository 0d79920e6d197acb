#include "plcsense/chanmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "plcsense/fft.hpp"

namespace plcsense::chanmodel {

void ChannelTaps::validate() const {
  if (taps.empty()) throw std::invalid_argument("chanmodel: empty tap list");
  double prev = -1.0;
  for (const auto& t : taps) {
    if (t.arrival_time_s < 0.0) throw std::invalid_argument("chanmodel: negative tap time");
    if (t.arrival_time_s <= prev)
      throw std::invalid_argument("chanmodel: tap times must be strictly increasing");
    if (std::abs(t.amplitude) > 1.0)
      throw std::invalid_argument("chanmodel: |tap amplitude| must be <= 1");
    prev = t.arrival_time_s;
  }
}

const ImpulseResponse& SensingScenario::at(std::size_t observer, std::size_t injector) const {
  return channels.at(observer * n_plm + injector);
}

ImpulseResponse& SensingScenario::at(std::size_t observer, std::size_t injector) {
  return channels.at(observer * n_plm + injector);
}

std::size_t SensingScenario::max_channel_length() const {
  std::size_t m = 1;
  for (const auto& c : channels) m = std::max(m, c.length());
  return m;
}

double NoiseModel::psd_dbm_hz(double f_hz) const {
  switch (kind) {
    case NoiseKind::flat:
      return a_dbm_hz;
    case NoiseKind::exponential_psd:
      return a_dbm_hz + b_dbm_hz * std::exp(-c_per_khz * f_hz / 1e3);
    case NoiseKind::none:
      break;
  }
  return -std::numeric_limits<double>::infinity();
}

double NoiseModel::psd_w_hz(double f_hz) const {
  if (kind == NoiseKind::none) return 0.0;
  return dbm_to_watts(psd_dbm_hz(f_hz));
}

double phase_velocity(double inductance_per_m, double capacitance_per_m) {
  if (inductance_per_m <= 0.0 || capacitance_per_m <= 0.0)
    throw std::invalid_argument("chanmodel: line constants must be positive");
  return 1.0 / std::sqrt(inductance_per_m * capacitance_per_m);
}

ImpulseResponse taps_to_impulse(const ChannelTaps& taps, double sample_rate_hz) {
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("chanmodel: sample rate must be positive");
  taps.validate();
  std::size_t last = 0;
  std::vector<double> h;
  for (const auto& t : taps.taps) {
    const auto idx = static_cast<std::size_t>(std::llround(t.arrival_time_s * sample_rate_hz));
    if (idx >= h.size()) h.resize(idx + 1, 0.0);
    h[idx] += t.amplitude;
    last = std::max(last, idx);
  }
  while (h.size() > 1 && h.back() == 0.0) h.pop_back();
  if (h.empty()) h.push_back(0.0);
  return ImpulseResponse{std::move(h), 1.0 / sample_rate_hz};
}

namespace {

struct Wave {
  int node;       // node the wave just left
  int direction;  // +1 toward higher positions, -1 back
  double amplitude;
  double delay_s;
  int bounces;
};

}  // namespace

SensingScenario build_two_segment_scenario(double d_a_m, double d_b_m,
                                           double v_p_mps,
                                           std::span<const double> reflection_coeffs,
                                           int bounce_order,
                                           double sample_rate_hz,
                                           double delay_cap_s,
                                           double coherence_time_s) {
  if (d_a_m <= 0.0 || d_b_m <= 0.0) throw std::invalid_argument("chanmodel: distances must be positive");
  if (v_p_mps <= 0.0) throw std::invalid_argument("chanmodel: phase velocity must be positive");
  if (bounce_order < 1) throw std::invalid_argument("chanmodel: bounce order must be >= 1");
  if (reflection_coeffs.size() != 3)
    throw std::invalid_argument("chanmodel: expected 3 reflection coefficients (end, junction, end)");
  for (double r : reflection_coeffs) {
    if (std::abs(r) > 1.0)
      throw std::invalid_argument("chanmodel: |reflection coefficient| must be <= 1");
  }
  const double min_delay = std::min(d_a_m, d_b_m) / v_p_mps;
  if (min_delay > delay_cap_s)
    throw std::invalid_argument("chanmodel: every echo path exceeds the delay cap");

  const double r0 = reflection_coeffs[0];
  const double rj = reflection_coeffs[1];
  const double r1 = reflection_coeffs[2];
  const double tj = std::sqrt(std::max(0.0, 1.0 - rj * rj));
  const double seg_len[2] = {d_a_m, d_b_m};

  // arrivals[receiver 0/1]: delay -> summed amplitude
  std::map<double, double> arrivals[2];

  auto enumerate = [&](int injector) {
    for (auto& m : arrivals) m.clear();
    std::vector<Wave> stack;
    stack.push_back(Wave{injector == 0 ? 0 : 2, injector == 0 ? +1 : -1, 1.0, 0.0, 0});
    while (!stack.empty()) {
      Wave w = stack.back();
      stack.pop_back();
      const int seg = w.direction > 0 ? w.node : w.node - 1;
      const int next = w.node + w.direction;
      const double delay = w.delay_s + seg_len[seg] / v_p_mps;
      if (delay > delay_cap_s || std::abs(w.amplitude) < 1e-12) continue;
      if (next == 0 || next == 2) {
        arrivals[next == 0 ? 0 : 1][delay] += w.amplitude;
        const double r = next == 0 ? r0 : r1;
        if (r != 0.0 && w.bounces < bounce_order) {
          stack.push_back(Wave{next, -w.direction, w.amplitude * r, delay, w.bounces + 1});
        }
      } else {
        if (tj != 0.0) {
          stack.push_back(Wave{next, w.direction, w.amplitude * tj, delay, w.bounces});
        }
        if (rj != 0.0 && w.bounces < bounce_order) {
          stack.push_back(Wave{next, -w.direction, w.amplitude * rj, delay, w.bounces + 1});
        }
      }
    }
  };

  SensingScenario scenario;
  scenario.n_plm = 2;
  scenario.v_p_mps = v_p_mps;
  scenario.coherence_time_s = coherence_time_s;
  scenario.channels.assign(4, ImpulseResponse{{0.0}, 1.0 / sample_rate_hz});

  for (int injector = 0; injector < 2; ++injector) {
    enumerate(injector);
    for (int observer = 0; observer < 2; ++observer) {
      if (arrivals[observer].empty()) continue;
      ChannelTaps taps;
      for (const auto& [delay, amp] : arrivals[observer]) {
        if (amp != 0.0) taps.taps.push_back(Tap{delay, amp});
      }
      if (taps.taps.empty()) continue;
      scenario.at(static_cast<std::size_t>(observer), static_cast<std::size_t>(injector)) =
          taps_to_impulse(taps, sample_rate_hz);
    }
  }
  return scenario;
}

std::vector<double> apply_channel(std::span<const double> frame, const ImpulseResponse& h) {
  if (frame.empty() || h.h.empty()) throw std::invalid_argument("chanmodel: empty input");
  std::vector<double> out(frame.size(), 0.0);
  for (std::size_t m = 0; m < h.h.size(); ++m) {
    const double hm = h.h[m];
    if (hm == 0.0) continue;
    for (std::size_t n = m; n < frame.size(); ++n) out[n] += hm * frame[n - m];
  }
  return out;
}

std::vector<double> generate_noise(const NoiseModel& model, double sample_rate_hz,
                                   std::size_t length, std::uint64_t seed) {
  if (length == 0 || length % 2 != 0) throw std::invalid_argument("chanmodel: length must be even");
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("chanmodel: sample rate must be positive");
  if (model.kind == NoiseKind::none) return std::vector<double>(length, 0.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t half = length / 2;
  const double df = sample_rate_hz / static_cast<double>(length);
  std::vector<std::complex<double>> spec(length, 0.0);

  // One-sided periodogram convention: E|X_k|^2 = S(f_k) Fs L / 2 at interior
  // bins and S(f_k) Fs L at the DC and Nyquist bins.
  for (std::size_t k = 0; k <= half; ++k) {
    const double s = model.psd_w_hz(static_cast<double>(k) * df);
    if (k == 0 || k == half) {
      spec[k] = std::sqrt(s * sample_rate_hz * static_cast<double>(length)) * gauss(rng);
    } else {
      const double sigma =
          std::sqrt(s * sample_rate_hz * static_cast<double>(length) / 4.0);
      spec[k] = std::complex<double>(sigma * gauss(rng), sigma * gauss(rng));
      spec[length - k] = std::conj(spec[k]);
    }
  }
  auto t = fft::inverse(spec);
  std::vector<double> out(length);
  for (std::size_t n = 0; n < length; ++n) out[n] = t[n].real();
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + salt * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace plcsense::chanmodel
