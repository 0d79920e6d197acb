#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace plcsense::chanmodel {

/// One echo: arrival time at the receiver and its attenuation factor.
struct Tap {
  double arrival_time_s = 0.0;
  double amplitude = 0.0;
};

/// Sparse reflection/transmission channel as a list of echoes with strictly
/// increasing arrival times.
struct ChannelTaps {
  std::vector<Tap> taps;

  void validate() const;  // throws std::invalid_argument on a bad tap list
};

/// Sampled channel impulse response, trailing zeros trimmed.
struct ImpulseResponse {
  std::vector<double> h{0.0};
  double sample_period_s = 0.0;

  std::size_t length() const { return h.size(); }
};

/// N_PLM modems and the full grid of channel impulse responses; entry (i, j)
/// is the channel from injector j to observer i.
struct SensingScenario {
  std::size_t n_plm = 1;
  double v_p_mps = 0.0;
  double coherence_time_s = 0.01;
  std::vector<ImpulseResponse> channels;  // row-major, n_plm * n_plm entries

  const ImpulseResponse& at(std::size_t observer, std::size_t injector) const;
  ImpulseResponse& at(std::size_t observer, std::size_t injector);
  std::size_t max_channel_length() const;
};

enum class NoiseKind { none, flat, exponential_psd };

/// Additive noise description. For exponential_psd the one-sided PSD is
/// a + b * exp(-c * f / 1e3) dBm/Hz; for flat it is a dBm/Hz.
struct NoiseModel {
  NoiseKind kind = NoiseKind::exponential_psd;
  double a_dbm_hz = -93.0;
  double b_dbm_hz = 52.98;
  double c_per_khz = 0.0032;

  double psd_dbm_hz(double f_hz) const;
  double psd_w_hz(double f_hz) const;
};

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts / 1e-3); }

/// v_p = 1 / sqrt(L' C') for per-unit-length line constants.
double phase_velocity(double inductance_per_m, double capacitance_per_m);

/// Samples a tap list on the grid of the given rate. Taps rounding to the
/// same index sum; the response is trimmed to its last nonzero sample.
ImpulseResponse taps_to_impulse(const ChannelTaps& taps, double sample_rate_hz);

/// Two-modem line with a junction at d_a and a far end at d_a + d_b.
/// reflection_coeffs = {r at modem 0, r at the junction, r at modem 1};
/// the junction transmits with sqrt(1 - r^2) so amplitude products stay
/// bounded by 1. Echo paths are enumerated up to bounce_order reflections
/// and pruned past delay_cap_s.
SensingScenario build_two_segment_scenario(double d_a_m, double d_b_m,
                                           double v_p_mps,
                                           std::span<const double> reflection_coeffs,
                                           int bounce_order,
                                           double sample_rate_hz,
                                           double delay_cap_s = 1e-3,
                                           double coherence_time_s = 0.01);

/// Linear convolution of a transmit frame with h, truncated to the frame
/// length. With L_h <= L_cp + 1 the post-CP-removal result equals circular
/// convolution with the zero-padded h.
std::vector<double> apply_channel(std::span<const double> frame,
                                  const ImpulseResponse& h);

/// Zero-mean WSS Gaussian sequence shaped to the model PSD by Hermitian
/// frequency-domain synthesis. Bit-identical for equal seeds.
std::vector<double> generate_noise(const NoiseModel& model, double sample_rate_hz,
                                   std::size_t length, std::uint64_t seed);

/// SplitMix64 step, used to derive independent per-symbol/per-observer seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace plcsense::chanmodel
