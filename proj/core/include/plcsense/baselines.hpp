#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plcsense/chanmodel.hpp"
#include "plcsense/tdr.hpp"

namespace plcsense::baselines {

enum class Scheme { ocdm, tdma, fdma, cdma };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// Flat real pilot spectrum on all 2N bins, scaled so the time-domain frame
/// meets the transmit PSD target.
std::vector<std::complex<double>> default_pilot_spectrum(const tdr::SystemParams& params);

/// Pilot spectrum restricted to one FDMA comb (plus conjugate mirror bins).
std::vector<std::complex<double>> fdma_pilot_spectrum(const tdr::SystemParams& params,
                                                      std::span<const std::size_t> comb);

/// Hermitian-symmetric spectrum -> real time frame with cyclic prefix.
/// Throws std::invalid_argument for a non-Hermitian spectrum.
std::vector<double> hsofdm_modulate(std::span<const std::complex<double>> spectrum,
                                    std::size_t cp_length);

/// Cyclic prefix removal plus DFT: per-bin received values.
std::vector<std::complex<double>> hsofdm_demodulate(std::span<const double> received,
                                                    std::size_t cp_length);

/// Per-bin division by the known pilots followed by an inverse DFT. Bins with
/// zero pilot are excluded from the estimate (left at zero).
std::vector<double> estimate_reflectogram(std::span<const std::complex<double>> received_bins,
                                          std::span<const std::complex<double>> pilot_bins);

/// Round-robin: modem (symbol mod n_plm) transmits alone.
std::size_t schedule_tdma(std::size_t n_plm, std::size_t symbol_index);

/// Interleaved comb of subcarrier bins in 1..N-1 for modem u at the given
/// symbol; combs hop cyclically so each modem visits every comb.
std::vector<std::size_t> allocate_fdma(const tdr::SystemParams& params, std::size_t modem,
                                       std::size_t symbol_index);

/// Sylvester-construction Walsh-Hadamard +/-1 codes; order must be a power
/// of two.
std::vector<std::vector<int>> walsh_hadamard(std::size_t order);

/// Despreads one n_plm-symbol block of received spectra with modem u's code:
/// correlate, divide by the block length and the pilots, inverse DFT.
std::vector<double> despread_cdma(std::span<const std::vector<std::complex<double>>> received_symbols,
                                  std::span<const int> code,
                                  std::span<const std::complex<double>> pilot_bins);

/// HS-OFDM campaign with the selected multiple-access scheme. Scheme::ocdm is
/// routed to tdr::run_campaign. Measurements are normalized channel estimates
/// truncated to the L_rho window; FDMA additionally reassembles full-band
/// reflectograms after each hop cycle (CampaignResult::fullband).
tdr::CampaignResult run_campaign_baseline(Scheme scheme,
                                          const tdr::SystemParams& params,
                                          const chanmodel::SensingScenario& scenario,
                                          const chanmodel::NoiseModel& noise,
                                          std::size_t n_symbols,
                                          std::uint64_t seed);

}  // namespace plcsense::baselines
