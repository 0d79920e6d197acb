#pragma once

#include <complex>
#include <span>
#include <vector>

namespace plcsense::fft {

/// Unnormalized complex DFT (FFTW backend, any length >= 1).
std::vector<std::complex<double>> transform(std::span<const std::complex<double>> in,
                                            bool inverse);

/// Unnormalized forward DFT of a real sequence.
std::vector<std::complex<double>> forward(std::span<const double> in);

/// Inverse DFT including the 1/N normalization.
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> in);

}  // namespace plcsense::fft
