#include "plcsense/fresnel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plcsense/fft.hpp"

namespace plcsense::fresnel {

namespace {

constexpr double kResidueTol = 1e-9;

std::vector<double> take_real_checked(const std::vector<std::complex<double>>& v) {
  double norm2 = 0.0;
  double imag2 = 0.0;
  for (const auto& c : v) {
    norm2 += std::norm(c);
    imag2 += c.imag() * c.imag();
  }
  if (norm2 > 0.0 && std::sqrt(imag2) > kResidueTol * std::sqrt(norm2)) {
    throw std::runtime_error("fresnel: imaginary residue above tolerance, broken basis");
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
  return out;
}

}  // namespace

FresnelBasis FresnelBasis::create(std::size_t two_n) {
  if (two_n < 4 || two_n % 2 != 0 || (two_n / 2) % 2 != 0) {
    throw std::invalid_argument(
        "fresnel: size must be even, >= 4, with an even half-size");
  }
  const std::size_t n = two_n / 2;
  std::vector<std::complex<double>> eig(two_n);
  // Quadratic phase on the lower half; the upper half mirrors with flipped
  // sign so eig[2N-k] = conj(eig[k]) holds exactly.
  for (std::size_t k = 0; k <= n; ++k) {
    const double phase = std::numbers::pi * static_cast<double>(k) *
                         static_cast<double>(k) / static_cast<double>(two_n);
    eig[k] = std::polar(1.0, -phase);
  }
  for (std::size_t k = 1; k < n; ++k) eig[two_n - k] = std::conj(eig[k]);
  return FresnelBasis(std::move(eig));
}

std::vector<double> FresnelBasis::forward(std::span<const double> x) const {
  if (x.size() != size()) throw std::invalid_argument("fresnel: length mismatch");
  auto spec = fft::forward(x);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= eigenvalues_[k];
  return take_real_checked(fft::inverse(spec));
}

std::vector<double> FresnelBasis::inverse(std::span<const double> xdot) const {
  if (xdot.size() != size()) throw std::invalid_argument("fresnel: length mismatch");
  auto spec = fft::forward(xdot);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= std::conj(eigenvalues_[k]);
  return take_real_checked(fft::inverse(spec));
}

std::vector<std::vector<double>> FresnelBasis::dense_matrix() const {
  const std::size_t m = size();
  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<std::vector<double>> phi(m, std::vector<double>(m, 0.0));
  // Phi[r][c] = (1/M) sum_k eig[k] e^{2 pi i k (r - c) / M}; real by symmetry.
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      std::complex<double> acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) *
                           (static_cast<double>(r) - static_cast<double>(c)) *
                           inv_m;
        acc += eigenvalues_[k] * std::polar(1.0, ang);
      }
      phi[r][c] = acc.real() * inv_m;
    }
  }
  return phi;
}

}  // namespace plcsense::fresnel
