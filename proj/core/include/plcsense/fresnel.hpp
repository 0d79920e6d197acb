#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace plcsense::fresnel {

/// Modified discrete Fresnel transform of even size 2N (N even).
///
/// The transform matrix Phi is circulant, unitary and real-valued. It is
/// never stored densely on the fast path: forward/inverse application goes
/// through its Fourier eigendecomposition, i.e. Phi = F' Gamma F with F the
/// normalized DFT matrix and Gamma the diagonal of quadratic-phase
/// eigenvalues. A dense synthesis is available as a test oracle.
class FresnelBasis {
 public:
  /// Builds the basis for the given size. Throws std::invalid_argument when
  /// two_n < 4, two_n is odd, or two_n/2 is odd (the eigenvalue at k = N is
  /// complex in that case and the matrix would not be real).
  static FresnelBasis create(std::size_t two_n);

  std::size_t size() const { return eigenvalues_.size(); }
  const std::vector<std::complex<double>>& eigenvalues() const { return eigenvalues_; }

  /// Applies Phi to a real sequence. The imaginary residue left by the
  /// Fourier synthesis is checked against 1e-9 of the output norm and then
  /// discarded; a larger residue throws std::runtime_error.
  std::vector<double> forward(std::span<const double> x) const;

  /// Applies Phi' (the inverse transform), same residue policy.
  std::vector<double> inverse(std::span<const double> xdot) const;

  /// Dense synthesis of Phi through a naive O(n^2) DFT. Test oracle only.
  std::vector<std::vector<double>> dense_matrix() const;

 private:
  explicit FresnelBasis(std::vector<std::complex<double>> eig)
      : eigenvalues_(std::move(eig)) {}

  std::vector<std::complex<double>> eigenvalues_;
};

}  // namespace plcsense::fresnel
