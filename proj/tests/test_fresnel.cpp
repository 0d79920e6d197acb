#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "plcsense/fresnel.hpp"

using plcsense::fresnel::FresnelBasis;

namespace {

// Independent dense synthesis: naive normalized DFT matrices, Phi = F' G F.
std::vector<std::vector<double>> dense_oracle(std::size_t m) {
  const auto basis = FresnelBasis::create(m);
  const auto& eig = basis.eigenvalues();
  std::vector<std::vector<std::complex<double>>> f(m, std::vector<std::complex<double>>(m));
  const double s = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      f[r][c] = std::polar(s, -2.0 * std::numbers::pi * double(r) * double(c) / double(m));
  std::vector<std::vector<double>> phi(m, std::vector<double>(m, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      std::complex<double> acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += std::conj(f[k][r]) * eig[k] * f[k][c];
      REQUIRE(std::abs(acc.imag()) < 1e-12);
      phi[r][c] = acc.real();
    }
  }
  return phi;
}

std::vector<double> circular_convolution(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  const std::size_t m = a.size();
  std::vector<double> c(m, 0.0);
  for (std::size_t n = 0; n < m; ++n)
    for (std::size_t k = 0; k < m; ++k) c[n] += a[k] * b[(n + m - k) % m];
  return c;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t m) {
  std::normal_distribution<double> g;
  std::vector<double> v(m);
  for (auto& x : v) x = g(rng);
  return v;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("eigenvalues for size 4") {
  const auto basis = FresnelBasis::create(4);
  const auto& eig = basis.eigenvalues();
  REQUIRE(eig.size() == 4);
  CHECK(std::abs(eig[0] - std::complex<double>(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(eig[1] - std::polar(1.0, -std::numbers::pi / 4.0)) < 1e-15);
  CHECK(std::abs(eig[2] - std::complex<double>(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(eig[3] - std::polar(1.0, std::numbers::pi / 4.0)) < 1e-15);
}

TEST_CASE("eigenvalue invariants") {
  for (std::size_t m : {4u, 8u, 64u, 256u}) {
    const auto basis = FresnelBasis::create(m);
    const auto& eig = basis.eigenvalues();
    CHECK(std::abs(eig[0] - std::complex<double>(1.0, 0.0)) < 1e-15);
    for (std::size_t k = 0; k < m; ++k) CHECK(std::abs(std::abs(eig[k]) - 1.0) < 1e-14);
    for (std::size_t k = 1; k < m; ++k)
      CHECK(std::abs(eig[m - k] - std::conj(eig[k])) < 1e-13);
  }
}

TEST_CASE("rejected sizes") {
  CHECK_THROWS_AS(FresnelBasis::create(0), std::invalid_argument);
  CHECK_THROWS_AS(FresnelBasis::create(2), std::invalid_argument);
  CHECK_THROWS_AS(FresnelBasis::create(5), std::invalid_argument);
  CHECK_THROWS_AS(FresnelBasis::create(6), std::invalid_argument);  // N = 3 odd
  CHECK_NOTHROW(FresnelBasis::create(4));
  CHECK_NOTHROW(FresnelBasis::create(8));
}

TEST_CASE("column 0 of Phi for size 4") {
  const std::vector<double> expected = {0.353553, 0.853553, -0.353553, 0.146447};
  const auto phi = dense_oracle(4);
  for (std::size_t r = 0; r < 4; ++r) CHECK(phi[r][0] == doctest::Approx(expected[r]).epsilon(1e-5));

  const auto basis = FresnelBasis::create(4);
  std::vector<double> impulse = {1.0, 0.0, 0.0, 0.0};
  const auto col = basis.forward(impulse);
  for (std::size_t r = 0; r < 4; ++r) CHECK(col[r] == doctest::Approx(expected[r]).epsilon(1e-5));

  // Inverse applied to the impulse gives the first row of Phi.
  const auto row = basis.inverse(impulse);
  for (std::size_t c = 0; c < 4; ++c) CHECK(row[c] == doctest::Approx(phi[0][c]).epsilon(1e-9));
}

TEST_CASE("fast path matches the dense oracle") {
  std::mt19937_64 rng(7);
  for (std::size_t m : {4u, 8u, 64u}) {
    const auto phi = dense_oracle(m);
    const auto basis = FresnelBasis::create(m);
    const auto x = random_vector(rng, m);
    const auto y = basis.forward(x);
    for (std::size_t r = 0; r < m; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < m; ++c) acc += phi[r][c] * x[c];
      CHECK(y[r] == doctest::Approx(acc).epsilon(1e-10));
    }
  }
}

TEST_CASE("zeros map to zeros and lengths are checked") {
  const auto basis = FresnelBasis::create(8);
  std::vector<double> z(8, 0.0);
  for (double v : basis.forward(z)) CHECK(v == 0.0);
  for (double v : basis.inverse(z)) CHECK(v == 0.0);
  std::vector<double> wrong(6, 0.0);
  CHECK_THROWS_AS(basis.forward(wrong), std::invalid_argument);
  CHECK_THROWS_AS(basis.inverse(wrong), std::invalid_argument);
}

TEST_CASE("round trip and Parseval") {
  std::mt19937_64 rng(11);
  for (std::size_t m : {4u, 8u, 256u}) {
    const auto basis = FresnelBasis::create(m);
    const auto x = random_vector(rng, m);
    const auto y = basis.forward(x);
    CHECK(norm2(y) == doctest::Approx(norm2(x)).epsilon(1e-12));
    const auto back = basis.inverse(y);
    for (std::size_t k = 0; k < m; ++k) CHECK(back[k] == doctest::Approx(x[k]).epsilon(1e-12));
  }
}

TEST_CASE("matrix properties: real, unitary, circulant") {
  for (std::size_t m : {4u, 8u, 64u}) {
    const auto basis = FresnelBasis::create(m);
    const auto phi = basis.dense_matrix();
    // circulant structure
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c)
        CHECK(phi[(r + 1) % m][(c + 1) % m] == doctest::Approx(phi[r][c]).epsilon(1e-12));
    // unitary: Phi^T Phi = I (Phi is real)
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) acc += phi[k][r] * phi[k][c];
        CHECK(std::abs(acc - (r == c ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("similarity transformation on random circulant matrices") {
  std::mt19937_64 rng(13);
  const std::size_t m = 16;
  const auto basis = FresnelBasis::create(m);
  for (int trial = 0; trial < 20; ++trial) {
    const auto first = random_vector(rng, m);
    // Z x = circular convolution of the generating column with x; check
    // Phi Z Phi^T x = Z x by composing the library transforms.
    const auto x = random_vector(rng, m);
    const auto zx = circular_convolution(first, x);
    const auto via = basis.forward(circular_convolution(first, basis.inverse(x)));
    for (std::size_t k = 0; k < m; ++k) CHECK(std::abs(via[k] - zx[k]) < 1e-10);
  }
}

TEST_CASE("convolution theorem") {
  std::mt19937_64 rng(17);
  const std::size_t m = 32;
  const auto basis = FresnelBasis::create(m);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_vector(rng, m);
    const auto b = random_vector(rng, m);
    const auto lhs = basis.forward(circular_convolution(a, b));
    const auto rhs1 = circular_convolution(a, basis.forward(b));
    const auto rhs2 = circular_convolution(b, basis.forward(a));
    for (std::size_t k = 0; k < m; ++k) {
      CHECK(std::abs(lhs[k] - rhs1[k]) < 1e-10);
      CHECK(std::abs(lhs[k] - rhs2[k]) < 1e-10);
    }
  }
}
