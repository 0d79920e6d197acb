#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "plcsense/metrics.hpp"

using namespace plcsense;
using namespace plcsense::metrics;
using plcsense::baselines::Scheme;
using plcsense::tdr::MeasurementKind;

TEST_CASE("range resolution") {
  CHECK(range_resolution(1.50e8, 500e3) == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(range_resolution(2.56e8, 500e3) == doctest::Approx(128.0).epsilon(1e-12));
  CHECK(range_resolution(2.56e8, 500e3) / range_resolution(1.50e8, 500e3) ==
        doctest::Approx(1.70667).epsilon(1e-5));
  // halving the bandwidth doubles the resolution cell
  CHECK(range_resolution(2.56e8, 250e3) == doctest::Approx(256.0).epsilon(1e-12));
  CHECK_THROWS_AS(range_resolution(0.0, 500e3), std::invalid_argument);
  CHECK_THROWS_AS(range_resolution(1.5e8, -1.0), std::invalid_argument);
}

TEST_CASE("max unambiguous range") {
  // MV line, Fs = 1 MHz: one sample is 128 m of two-way travel.
  CHECK(max_unambiguous_range(2.56e8, 1e6, 64, 30, MeasurementKind::reflectogram) ==
        doctest::Approx(3840.0).epsilon(1e-12));
  CHECK(max_unambiguous_range(2.56e8, 1e6, 64, 30, MeasurementKind::transferogram) ==
        doctest::Approx(7680.0).epsilon(1e-12));
  // window-limited once L_rho drops below L_cp
  CHECK(max_unambiguous_range(2.56e8, 1e6, 16, 52, MeasurementKind::reflectogram) ==
        doctest::Approx(2048.0).epsilon(1e-12));
  // transferogram is always exactly twice the reflectogram range
  for (std::size_t l_rho : {8u, 64u, 256u}) {
    const double r = max_unambiguous_range(1.5e8, 1e6, l_rho, 30, MeasurementKind::reflectogram);
    const double t = max_unambiguous_range(1.5e8, 1e6, l_rho, 30, MeasurementKind::transferogram);
    CHECK(t == doctest::Approx(2.0 * r).epsilon(1e-12));
  }
  CHECK_THROWS_AS(max_unambiguous_range(0.0, 1e6, 64, 30, MeasurementKind::reflectogram),
                  std::invalid_argument);
}

TEST_CASE("measurement rates") {
  tdr::SystemParams p;  // 2N = 256, L_cp = 30, Fs = 1 MHz
  p.n_plm = 4;
  SUBCASE("symbol duration and per-symbol rate") {
    const auto r = measurement_rates(Scheme::ocdm, p);
    CHECK(r.t_symb_s == doctest::Approx(286e-6).epsilon(1e-12));
    CHECK(r.n_rho == doctest::Approx(3496.5034965).epsilon(1e-9));
    CHECK(r.n_tau == doctest::Approx(10489.5104895).epsilon(1e-9));
    CHECK(r.n_meas == doctest::Approx(r.n_rho + r.n_tau).epsilon(1e-12));
  }
  SUBCASE("tdma and cdma pay the multiplexing penalty") {
    const auto t = measurement_rates(Scheme::tdma, p);
    CHECK(t.n_rho == doctest::Approx(874.1258741).epsilon(1e-9));
    const auto c = measurement_rates(Scheme::cdma, p);
    CHECK(c.n_rho == doctest::Approx(t.n_rho).epsilon(1e-12));
    CHECK(c.n_tau == doctest::Approx(3.0 * t.n_rho).epsilon(1e-9));
  }
  SUBCASE("fdma matches ocdm") {
    const auto o = measurement_rates(Scheme::ocdm, p);
    const auto f = measurement_rates(Scheme::fdma, p);
    CHECK(f.n_rho == doctest::Approx(o.n_rho).epsilon(1e-12));
    CHECK(f.n_tau == doctest::Approx(o.n_tau).epsilon(1e-12));
  }
  SUBCASE("longer prefix slows the rate") {
    p.cp_length = 52;
    const auto r = measurement_rates(Scheme::ocdm, p);
    CHECK(r.n_rho == doctest::Approx(3246.7532468).epsilon(1e-9));
  }
  SUBCASE("single modem produces no transferograms") {
    p.n_plm = 1;
    const auto r = measurement_rates(Scheme::ocdm, p);
    CHECK(r.n_tau == 0.0);
  }
}

TEST_CASE("estimate sinr") {
  const std::vector<double> truth = {1.0, 0.0, 0.5, 0.0};
  SUBCASE("exact estimate hits the +inf sentinel") {
    CHECK_FALSE(estimate_sinr(truth, truth).has_value());
  }
  SUBCASE("known error power") {
    std::vector<double> est = truth;
    est[1] += 0.1;
    est[3] -= 0.1;
    // signal 1.25, error 0.02 -> 17.959 dB
    const auto sinr = estimate_sinr(est, truth);
    REQUIRE(sinr.has_value());
    CHECK(*sinr == doctest::Approx(10.0 * std::log10(1.25 / 0.02)).epsilon(1e-12));
  }
  SUBCASE("0 dB when error power equals signal power") {
    const std::vector<double> t2 = {1.0};
    const std::vector<double> est = {2.0};
    const auto sinr = estimate_sinr(est, t2);
    REQUIRE(sinr.has_value());
    CHECK(*sinr == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("scaling both inputs leaves the ratio unchanged") {
    std::vector<double> est = truth;
    est[0] += 0.3;
    const auto a = estimate_sinr(est, truth);
    std::vector<double> est2 = est, t2 = truth;
    for (auto& v : est2) v *= 7.0;
    for (auto& v : t2) v *= 7.0;
    const auto b = estimate_sinr(est2, t2);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == doctest::Approx(*b).epsilon(1e-12));
  }
  SUBCASE("estimate longer than truth scores the tail as error") {
    const std::vector<double> t2 = {1.0};
    const std::vector<double> est = {1.0, 0.1};
    const auto sinr = estimate_sinr(est, t2);
    REQUIRE(sinr.has_value());
    CHECK(*sinr == doctest::Approx(20.0).epsilon(1e-12));
  }
  SUBCASE("errors") {
    const std::vector<double> zero = {0.0, 0.0};
    CHECK_THROWS_AS(estimate_sinr(zero, zero), std::invalid_argument);
    const std::vector<double> est = {1.0};
    CHECK_THROWS_AS(estimate_sinr(est, truth), std::invalid_argument);
  }
}

TEST_CASE("sidelobe metrics") {
  SUBCASE("single sidelobe at -20 dB") {
    const std::vector<double> w = {1.0, 0.1};
    const auto r = sidelobe_metrics(w);
    REQUIRE(r.pslr_db.has_value());
    CHECK(*r.pslr_db == doctest::Approx(-20.0).epsilon(1e-12));
    REQUIRE(r.islr_db.has_value());
    CHECK(*r.islr_db == doctest::Approx(-20.0).epsilon(1e-12));
  }
  SUBCASE("two equal sidelobes integrate to -16.99 dB") {
    const std::vector<double> w = {0.1, 1.0, -0.1};
    const auto r = sidelobe_metrics(w);
    CHECK(*r.pslr_db == doctest::Approx(-20.0).epsilon(1e-12));
    CHECK(*r.islr_db == doctest::Approx(10.0 * std::log10(0.02)).epsilon(1e-12));
  }
  SUBCASE("ideal pulse has no sidelobes") {
    const std::vector<double> w = {1.0, 0.0, 0.0, 0.0};
    const auto r = sidelobe_metrics(w);
    CHECK_FALSE(r.pslr_db.has_value());
    CHECK_FALSE(r.islr_db.has_value());
  }
  SUBCASE("peak sign does not matter") {
    const std::vector<double> w = {0.2, -1.0, 0.1};
    const auto r = sidelobe_metrics(w);
    CHECK(*r.pslr_db == doctest::Approx(10.0 * std::log10(0.04)).epsilon(1e-12));
  }
  SUBCASE("errors") {
    const std::vector<double> empty;
    CHECK_THROWS_AS(sidelobe_metrics(empty), std::invalid_argument);
    const std::vector<double> zeros(4, 0.0);
    CHECK_THROWS_AS(sidelobe_metrics(zeros), std::invalid_argument);
  }
}

TEST_CASE("sinc interpolation") {
  SUBCASE("constant input stays constant") {
    const std::vector<double> w(8, 0.7);
    const auto up = sinc_interpolate(w, 4);
    REQUIRE(up.size() == 32);
    for (double v : up) CHECK(v == doctest::Approx(0.7).epsilon(1e-12));
  }
  SUBCASE("original samples preserved at the upsampling stride") {
    const std::vector<double> w = {0.3, -1.2, 0.5, 2.0, -0.4, 0.0, 0.9, -0.7};
    for (std::size_t factor : {2u, 3u, 8u}) {
      const auto up = sinc_interpolate(w, factor);
      REQUIRE(up.size() == w.size() * factor);
      for (std::size_t k = 0; k < w.size(); ++k)
        CHECK(up[k * factor] == doctest::Approx(w[k]).epsilon(1e-10));
    }
  }
  SUBCASE("pure tone is reproduced between samples") {
    const std::size_t l = 16, factor = 8;
    std::vector<double> w(l);
    for (std::size_t n = 0; n < l; ++n)
      w[n] = std::cos(2.0 * std::numbers::pi * 2.0 * double(n) / double(l) + 0.4);
    const auto up = sinc_interpolate(w, factor);
    for (std::size_t n = 0; n < up.size(); ++n) {
      const double expect =
          std::cos(2.0 * std::numbers::pi * 2.0 * double(n) / double(l * factor) + 0.4);
      CHECK(up[n] == doctest::Approx(expect).epsilon(1e-9));
    }
  }
  SUBCASE("refines a fractional-delay peak location") {
    // band-limited pulse centered between samples 5 and 6
    const std::size_t l = 32;
    const double delay = 5.5;
    std::vector<double> w(l, 0.0);
    for (std::size_t k = 0; k <= l / 2; ++k) {
      const double f = double(k) / double(l);
      const double scale = (k == 0 || k == l / 2) ? 1.0 : 2.0;
      for (std::size_t n = 0; n < l; ++n)
        w[n] += scale * std::cos(2.0 * std::numbers::pi * f * (double(n) - delay)) / double(l);
    }
    const auto up = sinc_interpolate(w, 8);
    std::size_t peak = 0;
    for (std::size_t n = 0; n < up.size(); ++n)
      if (up[n] > up[peak]) peak = n;
    CHECK(double(peak) / 8.0 == doctest::Approx(delay).epsilon(1e-9));
  }
  SUBCASE("errors") {
    const std::vector<double> w = {1.0, 2.0};
    CHECK_THROWS_AS(sinc_interpolate(w, 1), std::invalid_argument);
    const std::vector<double> empty;
    CHECK_THROWS_AS(sinc_interpolate(empty, 4), std::invalid_argument);
  }
}
