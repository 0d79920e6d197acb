#include "plcsense/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace plcsense::fft {

namespace {

// FFTW plan creation is not thread safe; execution with fftw_execute_dft is.
std::mutex g_plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> buf(n);
  auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, sign, FFTW_ESTIMATE);
  cache.emplace(key, p);
  return p;
}

}  // namespace

std::vector<std::complex<double>> transform(std::span<const std::complex<double>> in,
                                            bool inverse) {
  if (in.empty()) throw std::invalid_argument("fft: empty input");
  std::vector<std::complex<double>> out(in.begin(), in.end());
  fftw_plan p;
  {
    std::lock_guard lock(g_plan_mutex);
    p = plan_for(in.size(), inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  }
  auto* ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(p, ptr, ptr);
  return out;
}

std::vector<std::complex<double>> forward(std::span<const double> in) {
  std::vector<std::complex<double>> c(in.begin(), in.end());
  return transform(c, false);
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> in) {
  auto out = transform(in, true);
  const double scale = 1.0 / static_cast<double>(in.size());
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace plcsense::fft
