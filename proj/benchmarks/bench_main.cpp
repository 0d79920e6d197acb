#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "plcsense/baselines.hpp"
#include "plcsense/chanmodel.hpp"
#include "plcsense/fresnel.hpp"
#include "plcsense/tdr.hpp"

namespace {

using namespace plcsense;

std::vector<double> random_vector(std::size_t m) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> v(m);
  for (auto& x : v) x = g(rng);
  return v;
}

void bm_fresnel_forward(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const auto basis = fresnel::FresnelBasis::create(m);
  const auto x = random_vector(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(basis.forward(x));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(m));
}
BENCHMARK(bm_fresnel_forward)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void bm_noise_synthesis(benchmark::State& state) {
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  const chanmodel::NoiseModel model;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chanmodel::generate_noise(model, 1e6, len, seed++));
  }
}
BENCHMARK(bm_noise_synthesis)->Arg(286)->Arg(1024);

void bm_campaign_symbol(benchmark::State& state) {
  const std::size_t n_plm = static_cast<std::size_t>(state.range(0));
  tdr::SystemParams params;
  params.n_plm = n_plm;
  chanmodel::SensingScenario sc;
  sc.n_plm = n_plm;
  sc.v_p_mps = 2.56e8;
  sc.channels.assign(n_plm * n_plm,
                     chanmodel::ImpulseResponse{{0.0, 0.5, 0.0, 0.2}, 1e-6});
  chanmodel::NoiseModel noise;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tdr::run_campaign(params, sc, noise, 1, seed++));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(bm_campaign_symbol)->Arg(1)->Arg(4)->Arg(16);

void bm_cdma_block(benchmark::State& state) {
  tdr::SystemParams params;
  params.n_plm = 4;
  chanmodel::SensingScenario sc;
  sc.n_plm = 4;
  sc.v_p_mps = 2.56e8;
  sc.channels.assign(16, chanmodel::ImpulseResponse{{0.0, 0.5}, 1e-6});
  chanmodel::NoiseModel noise;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(baselines::run_campaign_baseline(
        baselines::Scheme::cdma, params, sc, noise, 4, seed++));
  }
}
BENCHMARK(bm_cdma_block);

}  // namespace

BENCHMARK_MAIN();
