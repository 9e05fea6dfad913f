// Microbenchmarks for the hot paths: tridiagonal eigensolve, Hamiltonian
// application, the integrators, and the Monte Carlo sweep loops.

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "phwo/qa.hpp"
#include "phwo/sa.hpp"
#include "phwo/spectral.hpp"
#include "phwo/sqa.hpp"
#include "phwo/svd.hpp"

namespace {

void bm_spectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto cost = phwo::make_plateau(n, 0, 6);
  auto h = phwo::build(cost, 0.5);
  for (auto _ : state) {
    auto slice = phwo::spectrum(h, 10, false);
    benchmark::DoNotOptimize(slice.eigenvalues.data());
  }
}
BENCHMARK(bm_spectrum)->Arg(128)->Arg(512)->Arg(2048);

void bm_apply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto cost = phwo::make_plateau(n, 0, 6);
  auto h = phwo::build(cost, 0.5);
  std::vector<std::complex<double>> x(n + 1, {1.0, 0.5}), y(n + 1);
  for (auto _ : state) {
    phwo::apply(h, x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(bm_apply)->Arg(512)->Arg(4096);

void bm_evolve_qa(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto cost = phwo::make_plateau(n, 0, 6);
  for (auto _ : state) {
    auto traj = phwo::evolve(cost, 10.0, {}, {1.0});
    benchmark::DoNotOptimize(traj.states.back().amplitudes.data());
  }
}
BENCHMARK(bm_evolve_qa)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_evolve_svd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto cost = phwo::make_plateau(n, 0, 6);
  for (auto _ : state) {
    auto traj = phwo::evolve_svd(cost, 10.0, {}, {1.0});
    benchmark::DoNotOptimize(traj.samples.back().angles.theta);
  }
}
BENCHMARK(bm_evolve_svd)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void bm_sa_sweeps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto cost = phwo::make_plateau(n, 0, 3);
  phwo::SAConfig cfg;
  cfg.sweeps = 1000;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = seed++;
    auto res = phwo::run_sa(cost, cfg);
    benchmark::DoNotOptimize(res.final_w);
  }
  state.SetItemsProcessed(state.iterations() * 1000 * n);  // spin updates
}
BENCHMARK(bm_sa_sweeps)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void bm_sqa_sweeps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto cost = phwo::make_plateau(n, 0, 3);
  phwo::SQAConfig cfg;
  cfg.beta = 64.0;
  cfg.n_tau = 8;
  cfg.sweeps = 200;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = seed++;
    auto res = phwo::run_sqa(cost, cfg);
    benchmark::DoNotOptimize(res.final_w);
  }
}
BENCHMARK(bm_sqa_sweeps)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_landscape(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto cost = phwo::make_plateau(n, 0, 6);
  for (auto _ : state) {
    auto minima = phwo::landscape_scan(cost, 0.89);
    benchmark::DoNotOptimize(minima.data());
  }
}
BENCHMARK(bm_landscape)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
