// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <vector>

#include "hemiguard/kernels.hpp"

namespace hg = hemiguard;

namespace {

const hg::GameState kState(0.9, 0.3 * hg::kPi, 2.0);
const hg::GameParams kParams(0.8);

template <auto Kernel>
void BM_Argmax(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) {
    benchmark::DoNotOptimize(Kernel(kState, kParams, 0.9, 0.9 + 1.0471975512, n));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Kernel>
void BM_Barrier(benchmark::State& st) {
  std::vector<double> thetas(static_cast<std::size_t>(st.range(0)));
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    thetas[i] = hg::kPi * static_cast<double>(i) / static_cast<double>(thetas.size() - 1);
  }
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(0.3 * hg::kPi, 0.8, thetas));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Kernel>
void BM_Raster(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::vector<double> psis(n), radii(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    psis[i] = -hg::kPi + 2.0 * hg::kPi * u;
    radii[i] = 1.0 + 3.0 * u;
  }
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(0.3 * hg::kPi, kParams, psis, radii, 1e-6));
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

}  // namespace

BENCHMARK(BM_Argmax<hg::kernels::serial::payoff_argmax>)->Name("argmax/serial")->Arg(100000);
BENCHMARK(BM_Argmax<hg::kernels::parallel::payoff_argmax>)->Name("argmax/parallel")->Arg(100000);
BENCHMARK(BM_Barrier<hg::kernels::serial::barrier_samples>)->Name("barrier/serial")->Arg(4096);
BENCHMARK(BM_Barrier<hg::kernels::parallel::barrier_samples>)->Name("barrier/parallel")->Arg(4096);
BENCHMARK(BM_Raster<hg::kernels::serial::region_raster>)->Name("raster/serial")->Arg(64);
BENCHMARK(BM_Raster<hg::kernels::parallel::region_raster>)->Name("raster/parallel")->Arg(64);

BENCHMARK_MAIN();
