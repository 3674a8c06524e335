#include <benchmark/benchmark.h>

#include <cmath>

#include "wplab/geometry.hpp"
#include "wplab/plaplacian.hpp"

namespace {

using namespace wplab;

void BM_ApplyPLaplacian(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto space = line_model(3, 5.0);
  const auto v = RadialField::sample(RadialGrid(-4.0, 4.0, n), [](double t) { return std::exp(-t); });
  const PExponent p(3.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_p_laplacian(space, v, p, 0.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ApplyPLaplacian)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_SolveFirstEigen(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const double p = static_cast<double>(state.range(1)) / 2.0;
  const auto space = line_model(3, 3.0);
  const RadialGrid grid(-8.0, 8.0, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_first_eigen(space, grid, PExponent(p)).lambda);
}
// p = 2 and p = 3.
BENCHMARK(BM_SolveFirstEigen)->ArgsProduct({{1001, 4001}, {4, 6}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
