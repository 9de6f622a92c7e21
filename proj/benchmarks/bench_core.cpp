#include <benchmark/benchmark.h>

#include "hallmhd/lp/layout.hpp"
#include "hallmhd/lp/lemmas.hpp"
#include "hallmhd/solver/solver.hpp"
#include "hallmhd/spectral/operators.hpp"
#include "hallmhd/spectral/random.hpp"

using namespace hallmhd;

namespace {

spectral::MhdState random_state(int n) {
  const auto g = spectral::Grid::make(2, n);
  const spectral::RandomSpectrum band{6.0, 2.0, spectral::Envelope::power};
  return {spectral::random_field(g, 3, 1, band, true), 0.5 * spectral::random_field(g, 3, 2, band, true), 0.0};
}

void BM_RoundTrip(benchmark::State& st) {
  const auto f = random_state(int(st.range(0))).u;
  for (auto _ : st) benchmark::DoNotOptimize(spectral::transform_to_spectral(spectral::transform_to_physical(f)));
}
BENCHMARK(BM_RoundTrip)->Arg(64)->Arg(128)->Arg(256);

void BM_Rhs(benchmark::State& st) {
  const auto s = random_state(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solver::rhs(s));
}
BENCHMARK(BM_Rhs)->Arg(64)->Arg(128);

void BM_Step(benchmark::State& st) {
  auto s = random_state(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solver::step(s, 1e-3, 1.0));
}
BENCHMARK(BM_Step)->Arg(64)->Arg(128);

void BM_HallTerm(benchmark::State& st) {
  const auto s = random_state(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(spectral::hall_term(s.b));
}
BENCHMARK(BM_HallTerm)->Arg(64)->Arg(128);

void BM_Block(benchmark::State& st) {
  const auto s = random_state(128);
  const lp::Layout layout(s.u.grid_ptr());
  for (auto _ : st) benchmark::DoNotOptimize(layout.block(s.u, int(st.range(0))));
}
BENCHMARK(BM_Block)->DenseRange(0, 6, 3);

void BM_ProductSweep(benchmark::State& st) {
  const auto g = spectral::Grid::make(2, 64);
  lp::SweepOptions o;
  o.seeds = 5;
  for (auto _ : st) benchmark::DoNotOptimize(lp::product_sweep(g, 2.5, o));
}
BENCHMARK(BM_ProductSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
