#include <benchmark/benchmark.h>

#include "ecdde/adjoint.hpp"
#include "ecdde/params.hpp"
#include "ecdde/pfun.hpp"
#include "ecdde/qstar.hpp"
#include "ecdde/special.hpp"

namespace {

using ecdde::Complex;

ecdde::QuadratureConfig bench_cfg() {
  ecdde::QuadratureConfig cfg;
  cfg.abs_tol = 1e-10;
  cfg.rel_tol = 1e-9;
  return cfg;
}

void BM_EinSmall(benchmark::State& state) {
  Complex z(3.0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(ecdde::ein(z));
}
BENCHMARK(BM_EinSmall);

void BM_EinLarge(benchmark::State& state) {
  Complex z(120.0, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(ecdde::ein(z));
}
BENCHMARK(BM_EinLarge);

void BM_GammaC(benchmark::State& state) {
  Complex z(-2.3, 4.1);
  for (auto _ : state) benchmark::DoNotOptimize(ecdde::gamma_c(z));
}
BENCHMARK(BM_GammaC);

void BM_QnCoeffs(benchmark::State& state) {
  ecdde::DdeParams p = ecdde::preset("iwaniec", 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(ecdde::qn_coeffs(p, 0.0, int(state.range(0)), -1));
}
BENCHMARK(BM_QnCoeffs)->Arg(8)->Arg(40);

void BM_QstarLaplace(benchmark::State& state) {
  ecdde::DdeParams p = ecdde::preset("iwaniec", 1.0);
  ecdde::QuadratureConfig cfg = bench_cfg();
  double u = double(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ecdde::qstar_laplace(p, u, cfg));
}
BENCHMARK(BM_QstarLaplace)->Arg(1)->Arg(10);

void BM_QstarHankel(benchmark::State& state) {
  ecdde::DdeParams p =
      ecdde::make_params({Complex(-0.5), Complex(-0.75)}, {0.0, 1.0});
  ecdde::QuadratureConfig cfg = bench_cfg();
  for (auto _ : state)
    benchmark::DoNotOptimize(ecdde::qstar_hankel(p, 5.0, cfg));
}
BENCHMARK(BM_QstarHankel);

void BM_SolvePDickman(benchmark::State& state) {
  ecdde::DdeParams p = ecdde::preset("dickman");
  ecdde::QuadratureConfig cfg = bench_cfg();
  double U = double(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ecdde::solve_p(p, U, cfg));
}
BENCHMARK(BM_SolvePDickman)->Arg(5)->Arg(25);

void BM_SolvePHalfSingular(benchmark::State& state) {
  // a = 1/2: exercises the graded handling of the sqrt kink at v_1.
  ecdde::DdeParams p = ecdde::preset("iwaniec", 0.5);
  ecdde::QuadratureConfig cfg = bench_cfg();
  for (auto _ : state)
    benchmark::DoNotOptimize(ecdde::solve_p(p, 8.0, cfg));
}
BENCHMARK(BM_SolvePHalfSingular);

void BM_AdjointWindow(benchmark::State& state) {
  ecdde::DdeParams p = ecdde::preset("iwaniec", 1.0);
  ecdde::QuadratureConfig cfg = bench_cfg();
  std::vector<double> grid{3.0, 5.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(ecdde::adjoint_constant(p, grid, cfg));
}
BENCHMARK(BM_AdjointWindow);

}  // namespace

BENCHMARK_MAIN();
