#include <benchmark/benchmark.h>

#include <numbers>

#include "hermvp/quadrature.hpp"
#include "hermvp/trapezoidal.hpp"
#include "hermvp/vlasov_poisson.hpp"

using namespace hermvp;

namespace {

VPConfig landau_config(int N, int Mx) {
  VPConfig cfg;
  cfg.N = N;
  cfg.Mx = Mx;
  cfg.k = 3;
  cfg.nu = 0.1;
  cfg.dt = time_step_heuristic(cfg.nu, N);
  cfg.Lx = 4 * std::numbers::pi;
  return cfg;
}

void BM_GaussHermite(benchmark::State& state) {
  const int Q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_hermite(Q));
}
BENCHMARK(BM_GaussHermite)->Arg(16)->Arg(64)->Arg(136);

void BM_TrapStep(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::vector<double> c(static_cast<std::size_t>(N + 1), 0.0);
  c[0] = 1.0;
  const AdvectionSystem sys(CoefficientVector(HermiteBasis(BasisKind::AW, N), c), LBOperator(BasisKind::AW, 1, 1.0, N));
  auto s = TrapState::start(sys, time_step_heuristic(1.0, N));
  for (auto _ : state) {
    s = trap_step(s, sys);
    benchmark::DoNotOptimize(s.c[1]);
  }
}
BENCHMARK(BM_TrapStep)->Arg(32)->Arg(128);

void BM_VlasovRhs(benchmark::State& state) {
  const auto cfg = landau_config(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  VlasovPoissonSolver solver(cfg, LBOperator(BasisKind::AW, cfg.k, cfg.nu, cfg.N));
  const auto f = CoefficientField::landau(cfg.N, cfg.Mx, cfg.Lx, 0.01);
  const auto E = poisson_solve(f).E;
  for (auto _ : state) benchmark::DoNotOptimize(solver.rhs(f, E));
}
BENCHMARK(BM_VlasovRhs)->Args({32, 8})->Args({64, 32});

void BM_VpStep(benchmark::State& state) {
  const auto cfg = landau_config(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  VlasovPoissonSolver solver(cfg, LBOperator(BasisKind::AW, cfg.k, cfg.nu, cfg.N));
  auto f = CoefficientField::landau(cfg.N, cfg.Mx, cfg.Lx, 0.01);
  for (auto _ : state) {
    auto res = solver.step(f);
    f = std::move(res.state);
  }
}
BENCHMARK(BM_VpStep)->Args({32, 8})->Args({64, 32});

}  // namespace
BENCHMARK_MAIN();
