// Microbenchmarks for the numerical hot paths: the two-index Hermite
// kernel, single-point closed-form evaluations at production orders, the
// headline full-grid job, displacement of a truncated Fock vector, and the
// radial zero scan.  Build with -DSUBPLANCK_BUILD_BENCHMARKS=ON (needs
// google-benchmark); run ./benchmarks/bench_core.

#include <benchmark/benchmark.h>

#include <subplanck/analysis.hpp>
#include <subplanck/closedform.hpp>
#include <subplanck/fock.hpp>
#include <subplanck/specialfn.hpp>
#include <subplanck/states.hpp>

#include <complex>

using subplanck::Complex;
namespace an = subplanck::analysis;
namespace cf = subplanck::closedform;
namespace fk = subplanck::fock;
namespace sf = subplanck::specialfn;
namespace st = subplanck::states;

namespace {

st::StateSpec kitten(st::Mode mode, int r, int q) {
  st::StateSpec spec;
  spec.family = st::Family::compass;
  spec.c0 = 1.0;
  spec.mode = mode;
  spec.r = r;
  spec.q = q;
  return spec;
}

void BM_hermite2(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const Complex x{0.83, 1.12};
  const Complex y{-1.31, 0.44};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::hermite2(m, n, x, y));
  }
}
BENCHMARK(BM_hermite2)->Args({8, 6})->Args({24, 20});

void BM_wigner_point(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const int q = static_cast<int>(state.range(1));
  const cf::PointEvaluator w(kitten(st::Mode::sa, r, q),
                             cf::PointEvaluator::Quantity::wigner);
  const Complex beta{0.21, -0.34};
  for (auto _ : state) {
    benchmark::DoNotOptimize(w(beta));
  }
}
BENCHMARK(BM_wigner_point)->Args({12, 12})->Args({24, 20});

void BM_wigner_point_subtract_first(benchmark::State& state) {
  const cf::PointEvaluator w(kitten(st::Mode::as, 22, 18),
                             cf::PointEvaluator::Quantity::wigner);
  const Complex beta{0.21, -0.34};
  for (auto _ : state) {
    benchmark::DoNotOptimize(w(beta));
  }
}
BENCHMARK(BM_wigner_point_subtract_first);

void BM_sensitivity_point(benchmark::State& state) {
  const cf::PointEvaluator s(kitten(st::Mode::sa, 24, 20),
                             cf::PointEvaluator::Quantity::sensitivity);
  const Complex delta{0.12, 0.07};
  for (auto _ : state) {
    benchmark::DoNotOptimize(s(delta));
  }
}
BENCHMARK(BM_sensitivity_point);

// The headline job: the deepest deformation over the default-size window.
void BM_eval_grid_deep(benchmark::State& state) {
  const cf::PointEvaluator w(kitten(st::Mode::sa, 24, 20),
                             cf::PointEvaluator::Quantity::wigner);
  an::GridSpec gs;  // [-4,4]^2
  gs.nx = 201;
  gs.np = 201;
  for (auto _ : state) {
    benchmark::DoNotOptimize(an::eval_grid(w, gs));
  }
  state.SetItemsProcessed(state.iterations() * gs.nx * gs.np);
}
BENCHMARK(BM_eval_grid_deep)->Unit(benchmark::kMillisecond);

void BM_displace_fock(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  const auto v = fk::coherent_fock(Complex{0.9, 0.4}, cutoff);
  const Complex delta{0.8, -0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fk::displace_fock(v, delta));
  }
}
BENCHMARK(BM_displace_fock)->Arg(64)->Arg(128);

void BM_zero_profile(benchmark::State& state) {
  const cf::PointEvaluator s(kitten(st::Mode::sa, 12, 12),
                             cf::PointEvaluator::Quantity::sensitivity);
  for (auto _ : state) {
    benchmark::DoNotOptimize(an::zero_profile(s, 16, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * 16);
}
BENCHMARK(BM_zero_profile)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
