#include <benchmark/benchmark.h>

#include <vector>

#include "bumpfield/assumptions.hpp"
#include "bumpfield/dynamics.hpp"
#include "bumpfield/kernels.hpp"
#include "bumpfield/numerics.hpp"
#include "bumpfield/scheme_direct.hpp"
#include "bumpfield/scheme_width.hpp"
#include "bumpfield/widths.hpp"

using namespace bumpfield;

namespace {

struct Setup {
  ConnectivityKernel kernel = ConnectivityKernel::gaussian_difference(1.5, 2.0, 1.0, 1.0);
  FiringRate rate = FiringRate::logoid(0.05, 3.0);
  double h = 0.1;
  WidthPair pair = [this] {
    const double upper = kernel.scan_upper_default();
    return select_width_pair(solve_half_widths(kernel, h, upper),
                             solve_half_widths(kernel, h + 0.05, upper),
                             PairPolicy::smallest_unstable());
  }();
};

const Setup& setup() {
  static const Setup s;
  return s;
}

}  // namespace

static void BM_Antiderivative(benchmark::State& state) {
  const auto& s = setup();
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.kernel.antiderivative(x));
    x += 1e-6;
  }
}
BENCHMARK(BM_Antiderivative);

static void BM_Potential(benchmark::State& state) {
  const auto& s = setup();
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.kernel.phi(x, 0.5));
    x += 1e-6;
  }
}
BENCHMARK(BM_Potential);

static void BM_Quadrature(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate([&](double x) { return s.kernel.omega(x); }, 0.0, 1.3266));
  }
}
BENCHMARK(BM_Quadrature);

static void BM_DirectStep(benchmark::State& state) {
  const auto& s = setup();
  const int n = static_cast<int>(state.range(0));
  const Grid g(s.pair.delta_tau.half_width, s.pair.delta_zero.half_width, n);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = s.kernel.phi(g.point(i), g.b);
  const SampledFunction u(g, v);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_Tf(s.kernel, s.rate, s.h, s.pair, u));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_DirectStep)->RangeMultiplier(2)->Range(101, 801)->Complexity();

static void BM_WidthStep(benchmark::State& state) {
  const auto& s = setup();
  const int n = static_cast<int>(state.range(0));
  const double m = compute_m(s.kernel, s.pair.delta_tau.half_width,
                             s.pair.delta_zero.half_width, 101);
  const double k = choose_k(m, 0.9);
  const SampledFunction profile(
      Grid(0.0, 0.05, n), std::vector<double>(n, s.pair.delta_zero.half_width));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_A(s.kernel, s.rate, s.h, s.pair, k, profile));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_WidthStep)->RangeMultiplier(2)->Range(51, 401)->Complexity();

static void BM_EvolveStep(benchmark::State& state) {
  const auto& s = setup();
  const int n = static_cast<int>(state.range(0));
  const Grid g(-5.0, 5.0, n);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = s.kernel.phi(g.point(i), s.pair.delta_zero.half_width);
  }
  EvolutionState st{SampledFunction(g, v), 0.0};
  for (auto _ : state) {
    st = evolve(s.kernel, s.rate, s.h, std::move(st), 0.05, 1);
    benchmark::DoNotOptimize(st.u.values.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_EvolveStep)->RangeMultiplier(2)->Range(201, 1601)->Complexity();

static void BM_Interpolation(benchmark::State& state) {
  const Grid g(0.0, 1.0, 401);
  std::vector<double> v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = g.point(i) * g.point(i);
  const MonotoneCubic interp(SampledFunction(g, v));
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(interp(x));
    x += 1e-7;
    if (x > 1.0) x = 0.0;
  }
}
BENCHMARK(BM_Interpolation);

BENCHMARK_MAIN();
