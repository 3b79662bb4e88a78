#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace bumpfield;

TEST_CASE("rest state is an exact equilibrium") {
  const auto& s = testsup::paper();
  const Grid g(-3.0, 3.0, 201);
  EvolutionState state{SampledFunction(g, std::vector<double>(g.n, 0.0)), 0.0};
  const auto out = evolve(s.kernel, s.rate, s.h, state, 0.25, 100);
  for (double v : out.u.values) CHECK(v == 0.0);
  CHECK(out.time == doctest::Approx(25.0));
}

TEST_CASE("time step validation") {
  const auto& s = testsup::paper();
  const Grid g(-1.0, 1.0, 11);
  EvolutionState state{SampledFunction(g, std::vector<double>(11, 0.0)), 0.0};
  CHECK_THROWS_AS(evolve(s.kernel, s.rate, s.h, state, 0.6, 1), std::invalid_argument);
  CHECK_THROWS_AS(evolve(s.kernel, s.rate, s.h, state, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(evolve(s.kernel, s.rate, s.h, state, 0.1, -1), std::invalid_argument);
}

TEST_CASE("constructed bump is discretely stationary and holds its shape") {
  const auto& s = testsup::paper();
  const auto& bump = testsup::paper_run().bump;

  CHECK(stationarity_residual(s.kernel, s.rate, s.h, bump.u) <= 1e-4);

  EvolutionState state{bump.u, 0.0};
  const auto evolved = evolve(s.kernel, s.rate, s.h, state, 0.05, 400);  // t = 20
  double drift = 0.0;
  for (int i = 0; i < bump.u.grid.n; ++i) {
    drift = std::max(drift, std::abs(evolved.u.values[i] - bump.u.values[i]));
  }
  CHECK(drift <= 1e-4);
}

TEST_CASE("halving the time step changes the outcome at first order") {
  const auto& s = testsup::paper();
  const auto& bump = testsup::paper_run().bump;

  // start slightly off equilibrium so the comparison sees real dynamics
  std::vector<double> v = bump.u.values;
  for (int i = 0; i < bump.u.grid.n; ++i) {
    const double x = bump.u.grid.point(i);
    v[i] += 1e-3 * std::exp(-x * x);
  }
  EvolutionState start{SampledFunction(bump.u.grid, v), 0.0};

  const auto coarse = evolve(s.kernel, s.rate, s.h, start, 0.2, 10);   // t = 2
  const auto fine = evolve(s.kernel, s.rate, s.h, start, 0.1, 20);     // t = 2
  const auto finer = evolve(s.kernel, s.rate, s.h, start, 0.05, 40);   // t = 2
  double d1 = 0.0, d2 = 0.0;
  for (int i = 0; i < bump.u.grid.n; ++i) {
    d1 = std::max(d1, std::abs(coarse.u.values[i] - fine.u.values[i]));
    d2 = std::max(d2, std::abs(fine.u.values[i] - finer.u.values[i]));
  }
  CHECK(d1 > 0.0);
  CHECK(d2 <= 0.75 * d1);  // first order: halving dt roughly halves the change
}

TEST_CASE("whole-cell shifts commute with evolution exactly") {
  const auto& s = testsup::paper();
  const Grid g(-8.0, 8.0, 401);
  // compactly supported initial activity: identically zero beyond |x| < 1.5
  auto hump = [](double x) {
    const double w = 1.0 - (x / 1.5) * (x / 1.5);
    return w > 0.0 ? 0.3 * w * w * w : 0.0;
  };
  std::vector<double> base(g.n);
  for (int i = 0; i < g.n; ++i) base[i] = hump(g.point(i));

  const int shift = 5;
  std::vector<double> shifted(g.n, 0.0);
  for (int i = shift; i < g.n; ++i) shifted[i] = base[i - shift];

  EvolutionState a{SampledFunction(g, base), 0.0};
  EvolutionState b{SampledFunction(g, shifted), 0.0};
  const auto ea = evolve(s.kernel, s.rate, s.h, a, 0.1, 50);
  const auto eb = evolve(s.kernel, s.rate, s.h, b, 0.1, 50);

  for (int i = shift; i < g.n; ++i) {
    CHECK(eb.u.values[i] == ea.u.values[i - shift]);
  }
}

TEST_CASE("stability probe: smooth-field bump returns") {
  const auto& s = testsup::paper();
  const auto& bump = testsup::paper_run().bump;

  const auto quiet = probe_stability(s.kernel, s.rate, s.h, bump, 0.0, 5.0);
  CHECK(quiet.verdict == ProbeVerdict::Returned);
  CHECK(quiet.final_deviation <= 1e-5);

  const auto probe = probe_stability(s.kernel, s.rate, s.h, bump, 1e-3, 10.0);
  CHECK(probe.verdict == ProbeVerdict::Returned);
  CHECK(probe.final_deviation < 5e-4);
  CHECK(probe.max_deviation >= probe.final_deviation);
  CHECK(probe.history.front().second == doctest::Approx(1e-3).epsilon(1e-6));

  CHECK_THROWS_AS(probe_stability(s.kernel, s.rate, s.h, bump, 0.1, 1.0),
                  std::invalid_argument);
}

TEST_CASE("stability probe: narrow step-field bump departs") {
  const auto& s = testsup::paper();
  const auto& bump = testsup::paper_run().bump;
  const double dt_width = s.pair.delta_tau.half_width;

  // unit-step field at the shifted threshold: its narrow bump has
  // positive coupling at the full width, hence unstable
  CHECK(s.kernel.omega(2 * dt_width) > 0.0);
  const Grid& g = bump.u.grid;
  std::vector<double> v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = s.kernel.phi(g.point(i), dt_width);
  const BumpSolution narrow{SampledFunction(g, std::move(v)), dt_width, dt_width,
                            s.h + s.tau, 0.0};

  const auto probe = probe_stability(s.kernel, FiringRate::heaviside(0.0),
                                     s.h + s.tau, narrow, 1e-3, 30.0);
  CHECK(probe.verdict == ProbeVerdict::Departed);
  CHECK(probe.max_deviation > 0.1);
}
