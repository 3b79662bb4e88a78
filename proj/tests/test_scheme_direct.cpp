#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace bumpfield;

namespace {

SampledFunction slice(const ConnectivityKernel& kernel, const WidthPair& pair,
                      double level_width, int n) {
  const Grid g(pair.delta_tau.half_width, pair.delta_zero.half_width, n);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = kernel.phi(g.point(i), level_width);
  return SampledFunction(g, std::move(v));
}

}  // namespace

TEST_CASE("unit-step fields are fixed in one application") {
  const auto& s = testsup::paper();
  const auto u0 = slice(s.kernel, s.pair, s.pair.delta_zero.half_width, 201);
  const auto utau = slice(s.kernel, s.pair, s.pair.delta_tau.half_width, 201);

  // base-threshold step: the upper profile reproduces itself
  const auto step0 = FiringRate::heaviside(0.0);
  const auto t_u0 = apply_Tf(s.kernel, step0, s.h, s.pair, u0);
  CHECK(t_u0.max_abs_diff(u0) <= 1e-8);

  // shifted step: the lower profile reproduces itself
  const auto step_tau = FiringRate::heaviside(s.tau);
  const auto t_utau = apply_Tf(s.kernel, step_tau, s.h, s.pair, utau);
  CHECK(t_utau.max_abs_diff(utau) <= 1e-8);

  // the smooth rate pushes the lower profile up, never down
  const auto t_smooth = apply_Tf(s.kernel, s.rate, s.h, s.pair, utau);
  for (int i = 0; i < utau.grid.n; ++i) {
    CHECK(t_smooth.values[i] >= utau.values[i] - 1e-10);
  }
}

TEST_CASE("operator input contract") {
  const auto& s = testsup::paper();
  auto outside = slice(s.kernel, s.pair, s.pair.delta_zero.half_width, 101);
  for (auto& v : outside.values) v += 0.1;
  try {
    apply_Tf(s.kernel, s.rate, s.h, s.pair, outside);
    FAIL("expected OrderViolationError");
  } catch (const OrderViolationError& e) {
    CHECK(e.amount == doctest::Approx(0.1).epsilon(1e-6));
  }

  const Grid wrong(0.0, 1.0, 101);
  const SampledFunction misplaced(wrong, std::vector<double>(101, 0.2));
  CHECK_THROWS_AS(apply_Tf(s.kernel, s.rate, s.h, s.pair, misplaced),
                  std::invalid_argument);
}

TEST_CASE("direct iteration: convergence, sandwich, uniqueness") {
  const auto& s = testsup::paper();
  const auto& run = testsup::paper_run();
  const auto& trace = run.direct.trace;

  CHECK(trace.converged);
  CHECK(trace.final_error() < 1e-8);
  const int settled = trace.settled_at(1e-5);
  CHECK(settled > 0);
  CHECK(settled <= 20);  // reference runs settle at n = 16

  for (std::size_t i = 0; i + 1 < trace.errors.size(); ++i) {
    CHECK(trace.errors[i + 1] <= trace.errors[i] + 1e-7);
  }

  // minimal and maximal limits coincide: the fixed point is unique
  CHECK(run.direct.upper.max_abs_diff(run.direct.lower) <= 1e-6);

  // fixed-point residual through one more application
  const auto again = apply_Tf(s.kernel, s.rate, s.h, s.pair, run.u_star);
  CHECK(again.max_abs_diff(run.u_star) <= 1e-7);

  // strictly decreasing across the interval
  for (std::size_t i = 0; i + 1 < run.u_star.values.size(); ++i) {
    CHECK(run.u_star.values[i + 1] < run.u_star.values[i]);
  }

  // sandwiched between the stable lower profile and the upper profile
  const double dst = testsup::paper().pair_stable.delta_tau.half_width;
  for (int i = 0; i < run.u_star.grid.n; ++i) {
    const double x = run.u_star.grid.point(i);
    CHECK(s.kernel.phi(x, dst) <= run.u_star.values[i] + 1e-9);
    CHECK(run.u_star.values[i] <= s.kernel.phi(x, s.pair.delta_zero.half_width) + 1e-9);
  }
}

TEST_CASE("monotone sandwich holds iteration by iteration") {
  const auto& s = testsup::paper();
  auto lower = slice(s.kernel, s.pair, s.pair.delta_tau.half_width, 401);
  auto upper = slice(s.kernel, s.pair, s.pair.delta_zero.half_width, 401);
  for (int n = 0; n < 18; ++n) {
    const auto next_lower = apply_Tf(s.kernel, s.rate, s.h, s.pair, lower);
    const auto next_upper = apply_Tf(s.kernel, s.rate, s.h, s.pair, upper);
    for (int i = 0; i < lower.grid.n; ++i) {
      CHECK(next_lower.values[i] >= lower.values[i] - 1e-7);
      CHECK(next_upper.values[i] <= upper.values[i] + 1e-7);
      CHECK(next_lower.values[i] <= next_upper.values[i] + 1e-7);
    }
    lower = next_lower;
    upper = next_upper;
  }
}

TEST_CASE("grid refinement leaves the fixed point unchanged") {
  const auto& s = testsup::paper();
  const auto& run = testsup::paper_run();
  DirectConfig fine;
  fine.grid_n = 801;
  const auto refined = iterate_direct(s.kernel, s.rate, s.h, s.pair, fine);
  const MonotoneCubic coarse(run.direct.upper);
  double worst = 0.0;
  for (int i = 0; i < refined.upper.grid.n; ++i) {
    worst = std::max(worst, std::abs(refined.upper.values[i] -
                                     coarse(refined.upper.grid.point(i))));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("extension produces a symmetric localized profile") {
  const auto& s = testsup::paper();
  const auto& run = testsup::paper_run();
  const auto& bump = run.bump;

  CHECK(bump.inner_crossing > s.pair.delta_tau.half_width);
  CHECK(bump.inner_crossing < bump.outer_crossing);
  CHECK(bump.outer_crossing < s.pair.delta_zero.half_width);

  const int mid = (bump.u.grid.n - 1) / 2;
  CHECK(bump.u.grid.point(mid) == 0.0);
  CHECK(bump.u.values[mid] > s.h + s.tau);
  CHECK(*std::max_element(bump.u.values.begin(), bump.u.values.end()) ==
        bump.u.values[mid]);

  for (int i = 0; i < bump.u.grid.n; ++i) {
    CHECK(std::abs(bump.u.values[i] - bump.u.values[bump.u.grid.n - 1 - i]) <= 1e-9);
  }

  const MonotoneCubic interp(bump.u);
  CHECK(std::abs(interp(bump.inner_crossing) - (s.h + s.tau)) <= 1e-6);
  CHECK(std::abs(interp(bump.outer_crossing) - s.h) <= 1e-6);

  CHECK_THROWS_AS(extend_bump(s.kernel, FiringRate::heaviside(0.0), s.h, s.pair,
                              run.u_star, run.extension_x, 801),
                  std::domain_error);
}

TEST_CASE("level crossings on the decreasing branch") {
  const auto& s = testsup::paper();
  const auto& bump = testsup::paper_run().bump;

  const auto at = level_crossings(bump, {s.h, s.h + s.tau, s.h + s.tau / 2});
  CHECK(std::abs(at[0] - bump.outer_crossing) <= 1e-6);
  CHECK(std::abs(at[1] - bump.inner_crossing) <= 1e-6);
  CHECK(at[2] > bump.inner_crossing);
  CHECK(at[2] < bump.outer_crossing);

  CHECK_THROWS_AS(level_crossings(bump, {1.0}), std::domain_error);
  CHECK_THROWS_AS(level_crossings(bump, {-1.0}), std::domain_error);
  try {
    level_crossings(bump, {2.5});
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("2.5") != std::string::npos);
  }
}

TEST_CASE("profiles that are not bumps are rejected with a witness") {
  // a secondary plateau past the main core breaks the interval structure
  auto two_humps = [](double x) {
    return 0.3 * std::exp(-x * x) + 0.12 * std::exp(-(std::abs(x) - 3.0) * (std::abs(x) - 3.0));
  };
  try {
    build_bump(two_humps, 0.1, 0.05, 6.0, 1201);
    FAIL("expected NotABumpError");
  } catch (const NotABumpError& e) {
    CHECK(std::isfinite(e.witness_x));
    CHECK(std::isfinite(e.value));
  }

  // a profile that never reaches h + tau cannot be a localized solution
  auto low = [](double x) { return 0.12 * std::exp(-x * x); };
  CHECK_THROWS_AS(build_bump(low, 0.1, 0.05, 6.0, 801), NotABumpError);
}
