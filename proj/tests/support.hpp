#pragma once

// Shared fixtures for the standard Mexican-hat example plus independent
// oracles (Simpson quadrature, erf-based antiderivative, deterministic
// sampling) used to freeze expected values.

#include <cmath>
#include <cstdint>
#include <functional>

#include "bumpfield/assumptions.hpp"
#include "bumpfield/dynamics.hpp"
#include "bumpfield/kernels.hpp"
#include "bumpfield/numerics.hpp"
#include "bumpfield/scheme_direct.hpp"
#include "bumpfield/scheme_width.hpp"
#include "bumpfield/widths.hpp"

namespace testsup {

using namespace bumpfield;

// Deterministic sampler; keeps every "random" check reproducible.
struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  double uniform(double lo, double hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const double unit = static_cast<double>(state >> 11) / 9007199254740992.0;
    return lo + (hi - lo) * unit;
  }
};

// Composite Simpson rule, independent of the library quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; i += 2) acc += 4.0 * f(a + i * h);
  for (int i = 2; i < n; i += 2) acc += 2.0 * f(a + i * h);
  return acc * h / 3.0;
}

// Closed-form antiderivative of the Gaussian-difference coupling.
inline double w_oracle(double K, double k, double M, double m, double x) {
  constexpr double kSqrtPi = 1.7724538509055160273;
  return 0.5 * K * kSqrtPi / std::sqrt(k) * std::erf(std::sqrt(k) * x) -
         0.5 * M * kSqrtPi / std::sqrt(m) * std::erf(std::sqrt(m) * x);
}

// Standard example oracle: bisection on the erf closed form to 1e-13.
inline double w_oracle_root(double level, double lo, double hi) {
  auto f = [&](double x) { return w_oracle(1.5, 2.0, 1.0, 1.0, x) - level; };
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0) != (fm < 0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

struct PaperSetup {
  ConnectivityKernel kernel;
  FiringRate rate;
  double h;
  double tau;
  std::vector<WidthSolution> at_h;
  std::vector<WidthSolution> at_h_tau;
  WidthPair pair;         // smallest-unstable: (0.1769..., 0.6633...)
  WidthPair pair_stable;  // largest-stable:   (0.5012..., 0.6633...)
};

inline const PaperSetup& paper() {
  static const PaperSetup setup = [] {
    ConnectivityKernel kernel = ConnectivityKernel::gaussian_difference(1.5, 2.0, 1.0, 1.0);
    FiringRate rate = FiringRate::logoid(0.05, 3.0);
    const double h = 0.1;
    const double tau = 0.05;
    const double upper = kernel.scan_upper_default();
    auto at_h = solve_half_widths(kernel, h, upper);
    auto at_h_tau = solve_half_widths(kernel, h + tau, upper);
    WidthPair pair = select_width_pair(at_h, at_h_tau, PairPolicy::smallest_unstable());
    WidthPair pair_stable =
        select_width_pair(at_h, at_h_tau, PairPolicy::largest_stable());
    return PaperSetup{std::move(kernel), std::move(rate), h,    tau,
                      std::move(at_h),   std::move(at_h_tau), pair, pair_stable};
  }();
  return setup;
}

struct PaperRun {
  DirectResult direct;
  SampledFunction u_star;  // midpoint of the converged pair
  BumpSolution bump;
  double m;
  WidthResult width;
  BumpSolution bump_from_profile;
  double extension_x;
};

inline const PaperRun& paper_run() {
  static const PaperRun run = [] {
    const PaperSetup& s = paper();
    DirectResult direct = iterate_direct(s.kernel, s.rate, s.h, s.pair);
    std::vector<double> mid(direct.lower.values.size());
    for (std::size_t i = 0; i < mid.size(); ++i) {
      mid[i] = 0.5 * (direct.lower.values[i] + direct.upper.values[i]);
    }
    SampledFunction u_star(direct.lower.grid, std::move(mid));
    const double X = extension_halfwidth_default(s.kernel, s.pair);
    BumpSolution bump = extend_bump(s.kernel, s.rate, s.h, s.pair, u_star, X, 1201);
    const double m = compute_m(s.kernel, s.pair.delta_tau.half_width,
                               s.pair.delta_zero.half_width);
    WidthResult width = iterate_width(s.kernel, s.rate, s.h, s.tau, s.pair);
    BumpSolution bump_w =
        reconstruct_bump(s.kernel, s.rate, s.h, s.tau, width.upper, X, 1201);
    return PaperRun{std::move(direct), std::move(u_star), std::move(bump), m,
                    std::move(width),  std::move(bump_w), X};
  }();
  return run;
}

}  // namespace testsup
