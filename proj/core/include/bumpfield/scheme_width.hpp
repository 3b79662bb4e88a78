#pragma once

#include "bumpfield/assumptions.hpp"
#include "bumpfield/scheme_direct.hpp"

namespace bumpfield {

struct WidthConfig {
  int grid_m = 201;
  double tol = 1e-8;
  int max_iter = 500;
  /// auto: step k = sigma / m with m from compute_m over the pair square.
  /// explicit: step must satisfy 0 < k < 1/m at run time.
  bool auto_k = true;
  double sigma = 0.9;
  double explicit_k = 0.0;
};

/// Outcome of the width-profile iteration over [0, tau].
struct WidthResult {
  SampledFunction lower;
  SampledFunction upper;
  IterationTrace trace;
  double realized_k = 0.0;
  double m_bound = 0.0;
  /// Posterior checks evaluated on the converged profile.
  AssumptionReport posterior;
  bool profile_decreasing = false;
};

/// Step size sigma / m for sigma in (0, 1); strictly below the 1/m bound.
double choose_k(double m, double sigma);

/// Density-weighted field of a width profile:
/// u(x) = integral over [0, tau] of rho(xi) Phi(x, profile(xi)) d xi,
/// with the profile evaluated through its monotone interpolant.
/// Requires a rate with a density.
double reconstruct_u_delta(const ConnectivityKernel& kernel, const FiringRate& rate,
                           const SampledFunction& profile, double x);

/// One step of the width iteration, node-wise
/// (A profile)(t) = profile(t) + k (u_profile(profile(t)) - t - h).
/// Results escaping [delta_tau - slack, delta_0 + slack] raise
/// DivergenceError (bad k).
SampledFunction apply_A(const ConnectivityKernel& kernel, const FiringRate& rate,
                        double h, const WidthPair& pair, double k,
                        const SampledFunction& profile);

/// Iterates from the constant profiles delta_tau (lower) and delta_zero
/// (upper) until eps(n) = max_t |upper - lower| < tol or max_iter.
/// Posterior checks and the monotone-decrease test run on the result.
WidthResult iterate_width(const ConnectivityKernel& kernel, const FiringRate& rate,
                          double h, double tau, const WidthPair& pair,
                          const WidthConfig& cfg = {});

/// Samples the density-weighted field of a converged profile on a
/// symmetric window and validates it with the same bump criteria as the
/// direct scheme.
BumpSolution reconstruct_bump(const ConnectivityKernel& kernel, const FiringRate& rate,
                              double h, double tau, const SampledFunction& profile,
                              double X, int out_n);

/// Relative disagreement between the width profile and the level
/// crossings of an independently constructed bump:
/// max_t |profile(t) - crossing(t + h)| / |crossing(t + h)|.
double cross_validate(const BumpSolution& direct_bump, const SampledFunction& profile);

}  // namespace bumpfield
