#pragma once

#include <functional>
#include <vector>

#include "bumpfield/kernels.hpp"
#include "bumpfield/numerics.hpp"
#include "bumpfield/widths.hpp"

namespace bumpfield {

struct DirectConfig {
  int grid_n = 401;
  double tol = 1e-8;
  int max_iter = 200;
  /// Tolerated pointwise excursion outside the ordered interval before
  /// apply_Tf raises an order violation.
  double order_slack = 1e-7;
};

/// Per-iteration distance between the upper and lower sequences,
/// eps(n) = max over grid nodes of |v_n - w_n|.
struct IterationTrace {
  std::vector<double> errors;  // errors[n-1] = eps(n)
  bool converged = false;
  int iterations = 0;

  double final_error() const { return errors.empty() ? 0.0 : errors.back(); }
  /// Smallest n such that eps(i) < bound for every i >= n; 0 when the
  /// tail never stays below the bound.
  int settled_at(double bound) const;
};

/// Stationary localized profile sampled on a symmetric window [-X, X].
/// inner_crossing is where u passes h + tau on the decreasing branch,
/// outer_crossing where it passes h.
struct BumpSolution {
  SampledFunction u;
  double inner_crossing = 0.0;
  double outer_crossing = 0.0;
  double h = 0.0;
  double tau = 0.0;
};

struct DirectResult {
  SampledFunction lower;
  SampledFunction upper;
  IterationTrace trace;
};

/// One application of the fixed-point operator on [delta_tau, delta_zero]:
/// (T u)(x) = u_tau(x) + integral of r(x, y) f(u(y) - h) over the interval,
/// with u evaluated through its monotone interpolant at fixed quadrature
/// nodes. The input must stay inside the ordered interval [u_tau, u_0]
/// up to order_slack (OrderViolationError otherwise).
SampledFunction apply_Tf(const ConnectivityKernel& kernel, const FiringRate& rate,
                         double h, const WidthPair& pair, const SampledFunction& u,
                         double order_slack = 1e-7);

/// Iterates the lower sequence from u_tau and the upper sequence from u_0
/// until eps(n) < tol or max_iter. Non-convergence is reported in the
/// trace, not thrown.
DirectResult iterate_direct(const ConnectivityKernel& kernel, const FiringRate& rate,
                            double h, const WidthPair& pair,
                            const DirectConfig& cfg = {});

/// Default half-width of the extension window: delta_zero plus five decay
/// lengths of the kernel; past it the tail bound certifies u < h.
double extension_halfwidth_default(const ConnectivityKernel& kernel,
                                   const WidthPair& pair);

/// Samples a continuous profile evaluator on a symmetric grid [-X, X]
/// (out_n forced odd so 0 is a node), locates the h + tau and h crossings
/// on the decreasing branch, and validates the bump shape: above h + tau
/// inside the inner crossing, below h outside the outer one. Throws
/// NotABumpError with the witness point on failure.
BumpSolution build_bump(const std::function<double(double)>& u_eval, double h,
                        double tau, double X, int out_n);

/// Extends a converged fixed point u_star from [delta_tau, delta_zero] to
/// a bump on [-X, X] by evaluating the operator formula at arbitrary x.
/// Requires a smoothed rate (positive transition width).
BumpSolution extend_bump(const ConnectivityKernel& kernel, const FiringRate& rate,
                         double h, const WidthPair& pair,
                         const SampledFunction& u_star, double X, int out_n);

/// For each level strictly inside the range of the decreasing branch,
/// the x >= 0 where the interpolated bump first crosses it from above.
/// Levels h and h + tau recover the stored crossings.
std::vector<double> level_crossings(const BumpSolution& bump,
                                    const std::vector<double>& levels);

}  // namespace bumpfield
