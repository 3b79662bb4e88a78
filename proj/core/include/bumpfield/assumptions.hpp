#pragma once

#include <map>
#include <string>

#include "bumpfield/kernels.hpp"
#include "bumpfield/numerics.hpp"
#include "bumpfield/widths.hpp"

namespace bumpfield {

/// Named numerical hypotheses behind the convergence guarantees:
///   A2    r(x, y) nonnegative on the pair square
///   A3    the bounding profiles u_tau, u_0 decrease across the interval
///   A3pp  dPhi/dx negative on the whole pair square (implies A3)
///   A4    derivative-dominance bound (sufficient for a decreasing limit)
///   A5    level separation: Phi below h past delta_zero, above h + tau
///         inside [0, delta_tau]
///   A3pPosterior / A5pPosterior  the same ideas evaluated on a computed
///         width profile after iteration
enum class AssumptionId { A2, A3, A3pp, A4, A5, A3pPosterior, A5pPosterior };

std::string to_string(AssumptionId id);

struct AssumptionCheck {
  bool holds = false;
  /// Positive distance to violation; negative when violated. holds is
  /// exactly (worst_margin > 0).
  double worst_margin = 0.0;
  double witness_x = 0.0;  // where the worst margin is attained
  double witness_y = 0.0;
};

struct AssumptionReport {
  std::map<AssumptionId, AssumptionCheck> checks;
  bool degenerate_domain = false;  // the scanned square has zero measure

  bool all_hold() const;
  bool holds(AssumptionId id) const;
  double margin(AssumptionId id) const;
  void merge(const AssumptionReport& other);
  /// Human-readable fixed-width table, one check per row.
  std::string table() const;
};

struct ScanOptions {
  int per_axis = 401;
  /// Far cutoff X for the unbounded scans; 0 derives it from the kernel
  /// tail bound so that the tail is below min(h, tau)/10.
  double far_cutoff = 0.0;
};

/// Evaluates A2, A3, A3pp, A4 and A5 on scan grids over [lo, hi]^2 (and
/// the adjoining regions for A5). Failures are reported, never thrown.
AssumptionReport check_static(const ConnectivityKernel& kernel, const FiringRate& rate,
                              double h, double tau, double lo, double hi,
                              const ScanOptions& scan = {});

AssumptionReport check_static(const ConnectivityKernel& kernel, const FiringRate& rate,
                              double h, double tau, const WidthPair& pair,
                              const ScanOptions& scan = {});

/// m = -min of dPhi/dx over the scanned square [lo, hi]^2; the step bound
/// for the width iteration is k < 1/m. Requires dPhi/dx < 0 on the square
/// (throws std::domain_error otherwise). lo == hi degenerates to a single
/// point. Conservative: valid for every profile with values in [lo, hi].
double compute_m(const ConnectivityKernel& kernel, double lo, double hi,
                 int grid_n = 401);

/// Posterior checks on a computed width profile over [0, tau]:
/// A3pPosterior samples dPhi/dx at profile value pairs; A5pPosterior
/// verifies the reconstructed density-weighted field stays below h past
/// the profile start and above h + tau inside the profile end (tail
/// certified). Boundary points pinned to equality by the fixed-point
/// property are excluded from the margin scan.
AssumptionReport check_posterior(const ConnectivityKernel& kernel,
                                 const FiringRate& rate, double h, double tau,
                                 const SampledFunction& profile,
                                 const ScanOptions& scan = {});

}  // namespace bumpfield
