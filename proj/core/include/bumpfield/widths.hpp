#pragma once

#include <cstddef>
#include <vector>

#include "bumpfield/kernels.hpp"

namespace bumpfield {

/// Sign test for a stationary profile of width 2*half_width: stable when
/// omega at the full width is negative, unstable when positive.
enum class Stability { Stable, Unstable, Marginal };

const char* to_string(Stability s);

/// A half-width solving W(2 delta) = level.
struct WidthSolution {
  double half_width = 0.0;
  double level = 0.0;
  Stability stability = Stability::Marginal;
  double omega_at_width = 0.0;  // omega(2 * half_width)
  /// Level-slice conditions of a genuine localized profile: Phi(x, delta)
  /// stays >= level on [0, delta) and <= level beyond delta (tail
  /// certified by the kernel bound). Reported, never filtered on.
  bool profile_ok = false;
};

/// The ordered pair delta_tau < delta_zero, where delta_tau solves the
/// width equation at level h + tau and delta_zero at level h.
struct WidthPair {
  WidthPair(WidthSolution tau_side, WidthSolution zero_side);
  WidthSolution delta_tau;
  WidthSolution delta_zero;
};

/// All half-widths delta in (0, scan_upper/2] with W(2 delta) = level,
/// ascending, each classified by the stability sign test (margin 1e-9).
/// Requires level > 0 and a scan window the kernel tail bound can certify:
/// tail(scan_upper) must be smaller than |W(inf) - level|, so no crossing
/// can hide beyond the window. Empty when the level misses the range of W.
std::vector<WidthSolution> solve_half_widths(const ConnectivityKernel& kernel,
                                             double level, double scan_upper,
                                             int scan_n = 2001, double tol = 1e-10);

/// How to pick the (delta_tau, delta_zero) pair from the two solution sets.
struct PairPolicy {
  enum class Kind { SmallestUnstable, LargestStable, Explicit };
  Kind kind = Kind::SmallestUnstable;
  std::size_t tau_index = 0;   // Explicit only
  std::size_t zero_index = 0;  // Explicit only

  static PairPolicy smallest_unstable() { return {Kind::SmallestUnstable}; }
  static PairPolicy largest_stable() { return {Kind::LargestStable}; }
  static PairPolicy explicit_pair(std::size_t tau_index, std::size_t zero_index) {
    return {Kind::Explicit, tau_index, zero_index};
  }
};

/// Selects a pair with delta_tau < delta_zero. delta_zero is the largest
/// solution at level h; delta_tau follows the policy among the solutions
/// at level h + tau. Throws Assumption1Error when no admissible pair
/// exists.
WidthPair select_width_pair(const std::vector<WidthSolution>& at_h,
                            const std::vector<WidthSolution>& at_h_plus_tau,
                            const PairPolicy& policy);

}  // namespace bumpfield
