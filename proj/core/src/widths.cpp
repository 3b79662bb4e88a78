#include "bumpfield/widths.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bumpfield/numerics.hpp"

namespace bumpfield {

namespace {

constexpr double kStabilityMargin = 1e-9;

Stability classify(double omega_at_width) {
  if (omega_at_width < -kStabilityMargin) return Stability::Stable;
  if (omega_at_width > kStabilityMargin) return Stability::Unstable;
  return Stability::Marginal;
}

// Checks Phi(x, delta) >= level on [0, delta) and <= level on (delta, X],
// with the region beyond X certified by the tail bound.
bool profile_conditions(const ConnectivityKernel& kernel, double delta, double level,
                        double scan_upper) {
  constexpr int kScan = 1001;
  const double inner_step = delta / kScan;
  for (int i = 0; i < kScan; ++i) {  // stops one step short of delta
    const double x = i * inner_step;
    if (kernel.phi(x, delta) < level) return false;
  }
  const double outer_span = scan_upper - delta;
  if (outer_span > 0) {
    const double outer_step = outer_span / kScan;
    for (int i = 1; i <= kScan; ++i) {
      const double x = delta + i * outer_step;
      if (kernel.phi(x, delta) > level) return false;
    }
  }
  // beyond the window: |Phi(x, delta)| <= tail(x - delta) <= tail(window - delta)
  return kernel.tail_bound(scan_upper - delta) < level;
}

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    default: return "marginal";
  }
}

WidthPair::WidthPair(WidthSolution tau_side, WidthSolution zero_side)
    : delta_tau(tau_side), delta_zero(zero_side) {
  if (!(delta_tau.half_width < delta_zero.half_width)) {
    throw Assumption1Error("WidthPair: requires delta_tau < delta_zero");
  }
}

std::vector<WidthSolution> solve_half_widths(const ConnectivityKernel& kernel,
                                             double level, double scan_upper,
                                             int scan_n, double tol) {
  if (!(level > 0)) {
    throw std::invalid_argument("solve_half_widths: requires level > 0");
  }
  if (!(scan_upper > 0)) {
    throw std::invalid_argument("solve_half_widths: requires scan_upper > 0");
  }
  const double settled = std::abs(kernel.limit_at_infinity() - level);
  if (kernel.tail_bound(scan_upper) >= settled) {
    std::ostringstream msg;
    msg << "solve_half_widths: scan_upper = " << scan_upper
        << " cannot certify the window; tail bound "
        << kernel.tail_bound(scan_upper) << " >= |W(inf) - level| = " << settled;
    throw std::invalid_argument(msg.str());
  }

  const auto widths = find_roots(
      [&](double x) { return kernel.antiderivative(x) - level; }, 0.0, scan_upper,
      scan_n, tol);

  std::vector<WidthSolution> out;
  out.reserve(widths.size());
  for (double a : widths) {
    WidthSolution s;
    s.half_width = a / 2.0;
    s.level = level;
    s.omega_at_width = kernel.omega(a);
    s.stability = classify(s.omega_at_width);
    s.profile_ok = profile_conditions(kernel, s.half_width, level, scan_upper);
    out.push_back(s);
  }
  return out;
}

WidthPair select_width_pair(const std::vector<WidthSolution>& at_h,
                            const std::vector<WidthSolution>& at_h_plus_tau,
                            const PairPolicy& policy) {
  if (at_h.empty() || at_h_plus_tau.empty()) {
    throw std::invalid_argument(
        "select_width_pair: both solution sequences must be non-empty");
  }

  if (policy.kind == PairPolicy::Kind::Explicit) {
    if (policy.tau_index >= at_h_plus_tau.size() || policy.zero_index >= at_h.size()) {
      throw std::invalid_argument("select_width_pair: explicit index out of range");
    }
    const auto& t = at_h_plus_tau[policy.tau_index];
    const auto& z = at_h[policy.zero_index];
    if (!(t.half_width < z.half_width)) {
      throw Assumption1Error(
          "select_width_pair: explicit pair violates delta_tau < delta_zero");
    }
    return WidthPair(t, z);
  }

  const WidthSolution& zero_side = at_h.back();

  const WidthSolution* tau_side = nullptr;
  if (policy.kind == PairPolicy::Kind::SmallestUnstable) {
    for (const auto& s : at_h_plus_tau) {
      if (s.stability == Stability::Unstable && s.half_width < zero_side.half_width) {
        tau_side = &s;
        break;
      }
    }
  } else {  // LargestStable
    for (auto it = at_h_plus_tau.rbegin(); it != at_h_plus_tau.rend(); ++it) {
      if (it->stability == Stability::Stable && it->half_width < zero_side.half_width) {
        tau_side = &*it;
        break;
      }
    }
  }
  if (tau_side == nullptr) {
    throw Assumption1Error(
        "select_width_pair: no admissible delta_tau below delta_zero for the "
        "requested policy");
  }
  return WidthPair(*tau_side, zero_side);
}

}  // namespace bumpfield
