#include "bumpfield/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace bumpfield {

namespace {

struct Extreme {
  double value = 0.0;
  double x = 0.0;
  double y = 0.0;
};

// Tracks a minimum together with where it occurs.
struct MinTracker {
  Extreme best{std::numeric_limits<double>::infinity(), 0, 0};
  void offer(double v, double x, double y) {
    if (v < best.value) best = {v, x, y};
  }
};

std::vector<double> scan_points(double lo, double hi, int n) {
  if (lo == hi || n <= 1) return {lo};
  return Grid(lo, hi, n).points();
}

double derive_far_cutoff(const ConnectivityKernel& kernel, double h, double tau,
                         double hi, const ScanOptions& scan) {
  if (scan.far_cutoff > 0) {
    if (scan.far_cutoff <= hi) {
      throw std::invalid_argument("ScanOptions: far_cutoff must exceed the interval");
    }
    return scan.far_cutoff;
  }
  const double target = std::min(h, tau > 0 ? tau : h) / 10.0;
  double X = hi + 1.0;
  while (kernel.tail_bound(X - hi) >= target) X += 1.0;
  return X;
}

AssumptionCheck from_min(const MinTracker& t) {
  AssumptionCheck c;
  c.worst_margin = t.best.value;
  c.holds = c.worst_margin > 0;
  c.witness_x = t.best.x;
  c.witness_y = t.best.y;
  return c;
}

// Scan checks report, they do not throw: when the kinked |dr/dx| integrand
// stalls just short of the tolerance, the last refinement is accurate
// enough for a margin whose scale is orders of magnitude larger.
double integrate_lenient(const std::function<double(double)>& fn, double a, double b,
                         double tol) {
  try {
    return integrate(fn, a, b, tol);
  } catch (const QuadratureError& e) {
    return e.last_estimate;
  }
}

}  // namespace

std::string to_string(AssumptionId id) {
  switch (id) {
    case AssumptionId::A2: return "A2 (kernel positivity on the square)";
    case AssumptionId::A3: return "A3 (bounding profiles decreasing)";
    case AssumptionId::A3pp: return "A3'' (dPhi/dx negative on the square)";
    case AssumptionId::A4: return "A4 (derivative dominance bound)";
    case AssumptionId::A5: return "A5 (level separation)";
    case AssumptionId::A3pPosterior: return "A3' (posterior, profile pairs)";
    case AssumptionId::A5pPosterior: return "A5' (posterior, weighted field)";
  }
  return "?";
}

bool AssumptionReport::all_hold() const {
  for (const auto& [id, c] : checks) {
    if (!c.holds) return false;
  }
  return true;
}

bool AssumptionReport::holds(AssumptionId id) const {
  auto it = checks.find(id);
  return it != checks.end() && it->second.holds;
}

double AssumptionReport::margin(AssumptionId id) const {
  auto it = checks.find(id);
  if (it == checks.end()) {
    throw std::invalid_argument("AssumptionReport: no such check");
  }
  return it->second.worst_margin;
}

void AssumptionReport::merge(const AssumptionReport& other) {
  for (const auto& [id, c] : other.checks) checks[id] = c;
  degenerate_domain = degenerate_domain || other.degenerate_domain;
}

std::string AssumptionReport::table() const {
  std::ostringstream out;
  out << std::left << std::setw(42) << "check" << std::setw(8) << "holds"
      << std::setw(16) << "worst margin" << "witness (x, y)\n";
  for (const auto& [id, c] : checks) {
    std::ostringstream margin;
    margin << std::setprecision(6) << c.worst_margin;
    out << std::left << std::setw(42) << to_string(id) << std::setw(8)
        << (c.holds ? "yes" : "NO") << std::setw(16) << margin.str() << "("
        << std::setprecision(6) << c.witness_x << ", " << c.witness_y << ")\n";
  }
  if (degenerate_domain) out << "note: scanned domain has zero measure\n";
  return out.str();
}

AssumptionReport check_static(const ConnectivityKernel& kernel, const FiringRate& rate,
                              double h, double tau, double lo, double hi,
                              const ScanOptions& scan) {
  if (!(lo <= hi)) throw std::invalid_argument("check_static: requires lo <= hi");
  AssumptionReport report;
  report.degenerate_domain = (lo == hi);
  const auto sq = scan_points(lo, hi, scan.per_axis);
  const double X = derive_far_cutoff(kernel, h, tau, hi, scan);

  // A2: min r over the square
  MinTracker a2;
  for (double x : sq) {
    for (double y : sq) a2.offer(kernel.r(x, y), x, y);
  }
  report.checks[AssumptionId::A2] = from_min(a2);

  // A3: -dPhi/dx at the two bounding slices; A3pp over the whole square
  MinTracker a3, a3pp;
  for (double x : sq) {
    a3.offer(-kernel.dphi_dx(x, hi), x, hi);
    a3.offer(-kernel.dphi_dx(x, lo), x, lo);
    for (double y : sq) a3pp.offer(-kernel.dphi_dx(x, y), x, y);
  }
  report.checks[AssumptionId::A3] = from_min(a3);
  report.checks[AssumptionId::A3pp] = from_min(a3pp);

  // A4: integral of |dr/dx| weighted by the rate against the slope of the
  // lower bounding profile
  MinTracker a4;
  if (lo < hi) {
    for (double x : sq) {
      const double bound = integrate_lenient(
          [&](double y) {
            const double drdx = kernel.omega_prime(y + x) - kernel.omega_prime(y - x);
            return std::abs(drdx) * rate.value(kernel.phi(y, hi) - h);
          },
          lo, hi, 1e-8);
      a4.offer(-(bound + kernel.dphi_dx(x, lo)), x, lo);
    }
  } else {
    a4.offer(-kernel.dphi_dx(lo, lo), lo, lo);
  }
  report.checks[AssumptionId::A4] = from_min(a4);

  // A5 part (i): Phi <= h for x in (hi, X], any y in [lo, hi];
  //    part (ii): Phi >= h + tau for x in [0, lo]. The corner (lo, lo) is
  //    pinned to exactly h + tau by the width equation and is skipped.
  MinTracker a5;
  {
    const int n = std::max(scan.per_axis, 2);
    for (int j = 1; j <= n; ++j) {
      const double x = hi + j * (X - hi) / n;
      for (double y : sq) a5.offer(h - kernel.phi(x, y), x, y);
    }
    a5.offer(h - kernel.tail_bound(X - hi), X, hi);
    const auto inner = scan_points(0.0, lo, scan.per_axis);
    for (std::size_t ix = 0; ix < inner.size(); ++ix) {
      for (std::size_t iy = 0; iy < sq.size(); ++iy) {
        if (ix + 1 == inner.size() && iy == 0) continue;  // pinned corner
        a5.offer(kernel.phi(inner[ix], sq[iy]) - (h + tau), inner[ix], sq[iy]);
      }
    }
  }
  report.checks[AssumptionId::A5] = from_min(a5);

  return report;
}

AssumptionReport check_static(const ConnectivityKernel& kernel, const FiringRate& rate,
                              double h, double tau, const WidthPair& pair,
                              const ScanOptions& scan) {
  return check_static(kernel, rate, h, tau, pair.delta_tau.half_width,
                      pair.delta_zero.half_width, scan);
}

double compute_m(const ConnectivityKernel& kernel, double lo, double hi, int grid_n) {
  if (!(lo <= hi)) throw std::invalid_argument("compute_m: requires lo <= hi");
  const auto sq = scan_points(lo, hi, grid_n);
  double lowest = std::numeric_limits<double>::infinity();
  double highest = -std::numeric_limits<double>::infinity();
  for (double x : sq) {
    for (double y : sq) {
      const double d = kernel.dphi_dx(x, y);
      lowest = std::min(lowest, d);
      highest = std::max(highest, d);
    }
  }
  if (!(highest < 0)) {
    std::ostringstream msg;
    msg << "compute_m: dPhi/dx is not negative everywhere on [" << lo << ", " << hi
        << "]^2 (max " << highest << ")";
    throw std::domain_error(msg.str());
  }
  return -lowest;
}

AssumptionReport check_posterior(const ConnectivityKernel& kernel,
                                 const FiringRate& rate, double h, double tau,
                                 const SampledFunction& profile,
                                 const ScanOptions& scan) {
  AssumptionReport report;
  const auto& vals = profile.values;
  const double at_start = vals.front();  // profile value at t = 0
  const double at_end = vals.back();     // profile value at t = tau

  MinTracker a3p;
  for (double dx : vals) {
    for (double dy : vals) a3p.offer(-kernel.dphi_dx(dx, dy), dx, dy);
  }
  report.checks[AssumptionId::A3pPosterior] = from_min(a3p);

  // Density-weighted field reconstructed from the profile.
  const MonotoneCubic delta(profile);
  const double t_hi = profile.grid.b;
  auto u_field = [&](double x) {
    return integrate(
        [&](double xi) { return rate.density(xi) * kernel.phi(x, delta(xi)); },
        profile.grid.a, t_hi, 1e-9);
  };

  const double hi_val = std::max(at_start, at_end);
  const double X = derive_far_cutoff(kernel, h, tau, hi_val, scan);
  MinTracker a5p;
  const int n = std::max(scan.per_axis, 2);
  for (int j = 1; j <= n; ++j) {
    const double x = at_start + j * (X - at_start) / n;
    a5p.offer(h - u_field(x), x, 0.0);
  }
  a5p.offer(h - kernel.tail_bound(X - hi_val), X, 0.0);
  // x = at_end is pinned to exactly h + tau by the fixed-point property
  for (int j = 0; j < n; ++j) {
    const double x = j * at_end / n;
    a5p.offer(u_field(x) - (h + tau), x, 0.0);
  }
  report.checks[AssumptionId::A5pPosterior] = from_min(a5p);

  return report;
}

}  // namespace bumpfield
