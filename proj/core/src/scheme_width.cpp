#include "bumpfield/scheme_width.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bumpfield {

namespace {

constexpr double kEscapeSlack = 1e-6;

// Fixed density-weighted quadrature over the profile grid cells
// (Gauss-Legendre per cell, density and weights folded together).
struct DensityQuadrature {
  std::vector<double> nodes;
  std::vector<double> rho_weights;

  DensityQuadrature(const Grid& grid, const FiringRate& rate) {
    static constexpr int kOrder = 10;
    static constexpr double kX[kOrder] = {
        -9.73906528517171743e-01, -8.65063366688984536e-01,
        -6.79409568299024436e-01, -4.33395394129247213e-01,
        -1.48874338981631216e-01, 1.48874338981631216e-01,
        4.33395394129247213e-01,  6.79409568299024436e-01,
        8.65063366688984536e-01,  9.73906528517171743e-01};
    static constexpr double kW[kOrder] = {
        6.66713443086880686e-02, 1.49451349150580365e-01, 2.19086362515982014e-01,
        2.69266719309996516e-01, 2.95524224714752981e-01, 2.95524224714752981e-01,
        2.69266719309996516e-01, 2.19086362515982014e-01, 1.49451349150580365e-01,
        6.66713443086880686e-02};
    const int cells = grid.n - 1;
    nodes.reserve(cells * kOrder);
    rho_weights.reserve(cells * kOrder);
    for (int c = 0; c < cells; ++c) {
      const double lo = grid.point(c);
      const double hi = grid.point(c + 1);
      const double mid = 0.5 * (lo + hi);
      const double half = 0.5 * (hi - lo);
      for (int q = 0; q < kOrder; ++q) {
        const double xi = mid + half * kX[q];
        nodes.push_back(xi);
        rho_weights.push_back(half * kW[q] * rate.density(xi));
      }
    }
  }
};

void require_profile_grid(const SampledFunction& profile) {
  if (std::abs(profile.grid.a) > 1e-12) {
    throw std::invalid_argument("width profile must be sampled over [0, tau]");
  }
}

double weighted_field(const ConnectivityKernel& kernel, const DensityQuadrature& quad,
                      const MonotoneCubic& delta, double x) {
  double acc = 0.0;
  for (std::size_t q = 0; q < quad.nodes.size(); ++q) {
    acc += quad.rho_weights[q] * kernel.phi(x, delta(quad.nodes[q]));
  }
  return acc;
}

}  // namespace

double choose_k(double m, double sigma) {
  if (!(m > 0)) throw std::invalid_argument("choose_k: requires m > 0");
  if (!(sigma > 0 && sigma < 1)) {
    throw std::invalid_argument("choose_k: requires sigma in (0, 1)");
  }
  return sigma / m;
}

double reconstruct_u_delta(const ConnectivityKernel& kernel, const FiringRate& rate,
                           const SampledFunction& profile, double x) {
  require_profile_grid(profile);
  if (!rate.has_density()) {
    throw NoDensityError("reconstruct_u_delta: rate must have a density");
  }
  const DensityQuadrature quad(profile.grid, rate);
  const MonotoneCubic delta(profile);
  return weighted_field(kernel, quad, delta, x);
}

SampledFunction apply_A(const ConnectivityKernel& kernel, const FiringRate& rate,
                        double h, const WidthPair& pair, double k,
                        const SampledFunction& profile) {
  require_profile_grid(profile);
  if (!rate.has_density()) {
    throw NoDensityError("apply_A: rate must have a density");
  }
  if (!(k > 0)) throw std::invalid_argument("apply_A: requires k > 0");

  const DensityQuadrature quad(profile.grid, rate);
  const MonotoneCubic delta(profile);
  const double lo = pair.delta_tau.half_width - kEscapeSlack;
  const double hi = pair.delta_zero.half_width + kEscapeSlack;

  std::vector<double> out(profile.grid.n);
  for (int i = 0; i < profile.grid.n; ++i) {
    const double t = profile.grid.point(i);
    const double d = profile.values[i];
    out[i] = d + k * (weighted_field(kernel, quad, delta, d) - t - h);
    if (!(out[i] >= lo && out[i] <= hi)) {
      std::ostringstream msg;
      msg << "apply_A: iterate escaped the ordered interval at t = " << t
          << " (value " << out[i] << "); step k = " << k << " is too large";
      throw DivergenceError(msg.str(), t, out[i]);
    }
  }
  return SampledFunction(profile.grid, std::move(out));
}

WidthResult iterate_width(const ConnectivityKernel& kernel, const FiringRate& rate,
                          double h, double tau, const WidthPair& pair,
                          const WidthConfig& cfg) {
  if (cfg.grid_m < 3) throw std::invalid_argument("iterate_width: grid_m >= 3");
  if (!(tau > 0)) throw std::invalid_argument("iterate_width: requires tau > 0");
  if (!rate.has_density()) {
    throw NoDensityError("iterate_width: rate must have a density");
  }

  const double dt = pair.delta_tau.half_width;
  const double d0 = pair.delta_zero.half_width;
  const double m = compute_m(kernel, dt, d0);
  double k;
  if (cfg.auto_k) {
    k = choose_k(m, cfg.sigma);
  } else {
    k = cfg.explicit_k;
    if (!(k > 0 && k < 1.0 / m)) {
      std::ostringstream msg;
      msg << "iterate_width: explicit k = " << k << " violates 0 < k < 1/m = "
          << 1.0 / m;
      throw std::invalid_argument(msg.str());
    }
  }

  const Grid grid(0.0, tau, cfg.grid_m);
  SampledFunction lower(grid, std::vector<double>(cfg.grid_m, dt));
  SampledFunction upper(grid, std::vector<double>(cfg.grid_m, d0));

  IterationTrace trace;
  for (int n = 1; n <= cfg.max_iter; ++n) {
    try {
      lower = apply_A(kernel, rate, h, pair, k, lower);
      upper = apply_A(kernel, rate, h, pair, k, upper);
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.what(), e.t, e.value, n);
    }
    const double eps = upper.max_abs_diff(lower);
    trace.errors.push_back(eps);
    trace.iterations = n;
    if (eps < cfg.tol) {
      trace.converged = true;
      break;
    }
  }

  WidthResult result{std::move(lower), std::move(upper), std::move(trace), k, m,
                     {}, false};
  result.posterior = check_posterior(kernel, rate, h, tau, result.upper);
  result.profile_decreasing = true;
  for (int i = 0; i + 1 < result.upper.grid.n; ++i) {
    if (!(result.upper.values[i + 1] < result.upper.values[i])) {
      result.profile_decreasing = false;
      break;
    }
  }
  return result;
}

BumpSolution reconstruct_bump(const ConnectivityKernel& kernel, const FiringRate& rate,
                              double h, double tau, const SampledFunction& profile,
                              double X, int out_n) {
  require_profile_grid(profile);
  if (!rate.has_density()) {
    throw NoDensityError("reconstruct_bump: rate must have a density");
  }
  const DensityQuadrature quad(profile.grid, rate);
  const MonotoneCubic delta(profile);
  return build_bump(
      [&](double x) { return weighted_field(kernel, quad, delta, x); }, h, tau, X,
      out_n);
}

double cross_validate(const BumpSolution& direct_bump,
                      const SampledFunction& profile) {
  std::vector<double> levels(profile.grid.n);
  for (int i = 0; i < profile.grid.n; ++i) {
    levels[i] = profile.grid.point(i) + direct_bump.h;
  }
  const auto crossings = level_crossings(direct_bump, levels);
  double worst = 0.0;
  for (int i = 0; i < profile.grid.n; ++i) {
    worst = std::max(worst,
                     std::abs(profile.values[i] - crossings[i]) / std::abs(crossings[i]));
  }
  return worst;
}

}  // namespace bumpfield
