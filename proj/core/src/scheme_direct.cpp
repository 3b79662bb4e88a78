#include "bumpfield/scheme_direct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bumpfield {

namespace {

// 10-point Gauss-Legendre rule on [-1, 1]; applied per grid cell so the
// integrand is smooth inside every panel (interpolant kinks sit on cell
// boundaries).
constexpr int kCellOrder = 10;
constexpr double kCellX[kCellOrder] = {
    -9.73906528517171743e-01, -8.65063366688984536e-01, -6.79409568299024436e-01,
    -4.33395394129247213e-01, -1.48874338981631216e-01, 1.48874338981631216e-01,
    4.33395394129247213e-01,  6.79409568299024436e-01,  8.65063366688984536e-01,
    9.73906528517171743e-01};
constexpr double kCellW[kCellOrder] = {
    6.66713443086880686e-02, 1.49451349150580365e-01, 2.19086362515982014e-01,
    2.69266719309996516e-01, 2.95524224714752981e-01, 2.95524224714752981e-01,
    2.69266719309996516e-01, 2.19086362515982014e-01, 1.49451349150580365e-01,
    6.66713443086880686e-02};

struct CellQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit CellQuadrature(const Grid& grid) {
    const int cells = grid.n - 1;
    nodes.reserve(cells * kCellOrder);
    weights.reserve(cells * kCellOrder);
    for (int c = 0; c < cells; ++c) {
      const double lo = grid.point(c);
      const double hi = grid.point(c + 1);
      const double mid = 0.5 * (lo + hi);
      const double half = 0.5 * (hi - lo);
      for (int q = 0; q < kCellOrder; ++q) {
        nodes.push_back(mid + half * kCellX[q]);
        weights.push_back(half * kCellW[q]);
      }
    }
  }
};

// Discretized fixed-point operator: bounding profiles at the grid nodes
// and the kernel matrix r(x_i, y_q) with quadrature weights folded in.
struct DirectOperator {
  Grid grid;
  CellQuadrature quad;
  std::vector<double> u_tau;
  std::vector<double> u_zero;
  std::vector<double> R;  // row-major grid.n x quad.nodes.size()
  const FiringRate* rate;
  double h;

  DirectOperator(const ConnectivityKernel& kernel, const FiringRate& r_, double h_,
                 const WidthPair& pair, int grid_n)
      : grid(pair.delta_tau.half_width, pair.delta_zero.half_width, grid_n),
        quad(grid),
        rate(&r_),
        h(h_) {
    const double dt = pair.delta_tau.half_width;
    const double d0 = pair.delta_zero.half_width;
    u_tau.resize(grid.n);
    u_zero.resize(grid.n);
    const std::size_t nq = quad.nodes.size();
    R.resize(static_cast<std::size_t>(grid.n) * nq);
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.point(i);
      u_tau[i] = kernel.phi(x, dt);
      u_zero[i] = kernel.phi(x, d0);
      for (std::size_t q = 0; q < nq; ++q) {
        R[i * nq + q] = kernel.r(x, quad.nodes[q]) * quad.weights[q];
      }
    }
  }

  void check_order(const std::vector<double>& u, double slack) const {
    for (int i = 0; i < grid.n; ++i) {
      const double below = u_tau[i] - u[i];
      const double above = u[i] - u_zero[i];
      const double excess = std::max(below, above);
      if (excess > slack) {
        std::ostringstream msg;
        msg << "apply_Tf: input leaves the ordered interval by " << excess
            << " at x = " << grid.point(i);
        throw OrderViolationError(msg.str(), grid.point(i), excess);
      }
    }
  }

  std::vector<double> apply(const std::vector<double>& u) const {
    const MonotoneCubic interp(SampledFunction(grid, u));
    const std::size_t nq = quad.nodes.size();
    std::vector<double> fired(nq);
    for (std::size_t q = 0; q < nq; ++q) {
      fired[q] = rate->value(interp(quad.nodes[q]) - h);
    }
    std::vector<double> out(grid.n);
    for (int i = 0; i < grid.n; ++i) {
      double acc = 0.0;
      const double* row = &R[i * nq];
      for (std::size_t q = 0; q < nq; ++q) acc += row[q] * fired[q];
      out[i] = u_tau[i] + acc;
    }
    return out;
  }
};

void require_matching_grid(const Grid& grid, const WidthPair& pair) {
  if (std::abs(grid.a - pair.delta_tau.half_width) > 1e-9 ||
      std::abs(grid.b - pair.delta_zero.half_width) > 1e-9) {
    throw std::invalid_argument(
        "apply_Tf: the sample grid must span [delta_tau, delta_zero]");
  }
}

}  // namespace

int IterationTrace::settled_at(double bound) const {
  int n0 = 0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] < bound)) n0 = 0;           // tail restarts after this point
    else if (n0 == 0) n0 = static_cast<int>(i) + 1;
  }
  return n0;
}

SampledFunction apply_Tf(const ConnectivityKernel& kernel, const FiringRate& rate,
                         double h, const WidthPair& pair, const SampledFunction& u,
                         double order_slack) {
  require_matching_grid(u.grid, pair);
  DirectOperator op(kernel, rate, h, pair, u.grid.n);
  op.check_order(u.values, order_slack);
  return SampledFunction(op.grid, op.apply(u.values));
}

DirectResult iterate_direct(const ConnectivityKernel& kernel, const FiringRate& rate,
                            double h, const WidthPair& pair, const DirectConfig& cfg) {
  if (cfg.grid_n < 3) throw std::invalid_argument("iterate_direct: grid_n >= 3");
  if (!(cfg.tol > 0)) throw std::invalid_argument("iterate_direct: tol > 0");

  DirectOperator op(kernel, rate, h, pair, cfg.grid_n);
  std::vector<double> lower = op.u_tau;
  std::vector<double> upper = op.u_zero;

  IterationTrace trace;
  for (int n = 1; n <= cfg.max_iter; ++n) {
    op.check_order(lower, cfg.order_slack);
    op.check_order(upper, cfg.order_slack);
    lower = op.apply(lower);
    upper = op.apply(upper);
    double eps = 0.0;
    for (int i = 0; i < op.grid.n; ++i) {
      eps = std::max(eps, std::abs(upper[i] - lower[i]));
    }
    trace.errors.push_back(eps);
    trace.iterations = n;
    if (eps < cfg.tol) {
      trace.converged = true;
      break;
    }
  }
  return DirectResult{SampledFunction(op.grid, std::move(lower)),
                      SampledFunction(op.grid, std::move(upper)), std::move(trace)};
}

double extension_halfwidth_default(const ConnectivityKernel& kernel,
                                   const WidthPair& pair) {
  return pair.delta_zero.half_width + 5.0 * kernel.decay_length();
}

BumpSolution build_bump(const std::function<double(double)>& u_eval, double h,
                        double tau, double X, int out_n) {
  if (!(X > 0)) throw std::invalid_argument("build_bump: requires X > 0");
  if (out_n < 5) throw std::invalid_argument("build_bump: out_n too small");
  if (out_n % 2 == 0) ++out_n;  // keep 0 on the grid

  const auto upper_roots = find_roots(
      [&](double x) { return u_eval(x) - (h + tau); }, 0.0, X, 2001, 1e-10);
  if (upper_roots.empty()) {
    throw NotABumpError("build_bump: profile never crosses h + tau", 0.0, u_eval(0.0));
  }
  const auto lower_roots =
      find_roots([&](double x) { return u_eval(x) - h; }, 0.0, X, 2001, 1e-10);
  if (lower_roots.empty()) {
    throw NotABumpError("build_bump: profile never crosses h", 0.0, u_eval(0.0));
  }
  const double inner = upper_roots.front();
  const double outer = lower_roots.back();
  if (!(inner < outer)) {
    throw NotABumpError("build_bump: crossings out of order", inner, u_eval(inner));
  }

  const Grid grid(-X, X, out_n);
  std::vector<double> values(out_n);
  for (int i = 0; i < out_n; ++i) values[i] = u_eval(grid.point(i));

  // both super-level sets must be single intervals: above h + tau exactly
  // inside the inner crossing, above h exactly inside the outer one (one
  // grid cell of slack around the crossings themselves)
  const double pad = grid.spacing();
  for (int i = (out_n - 1) / 2; i < out_n; ++i) {
    const double x = grid.point(i);
    if (x < inner - pad && !(values[i] > h + tau)) {
      throw NotABumpError("build_bump: profile dips to h + tau inside the core", x,
                          values[i]);
    }
    if (x > inner + pad && !(values[i] < h + tau)) {
      throw NotABumpError("build_bump: second maximally excited region", x,
                          values[i]);
    }
    if (x < outer - pad && !(values[i] > h)) {
      throw NotABumpError("build_bump: excited region disconnected", x, values[i]);
    }
    if (x > outer + pad && !(values[i] < h)) {
      throw NotABumpError("build_bump: profile exceeds h outside the crossing", x,
                          values[i]);
    }
  }

  BumpSolution bump{SampledFunction(grid, std::move(values)), inner, outer, h, tau};
  return bump;
}

BumpSolution extend_bump(const ConnectivityKernel& kernel, const FiringRate& rate,
                         double h, const WidthPair& pair,
                         const SampledFunction& u_star, double X, int out_n) {
  require_matching_grid(u_star.grid, pair);
  const double tau = rate.transition_width();
  if (!(tau > 0)) {
    throw std::domain_error(
        "extend_bump: needs a smoothed rate (distinct crossing levels)");
  }
  const double dt = pair.delta_tau.half_width;

  // freeze the fired interpolated fixed point at the quadrature nodes
  const CellQuadrature quad(u_star.grid);
  const MonotoneCubic interp(u_star);
  const std::size_t nq = quad.nodes.size();
  std::vector<double> fired(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    fired[q] = rate.value(interp(quad.nodes[q]) - h) * quad.weights[q];
  }
  auto u_eval = [&](double x) {
    double acc = kernel.phi(x, dt);
    for (std::size_t q = 0; q < nq; ++q) acc += kernel.r(x, quad.nodes[q]) * fired[q];
    return acc;
  };

  BumpSolution bump = build_bump(u_eval, h, tau, X, out_n);
  if (!(dt < bump.inner_crossing && bump.outer_crossing < pair.delta_zero.half_width)) {
    throw NotABumpError("extend_bump: crossings escape (delta_tau, delta_zero)",
                        bump.inner_crossing, h + tau);
  }
  return bump;
}

std::vector<double> level_crossings(const BumpSolution& bump,
                                    const std::vector<double>& levels) {
  const MonotoneCubic interp(bump.u);
  const Grid& grid = bump.u.grid;
  const int mid = (grid.n - 1) / 2;  // node at x = 0

  const double peak = *std::max_element(bump.u.values.begin() + mid,
                                        bump.u.values.end());
  const double floor = bump.u.values.back();

  std::vector<double> out;
  out.reserve(levels.size());
  for (double level : levels) {
    if (!(level > floor && level < peak)) {
      std::ostringstream msg;
      msg << "level_crossings: level " << level << " outside the branch range ("
          << floor << ", " << peak << ")";
      throw std::domain_error(msg.str());
    }
    int left = -1;
    for (int i = mid; i + 1 < grid.n; ++i) {
      if (bump.u.values[i] >= level && bump.u.values[i + 1] < level) {
        left = i;
        break;
      }
    }
    if (left < 0) {
      std::ostringstream msg;
      msg << "level_crossings: no downward crossing found for level " << level;
      throw std::domain_error(msg.str());
    }
    double lo = grid.point(left);
    double hi = grid.point(left + 1);
    double flo = interp(lo) - level;
    while (hi - lo >= 1e-12) {
      const double midpoint = 0.5 * (lo + hi);
      const double fm = interp(midpoint) - level;
      if (fm == 0.0) {
        lo = hi = midpoint;
        break;
      }
      if ((flo < 0) != (fm < 0)) {
        hi = midpoint;
      } else {
        lo = midpoint;
        flo = fm;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace bumpfield
