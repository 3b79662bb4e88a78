#pragma once

#include <functional>
#include <vector>

#include "bumpfield/errors.hpp"

namespace bumpfield {

/// Uniformly spaced closed interval [a, b] with n >= 2 points,
/// endpoints included.
struct Grid {
  Grid(double a, double b, int n);

  double a;
  double b;
  int n;

  double spacing() const { return (b - a) / (n - 1); }
  double point(int i) const { return i == n - 1 ? b : a + i * spacing(); }
  std::vector<double> points() const;

  bool same_as(const Grid& other, double tol = 1e-12) const;
};

/// Values of a function on a uniform grid; the discrete state of both
/// iteration schemes. All values must be finite.
struct SampledFunction {
  SampledFunction(Grid g, std::vector<double> v);

  Grid grid;
  std::vector<double> values;

  /// max_i |values_i - other.values_i|; grids must agree.
  double max_abs_diff(const SampledFunction& other) const;
};

/// Composite Gauss-Legendre quadrature (fixed order per panel) with panel
/// doubling until two successive estimates differ by less than tol.
/// Throws QuadratureError with the last two estimates on non-convergence.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 double tol = 1e-10);

/// Cubic Hermite interpolant with limited slopes: exact at the nodes,
/// reproduces linear data, and never overshoots monotone data.
class MonotoneCubic {
 public:
  explicit MonotoneCubic(const SampledFunction& sf);

  /// Value at x; x must lie inside the grid (no extrapolation).
  double operator()(double x) const;

 private:
  Grid grid_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// One-shot monotone-cubic interpolation of sf at x.
double interpolate(const SampledFunction& sf, double x);

/// Scan scan_n uniform points of [a, b] for sign changes and refine each
/// bracket by bisection to width < tol. A scan node where fn is exactly
/// zero is itself a root. Returns the roots in ascending order; empty
/// when no sign change is found.
std::vector<double> find_roots(const std::function<double(double)>& fn, double a,
                               double b, int scan_n, double tol = 1e-10);

}  // namespace bumpfield
