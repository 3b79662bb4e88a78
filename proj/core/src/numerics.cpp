#include "bumpfield/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bumpfield {

namespace {

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr int kGaussOrder = 10;
constexpr double kGaussX[kGaussOrder] = {
    -9.73906528517171743e-01, -8.65063366688984536e-01, -6.79409568299024436e-01,
    -4.33395394129247213e-01, -1.48874338981631216e-01, 1.48874338981631216e-01,
    4.33395394129247213e-01,  6.79409568299024436e-01,  8.65063366688984536e-01,
    9.73906528517171743e-01};
constexpr double kGaussW[kGaussOrder] = {
    6.66713443086880686e-02, 1.49451349150580365e-01, 2.19086362515982014e-01,
    2.69266719309996516e-01, 2.95524224714752981e-01, 2.95524224714752981e-01,
    2.69266719309996516e-01, 2.19086362515982014e-01, 1.49451349150580365e-01,
    6.66713443086880686e-02};

double gauss_composite(const std::function<double(double)>& fn, double a, double b,
                       int panels) {
  const double w = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * w;
    const double half = 0.5 * w;
    double acc = 0.0;
    for (int q = 0; q < kGaussOrder; ++q) {
      acc += kGaussW[q] * fn(mid + half * kGaussX[q]);
    }
    total += acc * half;
  }
  return total;
}

}  // namespace

Grid::Grid(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) {
    throw std::invalid_argument("Grid: requires finite bounds with a < b");
  }
  if (n < 2) {
    throw std::invalid_argument("Grid: requires at least two points");
  }
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = point(i);
  return xs;
}

bool Grid::same_as(const Grid& other, double tol) const {
  return n == other.n && std::abs(a - other.a) <= tol && std::abs(b - other.b) <= tol;
}

SampledFunction::SampledFunction(Grid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.n) {
    throw std::invalid_argument("SampledFunction: value count must match the grid");
  }
  for (double y : values) {
    if (!std::isfinite(y)) {
      throw std::invalid_argument("SampledFunction: values must be finite");
    }
  }
}

double SampledFunction::max_abs_diff(const SampledFunction& other) const {
  if (!grid.same_as(other.grid)) {
    throw std::invalid_argument("max_abs_diff: grids differ");
  }
  double worst = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    worst = std::max(worst, std::abs(values[i] - other.values[i]));
  }
  return worst;
}

double integrate(const std::function<double(double)>& fn, double a, double b,
                 double tol) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (!(tol > 0)) throw std::invalid_argument("integrate: requires tol > 0");
  if (a == b) return 0.0;

  constexpr int kMaxDepth = 14;
  double last = gauss_composite(fn, a, b, 1);
  double prior = last;
  for (int depth = 1; depth <= kMaxDepth; ++depth) {
    prior = last;
    last = gauss_composite(fn, a, b, 1 << depth);
    if (std::abs(last - prior) < tol) return last;
  }
  std::ostringstream msg;
  msg << "integrate: no convergence to tol " << tol << " after " << kMaxDepth
      << " refinements";
  throw QuadratureError(msg.str(), prior, last);
}

MonotoneCubic::MonotoneCubic(const SampledFunction& sf)
    : grid_(sf.grid), values_(sf.values), slopes_(sf.values.size()) {
  const int n = grid_.n;
  const double h = grid_.spacing();
  std::vector<double> d(n - 1);
  for (int i = 0; i + 1 < n; ++i) d[i] = (values_[i + 1] - values_[i]) / h;

  if (n == 2) {
    slopes_[0] = slopes_[1] = d[0];
    return;
  }
  // Second-order slope estimates, then limiting so each cell satisfies the
  // |m| <= 3 |secant| condition that keeps the cubic monotone on monotone data.
  slopes_[0] = (3.0 * d[0] - d[1]) / 2.0;
  slopes_[n - 1] = (3.0 * d[n - 2] - d[n - 3]) / 2.0;
  for (int i = 1; i + 1 < n; ++i) slopes_[i] = 0.5 * (d[i - 1] + d[i]);

  auto limit = [](double slope, double left, double right) {
    if (left * right <= 0.0) return 0.0;
    const double cap = 3.0 * std::min(std::abs(left), std::abs(right));
    if (slope * left <= 0.0) return 0.0;  // wrong direction
    return std::copysign(std::min(std::abs(slope), cap), left);
  };
  slopes_[0] = limit(slopes_[0], d[0], d[0]);
  slopes_[n - 1] = limit(slopes_[n - 1], d[n - 2], d[n - 2]);
  for (int i = 1; i + 1 < n; ++i) slopes_[i] = limit(slopes_[i], d[i - 1], d[i]);
}

double MonotoneCubic::operator()(double x) const {
  if (!(x >= grid_.a && x <= grid_.b)) {
    std::ostringstream msg;
    msg << "MonotoneCubic: x = " << x << " outside [" << grid_.a << ", " << grid_.b
        << "]";
    throw std::domain_error(msg.str());
  }
  const double h = grid_.spacing();
  int cell = static_cast<int>((x - grid_.a) / h);
  cell = std::clamp(cell, 0, grid_.n - 2);
  const double t = (x - grid_.point(cell)) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[cell] + h10 * h * slopes_[cell] + h01 * values_[cell + 1] +
         h11 * h * slopes_[cell + 1];
}

double interpolate(const SampledFunction& sf, double x) {
  return MonotoneCubic(sf)(x);
}

namespace {

double bisect(const std::function<double(double)>& fn, double lo, double hi,
              double flo, double tol) {
  // flo and fn(hi) have opposite (nonzero) signs on entry
  while (hi - lo >= tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = fn(mid);
    if (fmid == 0.0) return mid;
    if ((flo < 0) != (fmid < 0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> find_roots(const std::function<double(double)>& fn, double a,
                               double b, int scan_n, double tol) {
  if (scan_n < 2) throw std::invalid_argument("find_roots: scan_n must be >= 2");
  if (!(a < b)) throw std::invalid_argument("find_roots: requires a < b");
  if (!(tol > 0)) throw std::invalid_argument("find_roots: requires tol > 0");

  const Grid scan(a, b, scan_n);
  std::vector<double> fs(scan_n);
  for (int i = 0; i < scan_n; ++i) fs[i] = fn(scan.point(i));

  std::vector<double> roots;
  for (int i = 0; i < scan_n; ++i) {
    if (fs[i] == 0.0) roots.push_back(scan.point(i));
  }
  for (int i = 0; i + 1 < scan_n; ++i) {
    if (fs[i] == 0.0 || fs[i + 1] == 0.0) continue;
    if ((fs[i] < 0) != (fs[i + 1] < 0)) {
      roots.push_back(bisect(fn, scan.point(i), scan.point(i + 1), fs[i], tol));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace bumpfield
