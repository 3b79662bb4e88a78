#pragma once

#include <string>
#include <variant>

#include "bumpfield/errors.hpp"

namespace bumpfield {

/// Difference of two Gaussians, K e^{-k x^2} - M e^{-m x^2}. Models
/// short-range excitation with broader inhibition (the classic Mexican
/// hat) when 0 < M < K and 0 < m < k.
struct GaussianDifference {
  double K, k, M, m;
};

/// Damped oscillation, e^{-b|x|} (b sin|x| + cos x), b > 0. Periodically
/// modulated coupling with sign changes at every half period.
struct OscillatoryDecay {
  double b;
};

/// Even, integrable coupling function omega with a closed-form
/// antiderivative. Immutable after construction; every member is a pure
/// function and safe to call concurrently.
class ConnectivityKernel {
 public:
  static ConnectivityKernel gaussian_difference(double K, double k, double M,
                                                double m);
  static ConnectivityKernel oscillatory_decay(double b);

  /// omega(x); even in x by construction.
  double omega(double x) const;

  /// d omega / dx, analytic per variant (odd in x).
  double omega_prime(double x) const;

  /// W(x) = integral of omega over [0, x]; odd in x, closed form.
  double antiderivative(double x) const;

  /// Limit of W(x) as x -> +infinity.
  double limit_at_infinity() const;

  /// Analytic upper bound on the tail mass, integral of |omega| over
  /// [X, infinity), X >= 0.
  double tail_bound(double X) const;

  /// Length scale of the slowest-decaying factor of omega.
  double decay_length() const;

  /// A scan window [0, upper] wide enough that W has provably settled to
  /// within 1e-9 of its limit beyond it; no level crossing can hide outside.
  double scan_upper_default() const;

  /// r(x, y) = omega(y - x) + omega(y + x), the symmetrized kernel.
  double r(double x, double y) const;

  /// Phi(x, y) = integral of r(x, .) over [0, y], evaluated as
  /// W(y + x) + W(y - x). Requires y >= 0.
  double phi(double x, double y) const;

  /// d Phi / dx (x, y) = omega(y + x) - omega(y - x).
  double dphi_dx(double x, double y) const;

  std::string describe() const;

  const std::variant<GaussianDifference, OscillatoryDecay>& form() const {
    return form_;
  }

 private:
  explicit ConnectivityKernel(std::variant<GaussianDifference, OscillatoryDecay> f)
      : form_(f) {}
  std::variant<GaussianDifference, OscillatoryDecay> form_;
};

/// Unit step with threshold shift: 0 below shift, 1 at and above it.
struct HeavisideStep {
  double shift;
};

/// Smoothed step rising from 0 to 1 over [0, tau]:
/// f(u) = v^p / (v^p + (1-v)^p) with v = u/tau, p >= 1 (a logoid ramp).
struct LogoidRamp {
  double tau, p;
};

/// Firing rate: non-decreasing map into [0, 1]. Immutable; pure functions.
class FiringRate {
 public:
  static FiringRate heaviside(double shift = 0.0);
  static FiringRate logoid(double tau, double p);

  /// f(u) in [0, 1].
  double value(double u) const;

  /// density rho = f', supported on [0, tau], normalized to 1.
  /// Throws NoDensityError for the unit-step variant (point mass).
  double density(double xi) const;

  bool has_density() const;

  /// Width of the rise interval: tau for the smoothed variant, 0 for the
  /// unit step.
  double transition_width() const;

  std::string describe() const;

  const std::variant<HeavisideStep, LogoidRamp>& form() const { return form_; }

 private:
  explicit FiringRate(std::variant<HeavisideStep, LogoidRamp> f) : form_(f) {}
  std::variant<HeavisideStep, LogoidRamp> form_;
};

}  // namespace bumpfield
