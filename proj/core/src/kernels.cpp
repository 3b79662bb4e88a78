#include "bumpfield/kernels.hpp"

#include <cmath>
#include <sstream>

namespace bumpfield {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double gauss_half_mass(double amp, double rate) {
  // integral of amp * e^{-rate x^2} over [0, inf)
  return 0.5 * amp * kSqrtPi / std::sqrt(rate);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

ConnectivityKernel ConnectivityKernel::gaussian_difference(double K, double k,
                                                           double M, double m) {
  if (!finite_positive(K) || !finite_positive(k) || !finite_positive(M) ||
      !finite_positive(m)) {
    throw std::invalid_argument(
        "gaussian_difference: all parameters must be finite and positive");
  }
  if (!(M < K)) {
    throw std::invalid_argument("gaussian_difference: requires M < K");
  }
  if (!(m < k)) {
    throw std::invalid_argument("gaussian_difference: requires m < k");
  }
  return ConnectivityKernel(GaussianDifference{K, k, M, m});
}

ConnectivityKernel ConnectivityKernel::oscillatory_decay(double b) {
  if (!finite_positive(b)) {
    throw std::invalid_argument("oscillatory_decay: requires b > 0");
  }
  return ConnectivityKernel(OscillatoryDecay{b});
}

double ConnectivityKernel::omega(double x) const {
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GaussianDifference>) {
          const double x2 = x * x;
          return f.K * std::exp(-f.k * x2) - f.M * std::exp(-f.m * x2);
        } else {
          const double ax = std::abs(x);  // cos x = cos|x|, keeps evenness exact
          return std::exp(-f.b * ax) * (f.b * std::sin(ax) + std::cos(ax));
        }
      },
      form_);
}

double ConnectivityKernel::omega_prime(double x) const {
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GaussianDifference>) {
          const double x2 = x * x;
          return 2.0 * x *
                 (f.M * f.m * std::exp(-f.m * x2) - f.K * f.k * std::exp(-f.k * x2));
        } else {
          const double ax = std::abs(x);
          const double d = -(1.0 + f.b * f.b) * std::exp(-f.b * ax) * std::sin(ax);
          return x < 0 ? -d : d;
        }
      },
      form_);
}

double ConnectivityKernel::antiderivative(double x) const {
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GaussianDifference>) {
          return gauss_half_mass(f.K, f.k) * std::erf(std::sqrt(f.k) * x) -
                 gauss_half_mass(f.M, f.m) * std::erf(std::sqrt(f.m) * x);
        } else {
          const double ax = std::abs(x);
          const double b = f.b;
          const double w = (std::exp(-b * ax) * ((1.0 - b * b) * std::sin(ax) -
                                                 2.0 * b * std::cos(ax)) +
                            2.0 * b) /
                           (1.0 + b * b);
          return x < 0 ? -w : w;
        }
      },
      form_);
}

double ConnectivityKernel::limit_at_infinity() const {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GaussianDifference>) {
          return gauss_half_mass(f.K, f.k) - gauss_half_mass(f.M, f.m);
        } else {
          return 2.0 * f.b / (1.0 + f.b * f.b);
        }
      },
      form_);
}

double ConnectivityKernel::tail_bound(double X) const {
  if (X < 0) X = 0;
  return std::visit(
      [X](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GaussianDifference>) {
          return gauss_half_mass(f.K, f.k) * std::erfc(std::sqrt(f.k) * X) +
                 gauss_half_mass(f.M, f.m) * std::erfc(std::sqrt(f.m) * X);
        } else {
          // |omega(x)| <= (b + 1) e^{-b x}
          return (f.b + 1.0) * std::exp(-f.b * X) / f.b;
        }
      },
      form_);
}

double ConnectivityKernel::decay_length() const {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GaussianDifference>) {
          return 1.0 / std::sqrt(f.m);  // slower of the two Gaussians
        } else {
          return 1.0 / f.b;
        }
      },
      form_);
}

double ConnectivityKernel::scan_upper_default() const {
  double upper = std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GaussianDifference>) {
          // ten times the single positive zero of omega
          return 10.0 * std::sqrt(std::log(f.K / f.M) / (f.k - f.m));
        } else {
          return 10.0 / f.b;
        }
      },
      form_);
  while (tail_bound(upper) >= 1e-9) upper *= 1.5;
  return upper;
}

double ConnectivityKernel::r(double x, double y) const {
  return omega(y - x) + omega(y + x);
}

double ConnectivityKernel::phi(double x, double y) const {
  if (y < 0) {
    throw std::domain_error("phi: requires y >= 0");
  }
  return antiderivative(y + x) + antiderivative(y - x);
}

double ConnectivityKernel::dphi_dx(double x, double y) const {
  return omega(y + x) - omega(y - x);
}

std::string ConnectivityKernel::describe() const {
  std::ostringstream out;
  std::visit(
      [&out](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GaussianDifference>) {
          out << "gaussian_difference(K=" << f.K << ", k=" << f.k << ", M=" << f.M
              << ", m=" << f.m << ")";
        } else {
          out << "oscillatory_decay(b=" << f.b << ")";
        }
      },
      form_);
  return out.str();
}

FiringRate FiringRate::heaviside(double shift) {
  if (!std::isfinite(shift)) {
    throw std::invalid_argument("heaviside: shift must be finite");
  }
  return FiringRate(HeavisideStep{shift});
}

FiringRate FiringRate::logoid(double tau, double p) {
  if (!finite_positive(tau)) {
    throw std::invalid_argument("logoid: requires tau > 0");
  }
  if (!(std::isfinite(p) && p >= 1.0)) {
    throw std::invalid_argument("logoid: requires p >= 1");
  }
  return FiringRate(LogoidRamp{tau, p});
}

double FiringRate::value(double u) const {
  return std::visit(
      [u](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, HeavisideStep>) {
          return u >= f.shift ? 1.0 : 0.0;
        } else {
          const double v = u / f.tau;
          if (v <= 0.0) return 0.0;
          if (v >= 1.0) return 1.0;
          const double num = std::pow(v, f.p);
          return num / (num + std::pow(1.0 - v, f.p));
        }
      },
      form_);
}

double FiringRate::density(double xi) const {
  return std::visit(
      [xi](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, HeavisideStep>) {
          throw NoDensityError(
              "density: the unit-step rate has no density (point mass)");
        } else {
          const double v = xi / f.tau;
          if (v < 0.0 || v > 1.0) return 0.0;
          const double a = std::pow(v, f.p);
          const double b = std::pow(1.0 - v, f.p);
          const double s = a + b;
          // d/dv [a / (a + b)] = p v^{p-1} (1-v)^{p-1} / (a + b)^2
          return f.p * std::pow(v, f.p - 1.0) * std::pow(1.0 - v, f.p - 1.0) /
                 (s * s * f.tau);
        }
      },
      form_);
}

bool FiringRate::has_density() const {
  return std::holds_alternative<LogoidRamp>(form_);
}

double FiringRate::transition_width() const {
  if (const auto* l = std::get_if<LogoidRamp>(&form_)) return l->tau;
  return 0.0;
}

std::string FiringRate::describe() const {
  std::ostringstream out;
  std::visit(
      [&out](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, HeavisideStep>) {
          out << "heaviside(shift=" << f.shift << ")";
        } else {
          out << "logoid(tau=" << f.tau << ", p=" << f.p << ")";
        }
      },
      form_);
  return out.str();
}

}  // namespace bumpfield
