#pragma once

#include <stdexcept>
#include <string>

namespace bumpfield {

/// Adaptive quadrature could not meet the requested tolerance.
/// Carries the last two panel-refinement estimates for diagnosis.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_estimate(previous), last_estimate(last) {}
  double previous_estimate;
  double last_estimate;
};

/// Input to the direct iteration operator left the ordered interval
/// [u_tau, u_0] by more than the configured slack.
struct OrderViolationError : std::runtime_error {
  OrderViolationError(const std::string& what, double where, double by)
      : std::runtime_error(what), x(where), amount(by) {}
  double x;       // grid location of the worst violation
  double amount;  // how far outside the interval
};

/// A width-profile iterate escaped [delta_tau - slack, delta_0 + slack],
/// which signals a bad step size k.
struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& what, double at_t, double val, int iter = -1)
      : std::runtime_error(what), t(at_t), value(val), iteration(iter) {}
  double t;
  double value;
  int iteration;  // -1 when raised outside an iteration loop
};

/// A constructed profile failed the bump shape validation.
struct NotABumpError : std::runtime_error {
  NotABumpError(const std::string& what, double where, double val)
      : std::runtime_error(what), witness_x(where), value(val) {}
  double witness_x;
  double value;
};

/// No admissible width pair with delta_tau < delta_zero exists.
struct Assumption1Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Time integration produced non-finite values.
struct BlowUpError : std::runtime_error {
  BlowUpError(const std::string& what, int at_step)
      : std::runtime_error(what), step(at_step) {}
  int step;
};

/// Operation needs a firing rate with a density (smoothed step), but a
/// unit-step rate was supplied.
struct NoDensityError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Experiment configuration file could not be parsed.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& what, int at_line = 0, std::string in_field = {})
      : std::runtime_error(what), line(at_line), field(std::move(in_field)) {}
  int line;           // 1-based, 0 when not tied to a line
  std::string field;  // "section.key" when known
};

}  // namespace bumpfield
