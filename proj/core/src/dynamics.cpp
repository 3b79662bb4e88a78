#include "bumpfield/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bumpfield {

namespace {

// Uniform-weight discrete convolution over the state grid. The kernel row
// depends only on the node distance, so shifting the activity by whole
// cells shifts the result exactly.
struct Convolution {
  std::vector<double> row;  // omega(d * spacing) * spacing, d = 0 .. n-1
  int n;

  Convolution(const ConnectivityKernel& kernel, const Grid& grid) : n(grid.n) {
    const double s = grid.spacing();
    row.resize(n);
    for (int d = 0; d < n; ++d) row[d] = kernel.omega(d * s) * s;
  }

  void apply(const std::vector<double>& fired, std::vector<double>& out) const {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += row[std::abs(i - j)] * fired[j];
      out[i] = acc;
    }
  }
};

void fire(const FiringRate& rate, double h, const std::vector<double>& u,
          std::vector<double>& fired) {
  for (std::size_t i = 0; i < u.size(); ++i) fired[i] = rate.value(u[i] - h);
}

}  // namespace

const char* to_string(ProbeVerdict v) {
  return v == ProbeVerdict::Returned ? "returned" : "departed";
}

EvolutionState evolve(const ConnectivityKernel& kernel, const FiringRate& rate,
                      double h, EvolutionState state, double dt, int steps) {
  if (!(dt > 0 && dt <= 0.5)) {
    throw std::invalid_argument("evolve: requires 0 < dt <= 0.5");
  }
  if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");

  const Convolution conv(kernel, state.u.grid);
  std::vector<double> u = state.u.values;
  std::vector<double> fired(u.size());
  std::vector<double> input(u.size());

  for (int s = 0; s < steps; ++s) {
    fire(rate, h, u, fired);
    conv.apply(fired, input);
    bool finite = true;
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] += dt * (-u[i] + input[i]);
      finite = finite && std::isfinite(u[i]);
    }
    if (!finite) {
      std::ostringstream msg;
      msg << "evolve: non-finite activity at step " << s + 1;
      throw BlowUpError(msg.str(), s + 1);
    }
  }
  const double t_final = state.time + steps * dt;
  return EvolutionState{SampledFunction(state.u.grid, std::move(u)), t_final};
}

double stationarity_residual(const ConnectivityKernel& kernel, const FiringRate& rate,
                             double h, const SampledFunction& u) {
  const Convolution conv(kernel, u.grid);
  std::vector<double> fired(u.values.size());
  std::vector<double> input(u.values.size());
  fire(rate, h, u.values, fired);
  conv.apply(fired, input);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    worst = std::max(worst, std::abs(input[i] - u.values[i]));
  }
  return worst;
}

StabilityProbe probe_stability(const ConnectivityKernel& kernel,
                               const FiringRate& rate, double h,
                               const BumpSolution& bump, double amplitude,
                               double horizon, double dt) {
  if (amplitude < 0) {
    throw std::invalid_argument("probe_stability: amplitude must be >= 0");
  }
  const double peak =
      *std::max_element(bump.u.values.begin(), bump.u.values.end());
  if (amplitude > 1e-2 * peak) {
    throw std::invalid_argument(
        "probe_stability: amplitude must stay within one percent of the peak");
  }
  if (!(horizon > 0)) {
    throw std::invalid_argument("probe_stability: horizon must be positive");
  }

  const Grid& grid = bump.u.grid;
  std::vector<double> perturbed = bump.u.values;
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.point(i);
    perturbed[i] += amplitude * std::exp(-x * x);
  }

  EvolutionState state{SampledFunction(grid, std::move(perturbed)), 0.0};
  const int steps = static_cast<int>(std::ceil(horizon / dt));

  StabilityProbe probe;
  probe.history.reserve(steps + 1);
  auto deviation = [&](const SampledFunction& u) {
    double worst = 0.0;
    for (int i = 0; i < grid.n; ++i) {
      worst = std::max(worst, std::abs(u.values[i] - bump.u.values[i]));
    }
    return worst;
  };
  probe.history.emplace_back(0.0, deviation(state.u));
  probe.max_deviation = probe.history.back().second;

  for (int s = 0; s < steps; ++s) {
    state = evolve(kernel, rate, h, std::move(state), dt, 1);
    const double dev = deviation(state.u);
    probe.history.emplace_back(state.time, dev);
    probe.max_deviation = std::max(probe.max_deviation, dev);
  }
  probe.final_deviation = probe.history.back().second;
  // absolute floor covers the zero-amplitude probe, where quadrature
  // noise alone sets the deviation scale
  const double threshold = std::max(amplitude / 2.0, 1e-6);
  probe.verdict = probe.final_deviation <= threshold ? ProbeVerdict::Returned
                                                     : ProbeVerdict::Departed;
  return probe;
}

}  // namespace bumpfield
