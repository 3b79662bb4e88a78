#pragma once

#include <utility>
#include <vector>

#include "bumpfield/kernels.hpp"
#include "bumpfield/numerics.hpp"
#include "bumpfield/scheme_direct.hpp"

namespace bumpfield {

/// Activity sampled on a fixed symmetric window, advanced in time by the
/// relaxation equation u_t = -u + (omega * f(u - h)).
struct EvolutionState {
  SampledFunction u;
  double time = 0.0;
};

/// Explicit first-order time stepping; the spatial convolution uses a
/// translation-invariant uniform-weight rule, exact for whole-cell shifts
/// of interior-supported activity. Requires 0 < dt <= 0.5. Throws
/// BlowUpError with the step index on non-finite values.
EvolutionState evolve(const ConnectivityKernel& kernel, const FiringRate& rate,
                      double h, EvolutionState state, double dt, int steps);

/// max_x |-u + (omega * f(u - h))| on the window; a valid stationary
/// profile has a small residual.
double stationarity_residual(const ConnectivityKernel& kernel, const FiringRate& rate,
                             double h, const SampledFunction& u);

enum class ProbeVerdict { Returned, Departed };

const char* to_string(ProbeVerdict v);

struct StabilityProbe {
  ProbeVerdict verdict = ProbeVerdict::Departed;
  double max_deviation = 0.0;    // over the whole run
  double final_deviation = 0.0;  // at the horizon
  std::vector<std::pair<double, double>> history;  // (time, deviation)
};

/// Adds a smooth even perturbation of the given amplitude to the bump,
/// evolves to the horizon, and reports whether the deviation from the
/// bump fell back below half the amplitude. Requires amplitude at most
/// one percent of the peak.
StabilityProbe probe_stability(const ConnectivityKernel& kernel,
                               const FiringRate& rate, double h,
                               const BumpSolution& bump, double amplitude,
                               double horizon, double dt = 0.05);

}  // namespace bumpfield
