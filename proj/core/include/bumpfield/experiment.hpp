#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bumpfield/assumptions.hpp"
#include "bumpfield/dynamics.hpp"
#include "bumpfield/kernels.hpp"
#include "bumpfield/scheme_direct.hpp"
#include "bumpfield/scheme_width.hpp"
#include "bumpfield/widths.hpp"

namespace bumpfield {

/// A full experiment description, parsed from a flat key = value file
/// with [kernel], [rate], [model], [widths], [scheme], [extension],
/// [simulate] and [output] sections. Unknown keys are rejected with the
/// offending line.
struct ExperimentConfig {
  // [kernel]
  std::string kernel_type = "gaussian_difference";  // or oscillatory_decay
  double K = 1.5, k = 2.0, M = 1.0, m = 1.0;
  double b = 0.3;

  // [rate]
  std::string rate_type = "logoid";  // or heaviside
  double tau = 0.05, p = 3.0;
  double shift = 0.0;

  // [model]
  double h = 0.1;

  // [widths]
  std::string pair_policy = "smallest-unstable";
  std::size_t tau_index = 0, zero_index = 0;  // policy "explicit"
  double scan_upper = 0.0;                    // 0: derived from the kernel

  // [scheme]
  std::string selection = "both";  // direct | width | both
  int grid_n = 401, grid_m = 201;
  double tol_direct = 1e-8, tol_width = 1e-8;
  int max_iter_direct = 200, max_iter_width = 500;
  std::string k_policy = "auto";  // or explicit
  double sigma = 0.9, k_explicit = 0.0;
  int scan_per_axis = 401;

  // [extension]
  double extension_x = 0.0;  // 0: derived from the kernel decay length
  int out_n = 1201;

  // [simulate]
  bool simulate = false;
  double dt = 0.05, horizon = 50.0, amplitude = 1e-3;
  bool probe_unstable = false;

  // [output]
  std::string out_dir = "out";

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_string(const std::string& text);

  /// Canonical serialization; parsing it reproduces this config exactly.
  std::string canonical_text() const;

  ConnectivityKernel make_kernel() const;
  FiringRate make_rate() const;
  PairPolicy make_policy() const;
};

/// Which pipeline prefix to run.
enum class RunStage { Widths, Check, Direct, WidthScheme, Simulate, All };

/// Everything a run produced; every number is traceable to the echoed
/// config. Partial failures land in notes and the pipeline continues
/// where soundly possible.
struct ResultBundle {
  ExperimentConfig config;

  std::vector<WidthSolution> solutions_h;
  std::vector<WidthSolution> solutions_h_plus_tau;
  std::optional<WidthPair> pair;
  std::optional<WidthPair> pair_stable;  // largest-stable companion selection

  AssumptionReport report;
  double m_bound = 0.0;

  std::optional<DirectResult> direct;
  std::optional<BumpSolution> bump_direct;
  double stationarity = -1.0;  // max-norm residual of the extended bump

  std::optional<WidthResult> width;
  std::optional<BumpSolution> bump_width;

  double cross_validation = -1.0;

  std::optional<StabilityProbe> probe;
  std::optional<StabilityProbe> probe_unstable;

  std::vector<std::string> notes;
  bool pair_failed = false;
};

ResultBundle run(const ExperimentConfig& config, RunStage stage = RunStage::All);

/// Writes one CSV per curve plus summary.txt into out_dir (created if
/// missing). Returns the list of files written.
std::vector<std::string> write_outputs(const ResultBundle& bundle,
                                       const std::string& out_dir);

/// 0 full success, 2 assumption failure, per the pipeline contract.
/// The conservative A4 bound is advisory: it only forces exit 2 when the
/// directly verified consequence (a decreasing fixed point) fails too.
int exit_code(const ResultBundle& bundle);

}  // namespace bumpfield
