// Command line front end: runs configured experiments and writes CSV
// curves plus a scalar summary for external plotting.

#include <CLI11.hpp>
#include <iostream>

#include "bumpfield/experiment.hpp"

namespace {

using bumpfield::ExperimentConfig;
using bumpfield::ResultBundle;
using bumpfield::RunStage;

int run_stage(const std::string& config_path, const std::string& out_override,
              RunStage stage) {
  ExperimentConfig config = ExperimentConfig::from_file(config_path);
  if (!out_override.empty()) config.out_dir = out_override;

  const ResultBundle bundle = bumpfield::run(config, stage);
  const auto files = bumpfield::write_outputs(bundle, config.out_dir);

  for (const auto& f : files) std::cout << "wrote " << f << "\n";
  for (const auto& n : bundle.notes) std::cerr << "note: " << n << "\n";
  if (bundle.pair_failed) {
    std::cerr << "aborted: no admissible width pair (delta_tau < delta_zero); "
                 "see summary.txt\n";
  }
  const int code = bumpfield::exit_code(bundle);
  if (code == 0) {
    std::cout << "ok\n";
  } else {
    std::cerr << "finished with failures (exit " << code << ")\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bumpfield: constructs localized stationary activity profiles of a "
               "one-population neural field by two monotone iteration schemes"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    RunStage stage;
  };
  const Sub subs[] = {
      {"widths", "solve the width equations and select the pair", RunStage::Widths},
      {"check", "widths plus the numerical hypothesis checks", RunStage::Check},
      {"direct", "run the direct fixed-point scheme and extend the bump",
       RunStage::Direct},
      {"width-scheme", "run the excitation-width scheme and reconstruct the bump",
       RunStage::WidthScheme},
      {"simulate", "direct scheme plus time-evolution stability probes",
       RunStage::Simulate},
      {"all", "full pipeline per the config selection", RunStage::All},
  };

  std::string config_path;
  std::string out_dir;
  for (const auto& s : subs) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    cmd->add_option("--config", config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "output directory (overrides [output] dir)");
  }

  CLI11_PARSE(app, argc, argv);

  RunStage stage = RunStage::All;
  for (const auto& s : subs) {
    if (app.got_subcommand(s.name)) stage = s.stage;
  }

  try {
    return run_stage(config_path, out_dir, stage);
  } catch (const bumpfield::ConfigError& e) {
    std::cerr << "config error";
    if (e.line > 0) std::cerr << " (line " << e.line << ")";
    if (!e.field.empty()) std::cerr << " [" << e.field << "]";
    std::cerr << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
