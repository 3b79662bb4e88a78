#include "bumpfield/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace bumpfield {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, int line, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected a number for " + field + ", got '" + value + "'",
                      line, field);
  }
}

int parse_int(const std::string& value, int line, const std::string& field) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer for " + field + ", got '" + value + "'",
                      line, field);
  }
}

std::size_t parse_index(const std::string& value, int line, const std::string& field) {
  const int v = parse_int(value, line, field);
  if (v < 0) throw ConfigError(field + " must be >= 0", line, field);
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& value, int line, const std::string& field) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("expected true/false for " + field + ", got '" + value + "'",
                    line, field);
}

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("unterminated section header", line_no);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "kernel" && section != "rate" && section != "model" &&
          section != "widths" && section != "scheme" && section != "extension" &&
          section != "simulate" && section != "output") {
        throw ConfigError("unknown section [" + section + "]", line_no, section);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value", line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string field = section + "." + key;
    if (section.empty()) {
      throw ConfigError("key '" + key + "' outside any section", line_no, key);
    }

    if (section == "kernel") {
      if (key == "type") cfg.kernel_type = value;
      else if (key == "K") cfg.K = parse_double(value, line_no, field);
      else if (key == "k") cfg.k = parse_double(value, line_no, field);
      else if (key == "M") cfg.M = parse_double(value, line_no, field);
      else if (key == "m") cfg.m = parse_double(value, line_no, field);
      else if (key == "b") cfg.b = parse_double(value, line_no, field);
      else throw ConfigError("unknown key " + field, line_no, field);
    } else if (section == "rate") {
      if (key == "type") cfg.rate_type = value;
      else if (key == "tau") cfg.tau = parse_double(value, line_no, field);
      else if (key == "p") cfg.p = parse_double(value, line_no, field);
      else if (key == "shift") cfg.shift = parse_double(value, line_no, field);
      else throw ConfigError("unknown key " + field, line_no, field);
    } else if (section == "model") {
      if (key == "h") cfg.h = parse_double(value, line_no, field);
      else throw ConfigError("unknown key " + field, line_no, field);
    } else if (section == "widths") {
      if (key == "policy") cfg.pair_policy = value;
      else if (key == "tau_index") cfg.tau_index = parse_index(value, line_no, field);
      else if (key == "zero_index") cfg.zero_index = parse_index(value, line_no, field);
      else if (key == "scan_upper") cfg.scan_upper = parse_double(value, line_no, field);
      else throw ConfigError("unknown key " + field, line_no, field);
    } else if (section == "scheme") {
      if (key == "selection") cfg.selection = value;
      else if (key == "grid_n") cfg.grid_n = parse_int(value, line_no, field);
      else if (key == "grid_m") cfg.grid_m = parse_int(value, line_no, field);
      else if (key == "tol_direct") cfg.tol_direct = parse_double(value, line_no, field);
      else if (key == "tol_width") cfg.tol_width = parse_double(value, line_no, field);
      else if (key == "max_iter_direct")
        cfg.max_iter_direct = parse_int(value, line_no, field);
      else if (key == "max_iter_width")
        cfg.max_iter_width = parse_int(value, line_no, field);
      else if (key == "k_policy") cfg.k_policy = value;
      else if (key == "sigma") cfg.sigma = parse_double(value, line_no, field);
      else if (key == "k") cfg.k_explicit = parse_double(value, line_no, field);
      else if (key == "scan_per_axis")
        cfg.scan_per_axis = parse_int(value, line_no, field);
      else throw ConfigError("unknown key " + field, line_no, field);
    } else if (section == "extension") {
      if (key == "X") cfg.extension_x = parse_double(value, line_no, field);
      else if (key == "out_n") cfg.out_n = parse_int(value, line_no, field);
      else throw ConfigError("unknown key " + field, line_no, field);
    } else if (section == "simulate") {
      if (key == "enabled") cfg.simulate = parse_bool(value, line_no, field);
      else if (key == "dt") cfg.dt = parse_double(value, line_no, field);
      else if (key == "horizon") cfg.horizon = parse_double(value, line_no, field);
      else if (key == "amplitude") cfg.amplitude = parse_double(value, line_no, field);
      else if (key == "probe_unstable")
        cfg.probe_unstable = parse_bool(value, line_no, field);
      else throw ConfigError("unknown key " + field, line_no, field);
    } else {  // output
      if (key == "dir") cfg.out_dir = value;
      else throw ConfigError("unknown key " + field, line_no, field);
    }
  }

  if (cfg.kernel_type != "gaussian_difference" && cfg.kernel_type != "oscillatory_decay") {
    throw ConfigError("kernel.type must be gaussian_difference or oscillatory_decay",
                      0, "kernel.type");
  }
  if (cfg.rate_type != "logoid" && cfg.rate_type != "heaviside") {
    throw ConfigError("rate.type must be logoid or heaviside", 0, "rate.type");
  }
  if (cfg.selection != "direct" && cfg.selection != "width" && cfg.selection != "both") {
    throw ConfigError("scheme.selection must be direct, width or both", 0,
                      "scheme.selection");
  }
  if (cfg.pair_policy != "smallest-unstable" && cfg.pair_policy != "largest-stable" &&
      cfg.pair_policy != "explicit") {
    throw ConfigError(
        "widths.policy must be smallest-unstable, largest-stable or explicit", 0,
        "widths.policy");
  }
  if (cfg.k_policy != "auto" && cfg.k_policy != "explicit") {
    throw ConfigError("scheme.k_policy must be auto or explicit", 0, "scheme.k_policy");
  }
  if (!(cfg.h > 0)) throw ConfigError("model.h must be positive", 0, "model.h");
  if (!(cfg.tau > 0)) throw ConfigError("rate.tau must be positive", 0, "rate.tau");
  try {
    cfg.make_kernel();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid kernel parameters: ") + e.what(), 0,
                      "kernel");
  }
  try {
    cfg.make_rate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid rate parameters: ") + e.what(), 0, "rate");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return from_string(text.str());
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream out;
  out << "[kernel]\n"
      << "type = " << kernel_type << "\n"
      << "K = " << fmt(K) << "\n"
      << "k = " << fmt(k) << "\n"
      << "M = " << fmt(M) << "\n"
      << "m = " << fmt(m) << "\n"
      << "b = " << fmt(b) << "\n"
      << "[rate]\n"
      << "type = " << rate_type << "\n"
      << "tau = " << fmt(tau) << "\n"
      << "p = " << fmt(p) << "\n"
      << "shift = " << fmt(shift) << "\n"
      << "[model]\n"
      << "h = " << fmt(h) << "\n"
      << "[widths]\n"
      << "policy = " << pair_policy << "\n"
      << "tau_index = " << tau_index << "\n"
      << "zero_index = " << zero_index << "\n"
      << "scan_upper = " << fmt(scan_upper) << "\n"
      << "[scheme]\n"
      << "selection = " << selection << "\n"
      << "grid_n = " << grid_n << "\n"
      << "grid_m = " << grid_m << "\n"
      << "tol_direct = " << fmt(tol_direct) << "\n"
      << "tol_width = " << fmt(tol_width) << "\n"
      << "max_iter_direct = " << max_iter_direct << "\n"
      << "max_iter_width = " << max_iter_width << "\n"
      << "k_policy = " << k_policy << "\n"
      << "sigma = " << fmt(sigma) << "\n"
      << "k = " << fmt(k_explicit) << "\n"
      << "scan_per_axis = " << scan_per_axis << "\n"
      << "[extension]\n"
      << "X = " << fmt(extension_x) << "\n"
      << "out_n = " << out_n << "\n"
      << "[simulate]\n"
      << "enabled = " << (simulate ? "true" : "false") << "\n"
      << "dt = " << fmt(dt) << "\n"
      << "horizon = " << fmt(horizon) << "\n"
      << "amplitude = " << fmt(amplitude) << "\n"
      << "probe_unstable = " << (probe_unstable ? "true" : "false") << "\n"
      << "[output]\n"
      << "dir = " << out_dir << "\n";
  return out.str();
}

ConnectivityKernel ExperimentConfig::make_kernel() const {
  if (kernel_type == "gaussian_difference") {
    return ConnectivityKernel::gaussian_difference(K, k, M, m);
  }
  return ConnectivityKernel::oscillatory_decay(b);
}

FiringRate ExperimentConfig::make_rate() const {
  if (rate_type == "logoid") return FiringRate::logoid(tau, p);
  return FiringRate::heaviside(shift);
}

PairPolicy ExperimentConfig::make_policy() const {
  if (pair_policy == "smallest-unstable") return PairPolicy::smallest_unstable();
  if (pair_policy == "largest-stable") return PairPolicy::largest_stable();
  return PairPolicy::explicit_pair(tau_index, zero_index);
}

namespace {

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (!(v[i + 1] < v[i])) return false;
  }
  return true;
}

SampledFunction midpoint(const SampledFunction& a, const SampledFunction& b) {
  std::vector<double> v(a.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (a.values[i] + b.values[i]);
  return SampledFunction(a.grid, std::move(v));
}

}  // namespace

ResultBundle run(const ExperimentConfig& config, RunStage stage) {
  ResultBundle bundle;
  bundle.config = config;

  const ConnectivityKernel kernel = config.make_kernel();
  const FiringRate rate = config.make_rate();
  const double h = config.h;
  const double tau = config.tau;

  const double scan_upper =
      config.scan_upper > 0 ? config.scan_upper : kernel.scan_upper_default();
  bundle.solutions_h = solve_half_widths(kernel, h, scan_upper);
  bundle.solutions_h_plus_tau = solve_half_widths(kernel, h + tau, scan_upper);

  if (bundle.solutions_h.empty() || bundle.solutions_h_plus_tau.empty()) {
    bundle.pair_failed = true;
    bundle.notes.push_back(
        bundle.solutions_h.empty()
            ? "no width solves W(2 delta) = h; the level misses the range of W"
            : "no width solves W(2 delta) = h + tau; the level misses the range of W");
    return bundle;
  }
  try {
    bundle.pair = select_width_pair(bundle.solutions_h, bundle.solutions_h_plus_tau,
                                    config.make_policy());
  } catch (const Assumption1Error& e) {
    bundle.pair_failed = true;
    bundle.notes.push_back(std::string("width pair selection failed: ") + e.what());
    return bundle;
  }
  try {
    bundle.pair_stable =
        select_width_pair(bundle.solutions_h, bundle.solutions_h_plus_tau,
                          PairPolicy::largest_stable());
  } catch (const Assumption1Error&) {
    // no stable companion; ordering data simply omitted
  }
  if (stage == RunStage::Widths) return bundle;

  const WidthPair& pair = *bundle.pair;
  bundle.report =
      check_static(kernel, rate, h, tau, pair, ScanOptions{config.scan_per_axis, 0.0});
  try {
    bundle.m_bound = compute_m(kernel, pair.delta_tau.half_width,
                               pair.delta_zero.half_width);
  } catch (const std::domain_error& e) {
    bundle.notes.push_back(std::string("step bound unavailable: ") + e.what());
  }
  if (stage == RunStage::Check) return bundle;

  const bool want_direct = stage == RunStage::Direct || stage == RunStage::Simulate ||
                           (stage == RunStage::All && config.selection != "width");
  const bool want_width = stage == RunStage::WidthScheme ||
                          (stage == RunStage::All && config.selection != "direct");
  const double X = config.extension_x > 0 ? config.extension_x
                                          : extension_halfwidth_default(kernel, pair);

  if (want_direct) {
    DirectConfig dc;
    dc.grid_n = config.grid_n;
    dc.tol = config.tol_direct;
    dc.max_iter = config.max_iter_direct;
    bundle.direct = iterate_direct(kernel, rate, h, pair, dc);
    if (!bundle.direct->trace.converged) {
      bundle.notes.push_back("direct scheme did not converge within max_iter");
    }
    try {
      const SampledFunction u_star = midpoint(bundle.direct->lower, bundle.direct->upper);
      bundle.bump_direct =
          extend_bump(kernel, rate, h, pair, u_star, X, config.out_n);
      bundle.stationarity =
          stationarity_residual(kernel, rate, h, bundle.bump_direct->u);
    } catch (const std::exception& e) {
      bundle.notes.push_back(std::string("bump extension failed: ") + e.what());
    }
  }

  if (want_width) {
    if (!rate.has_density()) {
      bundle.notes.push_back("width scheme skipped: rate has no density");
    } else {
      WidthConfig wc;
      wc.grid_m = config.grid_m;
      wc.tol = config.tol_width;
      wc.max_iter = config.max_iter_width;
      wc.auto_k = config.k_policy == "auto";
      wc.sigma = config.sigma;
      wc.explicit_k = config.k_explicit;
      try {
        bundle.width = iterate_width(kernel, rate, h, tau, pair, wc);
        if (!bundle.width->trace.converged) {
          bundle.notes.push_back("width scheme did not converge within max_iter");
        }
        bundle.report.merge(bundle.width->posterior);
        bundle.bump_width = reconstruct_bump(kernel, rate, h, tau,
                                             bundle.width->upper, X, config.out_n);
      } catch (const std::exception& e) {
        bundle.notes.push_back(std::string("width scheme failed: ") + e.what());
      }
    }
  }

  if (bundle.bump_direct && bundle.width) {
    bundle.cross_validation = cross_validate(*bundle.bump_direct, bundle.width->upper);
  }

  const bool want_probe =
      stage == RunStage::Simulate || (stage == RunStage::All && config.simulate);
  if (want_probe && bundle.bump_direct) {
    bundle.probe = probe_stability(kernel, rate, h, *bundle.bump_direct,
                                   config.amplitude, config.horizon, config.dt);
    if (config.probe_unstable) {
      // unit-step field bump of width 2 delta_tau, threshold shifted to h + tau
      const Grid grid = bundle.bump_direct->u.grid;
      std::vector<double> v(grid.n);
      for (int i = 0; i < grid.n; ++i) {
        v[i] = kernel.phi(grid.point(i), pair.delta_tau.half_width);
      }
      BumpSolution step_bump{SampledFunction(grid, std::move(v)),
                             pair.delta_tau.half_width, pair.delta_tau.half_width,
                             h + tau, 0.0};
      bundle.probe_unstable =
          probe_stability(kernel, FiringRate::heaviside(0.0), h + tau, step_bump,
                          config.amplitude, config.horizon, config.dt);
    }
  }

  return bundle;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& dir, const std::string& name,
                       std::vector<std::string>& written) {
  const auto path = dir / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  written.push_back(path.string());
  return out;
}

void write_width_rows(std::ofstream& out, const std::vector<WidthSolution>& sols) {
  for (const auto& s : sols) {
    out << s.level << "," << s.half_width << "," << s.omega_at_width << ","
        << to_string(s.stability) << "," << (s.profile_ok ? "yes" : "no") << "\n";
  }
}

}  // namespace

std::vector<std::string> write_outputs(const ResultBundle& bundle,
                                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  std::vector<std::string> written;

  {
    auto out = open_csv(dir, "widths.csv", written);
    out << "level,half_width,omega_at_full_width,stability,profile_ok\n";
    write_width_rows(out, bundle.solutions_h);
    write_width_rows(out, bundle.solutions_h_plus_tau);
  }

  if (bundle.direct) {
    {
      auto out = open_csv(dir, "errors_direct.csv", written);
      out << "n,epsilon\n";
      for (std::size_t i = 0; i < bundle.direct->trace.errors.size(); ++i) {
        out << i + 1 << "," << bundle.direct->trace.errors[i] << "\n";
      }
    }
    {
      const ConnectivityKernel kernel = bundle.config.make_kernel();
      auto out = open_csv(dir, "interval_direct.csv", written);
      const bool with_stable = bundle.pair_stable.has_value();
      out << "x,u_lower,u_upper,u_tau,u_zero" << (with_stable ? ",u_tau_stable" : "")
          << "\n";
      const Grid& g = bundle.direct->lower.grid;
      for (int i = 0; i < g.n; ++i) {
        const double x = g.point(i);
        out << x << "," << bundle.direct->lower.values[i] << ","
            << bundle.direct->upper.values[i] << "," << kernel.phi(x, g.a) << ","
            << kernel.phi(x, g.b);
        if (with_stable) {
          out << "," << kernel.phi(x, bundle.pair_stable->delta_tau.half_width);
        }
        out << "\n";
      }
    }
  }
  if (bundle.bump_direct) {
    auto out = open_csv(dir, "bump_direct.csv", written);
    out << "x,u\n";
    const Grid& g = bundle.bump_direct->u.grid;
    for (int i = 0; i < g.n; ++i) {
      out << g.point(i) << "," << bundle.bump_direct->u.values[i] << "\n";
    }
  }

  if (bundle.width) {
    {
      auto out = open_csv(dir, "errors_width.csv", written);
      out << "n,epsilon\n";
      for (std::size_t i = 0; i < bundle.width->trace.errors.size(); ++i) {
        out << i + 1 << "," << bundle.width->trace.errors[i] << "\n";
      }
    }
    {
      auto out = open_csv(dir, "profile_width.csv", written);
      out << "t,delta_lower,delta_upper\n";
      const Grid& g = bundle.width->lower.grid;
      for (int i = 0; i < g.n; ++i) {
        out << g.point(i) << "," << bundle.width->lower.values[i] << ","
            << bundle.width->upper.values[i] << "\n";
      }
    }
  }
  if (bundle.bump_width) {
    auto out = open_csv(dir, "bump_width.csv", written);
    out << "x,u\n";
    const Grid& g = bundle.bump_width->u.grid;
    for (int i = 0; i < g.n; ++i) {
      out << g.point(i) << "," << bundle.bump_width->u.values[i] << "\n";
    }
  }

  if (bundle.bump_direct && bundle.width) {
    auto out = open_csv(dir, "crossings.csv", written);
    out << "t,width_profile,direct_crossing,rel_err\n";
    const Grid& g = bundle.width->upper.grid;
    std::vector<double> levels(g.n);
    for (int i = 0; i < g.n; ++i) levels[i] = g.point(i) + bundle.bump_direct->h;
    const auto crossings = level_crossings(*bundle.bump_direct, levels);
    for (int i = 0; i < g.n; ++i) {
      const double d = bundle.width->upper.values[i];
      out << g.point(i) << "," << d << "," << crossings[i] << ","
          << std::abs(d - crossings[i]) / std::abs(crossings[i]) << "\n";
    }
  }

  if (bundle.probe) {
    auto out = open_csv(dir, "probe_direct.csv", written);
    out << "time,deviation\n";
    for (const auto& [t, d] : bundle.probe->history) out << t << "," << d << "\n";
  }
  if (bundle.probe_unstable) {
    auto out = open_csv(dir, "probe_unstable.csv", written);
    out << "time,deviation\n";
    for (const auto& [t, d] : bundle.probe_unstable->history) {
      out << t << "," << d << "\n";
    }
  }

  {
    auto out = open_csv(dir, "summary.txt", written);
    out << "bumpfield result summary (version 0.1.0)\n";
    out << "========================================\n\n";
    out << "--- begin config echo ---\n"
        << bundle.config.canonical_text() << "--- end config echo ---\n\n";

    out << "widths:\n";
    auto describe_sol = [&](const WidthSolution& s) {
      out << "  level " << s.level << ": half_width = " << s.half_width
          << ", omega(2 delta) = " << s.omega_at_width << ", "
          << to_string(s.stability) << ", profile_ok = "
          << (s.profile_ok ? "yes" : "no") << "\n";
    };
    for (const auto& s : bundle.solutions_h) describe_sol(s);
    for (const auto& s : bundle.solutions_h_plus_tau) describe_sol(s);
    if (bundle.pair) {
      out << "  selected pair: delta_tau = " << bundle.pair->delta_tau.half_width
          << ", delta_zero = " << bundle.pair->delta_zero.half_width << "\n";
    }
    if (bundle.pair_stable) {
      out << "  stable companion: delta_tau_stable = "
          << bundle.pair_stable->delta_tau.half_width << "\n";
    }
    out << "\n";

    if (!bundle.report.checks.empty()) {
      out << "assumption checks:\n" << bundle.report.table();
      out << "m bound: " << bundle.m_bound << "\n\n";
    }

    if (bundle.direct) {
      out << "direct scheme: iterations = " << bundle.direct->trace.iterations
          << ", converged = " << (bundle.direct->trace.converged ? "yes" : "no")
          << ", final eps = " << bundle.direct->trace.final_error()
          << ", eps stays below 1e-5 from n = "
          << bundle.direct->trace.settled_at(1e-5) << "\n";
    }
    if (bundle.bump_direct) {
      out << "direct bump: inner crossing = " << bundle.bump_direct->inner_crossing
          << ", outer crossing = " << bundle.bump_direct->outer_crossing
          << ", stationarity residual = " << bundle.stationarity << "\n";
    }
    if (bundle.width) {
      out << "width scheme: iterations = " << bundle.width->trace.iterations
          << ", converged = " << (bundle.width->trace.converged ? "yes" : "no")
          << ", final eps = " << bundle.width->trace.final_error()
          << ", eps stays below 1e-5 from n = "
          << bundle.width->trace.settled_at(1e-5)
          << ", realized k = " << bundle.width->realized_k
          << ", m = " << bundle.width->m_bound << ", profile decreasing = "
          << (bundle.width->profile_decreasing ? "yes" : "no") << "\n";
      out << "width profile: delta(0) = " << bundle.width->upper.values.front()
          << ", delta(tau) = " << bundle.width->upper.values.back() << "\n";
    }
    if (bundle.cross_validation >= 0) {
      out << "cross-scheme relative error: " << bundle.cross_validation << "\n";
    }
    if (bundle.probe) {
      out << "stability probe (smooth field): " << to_string(bundle.probe->verdict)
          << ", final deviation = " << bundle.probe->final_deviation << "\n";
    }
    if (bundle.probe_unstable) {
      out << "stability probe (step field, narrow width): "
          << to_string(bundle.probe_unstable->verdict)
          << ", final deviation = " << bundle.probe_unstable->final_deviation << "\n";
    }
    if (!bundle.notes.empty()) {
      out << "\nnotes:\n";
      for (const auto& n : bundle.notes) out << "  - " << n << "\n";
    }
  }
  return written;
}

int exit_code(const ResultBundle& bundle) {
  if (bundle.pair_failed) return 2;
  bool direct_decreasing = true;
  if (bundle.direct) {
    direct_decreasing = strictly_decreasing(bundle.direct->upper.values);
  }
  for (const auto& [id, check] : bundle.report.checks) {
    if (check.holds) continue;
    if (id == AssumptionId::A4 && direct_decreasing) continue;  // advisory bound
    return 2;
  }
  if (bundle.direct && !bundle.direct->trace.converged) return 2;
  if (bundle.width && !bundle.width->trace.converged) return 2;
  if (!bundle.notes.empty()) return 2;  // recorded partial failures block success
  return 0;
}

}  // namespace bumpfield
