// Command-line front end: plan, simulate, sweep-gaussian, optimize-k.
// Exit codes: 0 success, 1 runtime failure, 2 config error, 3 bound violation.

#include "lts/driver.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

namespace {

constexpr int kConfigError = 2;
constexpr int kBoundViolation = 3;

struct Options {
  std::string config;
  std::string out = ".";
  std::string mode;
  bool quiet = false;
  double epsilon = 1e-4;
  int k = 2;
  double T = 2.0;
  std::vector<double> widths;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  f << text;
}

std::string timing_csv(const std::string& command, double seconds) {
  return fmt::format("command,wall_seconds\n{},{}\n", command, lts::fmt_double(seconds));
}

struct Loaded {
  lts::RunConfig cfg;
  lts::catalog::Entry entry;
};

Loaded load(const Options& o) {
  Loaded l;
  l.cfg = lts::load_config(o.config);
  if (!o.mode.empty()) {
    try {
      l.cfg.mode = lts::parse_mode(o.mode);
    } catch (const lts::InvalidInput& e) {
      throw lts::ConfigError("--mode", e.what());
    }
  }
  try {
    l.entry = lts::catalog::make(l.cfg.catalog, l.cfg.params, l.cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw lts::ConfigError("hamiltonian.catalog", fmt::format("hamiltonian.catalog/params: {}", e.what()));
  } catch (const std::domain_error& e) {
    throw lts::ConfigError("hamiltonian.params", fmt::format("hamiltonian.params: {}", e.what()));
  }
  return l;
}

int cmd_plan(const Options& o) {
  const Loaded l = load(o);
  const auto t0 = std::chrono::steady_clock::now();
  const lts::RunResult r = lts::plan_run(l.cfg, l.entry);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_file(dir / "plan.txt", r.plan.serialize());
  if (r.schedule) write_file(dir / "schedule.txt", r.schedule->serialize());
  write_file(dir / "cost.csv", lts::CostReport::csv_header() + "\n" + r.cost.csv_row() + "\n");
  write_file(dir / "timing.csv", timing_csv("plan", secs));
  if (!o.quiet) {
    fmt::print("mode={} k={} r={} r_g={} N_exp={} N_oracle={} (bound {:.6g})\n", lts::to_string(l.cfg.mode), r.cost.k,
               r.cost.r, r.cost.r_g, r.cost.N_exp_actual, r.cost.N_oracle_measured, r.oracle_bound);
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  const Loaded l = load(o);
  const auto t0 = std::chrono::steady_clock::now();
  const lts::RunResult r = lts::simulate_run(l.cfg, l.entry);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_file(dir / "plan.txt", r.plan.serialize());
  if (r.schedule) write_file(dir / "schedule.txt", r.schedule->serialize());
  write_file(dir / "cost.csv", lts::CostReport::csv_header() + "\n" + r.cost.csv_row() + "\n");
  write_file(dir / "result.csv",
             fmt::format("epsilon,error,integrator_error,roundoff,N_exp,N_oracle_measured,N_T_measured\n"
                         "{},{},{},{},{},{},{}\n",
                         lts::fmt_double(l.cfg.epsilon), lts::fmt_double(r.error), lts::fmt_double(r.integrator_error),
                         lts::fmt_double(r.roundoff), r.cost.N_exp_actual, r.cost.N_oracle_measured,
                         r.cost.N_T_measured));
  write_file(dir / "timing.csv", timing_csv("simulate", secs));
  const auto violations = lts::verify(r, l.cfg.epsilon);
  if (!o.quiet) {
    fmt::print("error={:.3e} (eps {:.3e}) N_exp={} N_oracle={} N_T={} wall={:.3f}s\n", r.error, l.cfg.epsilon,
               r.cost.N_exp_actual, r.cost.N_oracle_measured, r.cost.N_T_measured, secs);
  }
  for (const auto& v : violations) fmt::print(stderr, "violation: {}\n", v);
  return violations.empty() ? 0 : kBoundViolation;
}

int cmd_sweep(const Options& o) {
  std::vector<double> widths = o.widths;
  if (widths.empty()) {
    for (int i = 0; i < 10; ++i) widths.push_back(0.02 * std::pow(50.0, i / 9.0));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = lts::sweep_gaussian(widths, o.epsilon, o.k);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const fs::path dir(o.out);
  fs::create_directories(dir);
  const std::string csv = lts::sweep_csv(rows);
  write_file(dir / "sweep_gaussian.csv", csv);
  write_file(dir / "timing.csv", timing_csv("sweep-gaussian", secs));
  if (!o.quiet) fmt::print("{}", csv);
  return 0;
}

int cmd_optimize(const Options& o) {
  const lts::catalog::Entry entry = lts::catalog::singular(o.T);
  const auto t0 = std::chrono::steady_clock::now();
  const lts::KOptimization opt = lts::optimize_adaptive_k(entry, entry.hamiltonian.interval, o.epsilon);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_file(dir / "optimize_k.csv", lts::optimize_csv(opt));
  write_file(dir / "timing.csv", timing_csv("optimize-k", secs));
  if (opt.warning) fmt::print(stderr, "warning: cost curve has more than one local minimum\n");
  if (!o.quiet) {
    fmt::print("t'={:.6g}{} N_exp={} (k=1 only {}, k=2 only {})\n", opt.t_split, opt.interior ? "" : " (endpoint)", opt.n_exp, opt.single_k1,
               opt.single_k2);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-Trotter-Suzuki planner and simulator for time-dependent Hamiltonians"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_flag("--quiet", o.quiet, "Suppress the summary line");
  };

  auto* plan = app.add_subcommand("plan", "Build the plan and cost report without executing");
  plan->add_option("--config", o.config, "INI config file")->required();
  plan->add_option("--mode", o.mode, "Override simulation.mode");
  add_common(plan);

  auto* sim = app.add_subcommand("simulate", "Plan, execute with discretized oracles and check the bounds");
  sim->add_option("--config", o.config, "INI config file")->required();
  sim->add_option("--mode", o.mode, "Override simulation.mode");
  add_common(sim);

  auto* sweep = app.add_subcommand("sweep-gaussian", "Adaptive vs constant-step exponentials over Gaussian widths");
  sweep->add_option("--a", o.widths, "Widths (default: 10-point log grid on [0.02, 1])");
  sweep->add_option("--epsilon", o.epsilon, "Target error")->capture_default_str();
  sweep->add_option("--k", o.k, "Integrator order")->capture_default_str();
  add_common(sweep);

  auto* optk = app.add_subcommand("optimize-k", "Two-interval adaptive-k cost curve for the singular entry");
  optk->add_option("--epsilon", o.epsilon, "Target error")->capture_default_str();
  optk->add_option("--T", o.T, "Interval length [0, T]")->capture_default_str()->check(CLI::PositiveNumber);
  add_common(optk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*plan) return cmd_plan(o);
    if (*sim) return cmd_simulate(o);
    if (*sweep) return cmd_sweep(o);
    return cmd_optimize(o);
  } catch (const lts::ConfigError& e) {
    fmt::print(stderr, "config error [{}]: {}\n", e.key, e.what());
    return kConfigError;
  } catch (const lts::DomainError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
