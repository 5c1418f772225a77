#pragma once

#include "lts/adaptive.hpp"
#include "lts/catalog.hpp"
#include "lts/cost.hpp"
#include "lts/integrator.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lts {

enum class Mode { Constant, Adaptive, Piecewise };

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error(what), key(key) {}
  std::string key;
};

struct RunConfig {
  std::string catalog;
  catalog::Params params;
  std::uint64_t seed = 1;
  Mode mode = Mode::Constant;
  int k = 1;
  double epsilon = 0.01;
  std::optional<double> t0;
  std::optional<double> dt;
  std::optional<int> time_bits_override;
  std::optional<int> value_qubits_override;
  ElementMode elements = ElementMode::Discretized;
};

/// Read an INI file with [hamiltonian], [simulation] and [oracle] sections.
/// Throws ConfigError naming the offending key.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

struct RunResult {
  Interval interval;
  OracleConfig oracle;
  ExponentialPlan plan;
  std::optional<AdaptiveSchedule> schedule;
  std::optional<DiscontinuitySplit> split;
  CostReport cost;
  QueryLedger ledger;
  /// Formula bound on N_oracle for the chosen mode.
  double oracle_bound = 0.0;
  /// Declared Lambda (constant, piecewise) or integral of Upsilon (adaptive).
  double smoothness_dt = 0.0;
  bool executed = false;
  /// ||U_exact - U_plan|| with the configured element mode.
  double error = 0.0;
  /// ||U_plan(exact elements) - U_plan(discretized)||, discretized runs only.
  double roundoff = 0.0;
  /// ||U_exact - U_plan(exact elements)||, discretized runs only.
  double integrator_error = 0.0;
};

/// Build the plan and cost report without executing.
RunResult plan_run(const RunConfig& cfg, const catalog::Entry& entry);

/// Plan, execute on the full operator and compare with the reference.
/// Refuses dimensions above 64.
RunResult simulate_run(const RunConfig& cfg, const catalog::Entry& entry);

/// Checks of an executed run: error <= eps, measured N_oracle <= bound,
/// value bits per exponential = 3 n'', transforms <= N_exp / (3 d^2) + 1.
/// Returns one message per violated check.
std::vector<std::string> verify(const RunResult& result, double eps);

struct SweepRow {
  double a;
  std::uint64_t n_exp_adaptive;
  std::uint64_t n_exp_constant;
  std::int64_t r_adaptive;
  std::int64_t r_constant;
};

/// Adaptive (refined, exact Upsilon floor) vs constant-step exponential
/// counts for the Gaussian delta at each width. Rows in input order.
std::vector<SweepRow> sweep_gaussian(const std::vector<double>& widths, double eps, int k);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string optimize_csv(const KOptimization& opt);

/// Stable 17-significant-digit formatting used in every CSV.
std::string fmt_double(double v);

}  // namespace lts
