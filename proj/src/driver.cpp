#include "lts/driver.hpp"

#include "lts/reference.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fmt/format.h>

#include <cmath>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

namespace lts {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"hamiltonian", {"catalog", "params", "seed"}},
    {"simulation", {"mode", "k", "epsilon", "t0", "dt", "seed", "elements"}},
    {"oracle", {"time_bits_override", "value_qubits_override"}},
};

template <class T>
T read_value(const pt::ptree& tree, const std::string& key) {
  const std::string raw = boost::algorithm::trim_copy(tree.get<std::string>(key));
  std::istringstream in(raw);
  T v{};
  in >> v;
  if (in.fail() || !in.eof()) throw ConfigError(key, fmt::format("{}: cannot parse '{}'", key, raw));
  return v;
}

template <class T>
std::optional<T> read_optional(const pt::ptree& tree, const std::string& key) {
  if (!tree.get_optional<std::string>(key)) return std::nullopt;
  return read_value<T>(tree, key);
}

catalog::Params parse_params(const std::string& text) {
  catalog::Params out;
  std::vector<std::string> items;
  boost::algorithm::split(items, text, boost::is_any_of(","));
  for (auto item : items) {
    boost::algorithm::trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("hamiltonian.params", fmt::format("hamiltonian.params: '{}' is not name:value", item));
    }
    const std::string name = boost::algorithm::trim_copy(item.substr(0, colon));
    const std::string value = boost::algorithm::trim_copy(item.substr(colon + 1));
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      out[name] = v;
    } catch (const std::exception&) {
      throw ConfigError("hamiltonian.params", fmt::format("hamiltonian.params: bad value '{}'", value));
    }
  }
  return out;
}

RunConfig from_tree(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto known = kKnownKeys.find(section);
    if (known == kKnownKeys.end()) throw ConfigError(section, fmt::format("unknown section [{}]", section));
    for (const auto& [key, value] : body) {
      if (!known->second.count(key)) {
        throw ConfigError(section + "." + key, fmt::format("unknown key {}.{}", section, key));
      }
    }
  }

  RunConfig cfg;
  const auto catalog = tree.get_optional<std::string>("hamiltonian.catalog");
  if (!catalog) throw ConfigError("hamiltonian.catalog", "missing key hamiltonian.catalog");
  cfg.catalog = boost::algorithm::trim_copy(*catalog);
  if (auto p = tree.get_optional<std::string>("hamiltonian.params")) cfg.params = parse_params(*p);

  if (!tree.get_optional<std::string>("simulation.epsilon")) {
    throw ConfigError("simulation.epsilon", "missing key simulation.epsilon");
  }
  cfg.epsilon = read_value<double>(tree, "simulation.epsilon");
  if (!(cfg.epsilon > 0.0) || cfg.epsilon > 1.0) {
    throw ConfigError("simulation.epsilon", "simulation.epsilon must be in (0, 1]");
  }
  if (auto m = tree.get_optional<std::string>("simulation.mode")) {
    try {
      cfg.mode = parse_mode(boost::algorithm::trim_copy(*m));
    } catch (const InvalidInput& e) {
      throw ConfigError("simulation.mode", fmt::format("simulation.mode: {}", e.what()));
    }
  }
  if (auto k = read_optional<int>(tree, "simulation.k")) {
    if (*k < 1 || *k > 6) throw ConfigError("simulation.k", "simulation.k must be in 1..6");
    cfg.k = *k;
  }
  cfg.t0 = read_optional<double>(tree, "simulation.t0");
  cfg.dt = read_optional<double>(tree, "simulation.dt");
  if (cfg.dt && !(*cfg.dt > 0.0)) throw ConfigError("simulation.dt", "simulation.dt must be positive");
  for (const char* key : {"simulation.seed", "hamiltonian.seed"}) {
    if (auto s = read_optional<std::uint64_t>(tree, key)) cfg.seed = *s;
  }
  if (auto e = tree.get_optional<std::string>("simulation.elements")) {
    const std::string v = boost::algorithm::trim_copy(*e);
    if (v == "exact") {
      cfg.elements = ElementMode::Exact;
    } else if (v == "discretized") {
      cfg.elements = ElementMode::Discretized;
    } else {
      throw ConfigError("simulation.elements", "simulation.elements must be exact or discretized");
    }
  }
  cfg.time_bits_override = read_optional<int>(tree, "oracle.time_bits_override");
  cfg.value_qubits_override = read_optional<int>(tree, "oracle.value_qubits_override");
  if (cfg.time_bits_override && (*cfg.time_bits_override < 1 || *cfg.time_bits_override > 52)) {
    throw ConfigError("oracle.time_bits_override", "oracle.time_bits_override must be in 1..52");
  }
  if (cfg.value_qubits_override &&
      (*cfg.value_qubits_override < 2 || *cfg.value_qubits_override > 104 || *cfg.value_qubits_override % 2)) {
    throw ConfigError("oracle.value_qubits_override", "oracle.value_qubits_override must be even, 2..104");
  }
  return cfg;
}

Interval run_interval(const RunConfig& cfg, const Hamiltonian& h) {
  Interval iv = h.interval;
  if (cfg.t0) iv.begin = *cfg.t0;
  if (cfg.dt) iv.end = iv.begin + *cfg.dt;
  if (!(iv.length() > 0.0)) throw ConfigError("simulation.dt", "simulation interval is empty");
  const double slack = 1e-12 * h.interval.length();
  if (!h.interval.contains(iv.begin, slack)) {
    throw ConfigError("simulation.t0", fmt::format("simulation.t0 lies outside [{}, {}]", h.interval.begin, h.interval.end));
  }
  if (!h.interval.contains(iv.end, slack)) {
    throw ConfigError("simulation.dt", fmt::format("simulation.dt runs past {}", h.interval.end));
  }
  return iv;
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "constant") return Mode::Constant;
  if (s == "adaptive") return Mode::Adaptive;
  if (s == "piecewise") return Mode::Piecewise;
  throw InvalidInput(fmt::format("unknown mode '{}' (constant|adaptive|piecewise)", s));
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Constant: return "constant";
    case Mode::Adaptive: return "adaptive";
    case Mode::Piecewise: return "piecewise";
  }
  return "?";
}

RunConfig parse_config_text(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", fmt::format("malformed config: {}", e.message()));
  }
  return from_tree(tree);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", fmt::format("cannot open config '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

RunResult plan_run(const RunConfig& cfg, const catalog::Entry& entry) {
  const Hamiltonian& h = entry.hamiltonian;
  const int k = cfg.k;
  const double eps = cfg.epsilon;
  const Interval iv = run_interval(cfg, h);
  const double dt = iv.length();
  const int M = static_cast<int>(h.terms.size());
  const int d = h.max_sparsity();
  const Decomposition decomposition = decompose(h);
  const ClassOrder order = ClassOrder::from(h, decomposition);
  const int qubits = qubit_count(h.dim());

  RunResult out;
  out.interval = iv;

  // Round-off gets eps/2 in every mode.
  const PrecisionRequirements prec = precision_requirements(k, M, d, dt, eps, entry.max_dH, entry.h_max);
  out.oracle.time_bits = cfg.time_bits_override.value_or(prec.time_bits);
  out.oracle.value_qubits = cfg.value_qubits_override.value_or(prec.value_qubits);
  out.oracle.h_max = entry.h_max;
  out.oracle.t0 = iv.begin;
  out.oracle.total_span = dt;
  out.oracle.validate();
  const std::uint64_t C = one_sparse_query_cost(qubits, out.oracle.value_qubits);

  CostReport& cost = out.cost;
  cost.k = k;
  cost.M = M;
  cost.d = d;
  cost.m_paper = 6ll * M * d * d;
  cost.m_actual = decomposition.class_count();
  cost.time_bits = out.oracle.time_bits;
  cost.value_qubits = out.oracle.value_qubits;
  cost.C = C;
  cost.space = space_estimate(qubits);

  double K = 0.0;
  switch (cfg.mode) {
    case Mode::Constant: {
      const double lambda = entry.lambda(k);
      const double eps_c = clamp_epsilon(k, d, lambda, dt, eps);
      const std::int64_t r = constant_step_count(k, 6.0 * d * d * lambda, dt, eps_c / 2.0);
      std::vector<double> bounds(r + 1);
      for (std::int64_t i = 0; i <= r; ++i) bounds[i] = iv.begin + dt * static_cast<double>(i) / r;
      bounds.back() = iv.end;
      out.plan = build_plan(bounds, k, order);
      out.smoothness_dt = lambda * dt;
      out.oracle_bound = constant_step_oracle_bound(k, M, d, lambda, dt, eps, static_cast<double>(C));
      cost.r = r;
      cost.r_g = r;
      break;
    }
    case Mode::Adaptive: {
      const SmoothnessProfile profile = entry.profile(k);
      AdaptiveSchedule s = build_schedule(profile, iv, k, d, eps);
      out.plan = build_plan(s.times, k, order);
      out.smoothness_dt = integrate_upsilon(profile, iv);
      K = profile.growth_constant;
      out.oracle_bound = adaptive_oracle_bound(k, M, d, out.smoothness_dt, eps, K, static_cast<double>(C));
      cost.r = s.r();
      cost.r_g = s.r_g;
      out.schedule = std::move(s);
      break;
    }
    case Mode::Piecewise: {
      std::vector<double> jumps;
      for (double j : h.discontinuities) {
        if (j > iv.begin && j < iv.end) jumps.push_back(j);
      }
      const int L = static_cast<int>(jumps.size());
      const double lambda = entry.lambda(k);
      DiscontinuitySplit split = split_discontinuities(iv, jumps, entry.H_max, eps, L, out.oracle);
      out.plan.k = k;
      std::int64_t r_total = 0;
      for (std::size_t p = 0; p < split.pieces.size(); ++p) {
        const Interval piece = split.pieces[p];
        const double len = piece.length();
        const double eps_p = clamp_epsilon(k, d, lambda, len, split.budgets[p]);
        const std::int64_t r = constant_step_count(k, 6.0 * d * d * lambda, len, eps_p);
        for (std::int64_t i = 0; i < r; ++i) {
          const double a = piece.begin + len * static_cast<double>(i) / r;
          const double b = i + 1 == r ? piece.end : piece.begin + len * static_cast<double>(i + 1) / r;
          append_segment(out.plan, {a, b, k}, order);
        }
        r_total += r;
      }
      out.smoothness_dt = lambda * dt;
      out.oracle_bound = piecewise_oracle_bound(k, M, d, lambda, dt, eps, static_cast<double>(C), L);
      cost.r = r_total;
      cost.r_g = r_total;
      out.split = std::move(split);
      break;
    }
  }

  // Formula counts with m_paper; the oracle bound is C times the exponential bound.
  cost.N_exp_formula = out.oracle_bound / static_cast<double>(C);
  cost.N_oracle_formula = out.oracle_bound;
  cost.N_T_formula = cost.N_exp_formula / (3.0 * d * d);
  cost.k_star = near_linear_k(d, out.smoothness_dt, eps);

  out.ledger = tally_plan(out.plan, qubits, out.oracle.value_qubits);
  cost.N_exp_actual = out.ledger.exponentials;
  cost.N_oracle_measured = out.ledger.oracle_total();
  cost.N_T_measured = out.ledger.transform_calls;
  return out;
}

RunResult simulate_run(const RunConfig& cfg, const catalog::Entry& entry) {
  const Hamiltonian& h = entry.hamiltonian;
  if (h.dim() > 64) {
    throw DomainError(fmt::format("dimension {} exceeds 64; use plan for cost-only runs", h.dim()));
  }
  RunResult out = plan_run(cfg, entry);
  const Decomposition decomposition = decompose(h);
  const CMatrix exact = exact_propagator(h, out.interval.begin, out.interval.end);

  auto execute = [&](ElementMode mode, QueryLedger& ledger) {
    CMatrix u = CMatrix::Identity(h.dim(), h.dim());
    execute_plan(out.plan, h, decomposition, u, {mode, out.oracle}, ledger);
    return u;
  };

  QueryLedger measured;
  const CMatrix u = execute(cfg.elements, measured);
  out.error = operator_error(exact, u);
  if (cfg.elements == ElementMode::Discretized) {
    QueryLedger scratch;
    const CMatrix u_exact = execute(ElementMode::Exact, scratch);
    out.integrator_error = operator_error(exact, u_exact);
    out.roundoff = operator_error(u_exact, u);
  } else {
    out.integrator_error = out.error;
  }
  out.ledger = measured;
  out.cost.N_exp_actual = measured.exponentials;
  out.cost.N_oracle_measured = measured.oracle_total();
  out.cost.N_T_measured = measured.transform_calls;
  out.executed = true;
  return out;
}

std::vector<std::string> verify(const RunResult& result, double eps) {
  std::vector<std::string> bad;
  const CostReport& c = result.cost;
  if (result.executed && !(result.error <= eps)) {
    bad.push_back(fmt::format("operator error {:.3e} exceeds epsilon {:.3e}", result.error, eps));
  }
  if (!(static_cast<double>(c.N_oracle_measured) <= result.oracle_bound)) {
    bad.push_back(fmt::format("measured N_oracle {} exceeds the bound {:.6g}", c.N_oracle_measured, result.oracle_bound));
  }
  const std::uint64_t expected_value_bits =
      3ull * static_cast<std::uint64_t>(result.oracle.value_qubits) * result.ledger.exponentials;
  if (result.ledger.value_bit_queries != expected_value_bits) {
    bad.push_back(fmt::format("value-bit charge {} differs from 3n''N_exp = {}", result.ledger.value_bit_queries,
                              expected_value_bits));
  }
  const double t_cap = static_cast<double>(c.N_exp_actual) / (3.0 * c.d * c.d) + 1.0;
  if (!(static_cast<double>(c.N_T_measured) <= t_cap)) {
    bad.push_back(fmt::format("transform calls {} exceed N_exp/(3d^2) + 1 = {:.6g}", c.N_T_measured, t_cap));
  }
  return bad;
}

std::vector<SweepRow> sweep_gaussian(const std::vector<double>& widths, double eps, int k) {
  for (double a : widths) {
    if (!(a > 0.0)) throw DomainError("Gaussian widths must be positive");
  }
  std::vector<SweepRow> rows(widths.size());
  std::vector<std::exception_ptr> errors(widths.size());
  const Interval iv{0.0, 2.0};
  const int n = static_cast<int>(widths.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      const double a = widths[i];
      const catalog::Entry entry = catalog::gaussian_delta(a);
      const int d = entry.hamiltonian.max_sparsity();
      const int m = decompose(entry.hamiltonian).class_count();
      const double lambda = entry.lambda(k);
      const double eps_c = clamp_epsilon(k, d, lambda, iv.length(), eps);
      const std::int64_t r_c = constant_step_count(k, 6.0 * d * d * lambda, iv.length(), eps_c / 2.0);
      const AdaptiveSchedule s = refine_r_iteratively(catalog::gaussian_exact_profile(a, k), iv, k, d, eps);
      rows[i] = {a, schedule_exponentials(s.r(), k, m), schedule_exponentials(r_c, k, m), s.r(), r_c};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "a,N_exp_adaptive,N_exp_constant,r_adaptive,r_constant\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", fmt_double(r.a), r.n_exp_adaptive, r.n_exp_constant, r.r_adaptive,
                       r.r_constant);
  }
  return out;
}

std::string optimize_csv(const KOptimization& opt) {
  std::string out = "kind,t_split,N_exp\n";
  for (std::size_t i = 0; i < opt.scan_t.size(); ++i) {
    out += fmt::format("scan,{},{}\n", fmt_double(opt.scan_t[i]), opt.scan_n_exp[i]);
  }
  out += fmt::format("{},{},{}\n", opt.interior ? "optimum" : "optimum_endpoint", fmt_double(opt.t_split), opt.n_exp);
  out += fmt::format("single_k1,,{}\n", opt.single_k1);
  out += fmt::format("single_k2,,{}\n", opt.single_k2);
  return out;
}

}  // namespace lts
