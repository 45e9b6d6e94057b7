#include "dephase/app.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "dephase/error.hpp"
#include "dephase/state_io.hpp"

namespace dephase {

// ---------------------------------------------------------------- config ---

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') || (v.front() == '\'' && v.back() == '\''))) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); }

double parse_double(const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw std::invalid_argument("expected a finite number, got '" + v + "'");
  }
  return out;
}

std::uint64_t parse_unsigned(const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("expected true or false, got '" + v + "'");
}

std::vector<double> parse_list(std::string v) {
  v = trim(v);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw std::invalid_argument("unterminated list");
    v = v.substr(1, v.size() - 2);
  }
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty list element");
    out.push_back(parse_double(item));
  }
  return out;
}

XAxis parse_axis(const std::string& v) {
  if (v == "linear_entropy") return XAxis::kLinearEntropy;
  if (v == "fidelity_pure") return XAxis::kFidelityPure;
  if (v == "time") return XAxis::kTime;
  throw std::invalid_argument("expected linear_entropy, fidelity_pure or time, got '" + v + "'");
}

}  // namespace

void ConfigStore::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  load_text(buf.str(), path);
}

void ConfigStore::load_text(const std::string& text, const std::string& source_name) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const std::string where = source_name + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_error(where + ": unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) config_error(where + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error(where + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = unquote(trim(std::string_view(line).substr(eq + 1)));
    if (key.empty()) config_error(where + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (full.find('.') == std::string::npos) config_error(where + ": key '" + key + "' is outside any section");
    set(full, value, where);
  }
}

void ConfigStore::set(const std::string& key, const std::string& value, const std::string& origin) {
  entries_[key] = {value, origin};
}

void SweepConfig::validate() const {
  if (epsilon_list.empty()) config_error("sweep.epsilon_list must not be empty");
  for (double e : epsilon_list)
    if (!(e >= 0.0 && e <= 1.0)) config_error("sweep.epsilon_list entries must lie in [0, 1]");
  if (t_steps < 2) config_error("sweep.t_steps must be >= 2");
  if (t_max && !(*t_max > 0.0)) config_error("sweep.t_max must be > 0");
  try {
    channel.validate();
    optimizer.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  if (out_path.empty()) config_error("sweep.out must not be empty");
}

double SweepConfig::resolved_t_max() const { return t_max ? *t_max : channel.revival_period(); }

ReservoirConfig OracleCheckConfig::reservoir() const {
  ReservoirConfig r;
  if (alphas.empty()) {
    if (modes == 0) config_error("oracle.modes must be >= 1");
    r = ReservoirConfig::resonant(modes, ntilde);
  } else {
    if (modes != alphas.size()) config_error("oracle.alphas must have oracle.modes entries");
    for (double a : alphas) r.alphas.emplace_back(a, 0.0);
    r.omega_ratios.assign(alphas.size(), 1.0);
  }
  if (!omega_ratios.empty()) {
    if (omega_ratios.size() != r.modes()) config_error("oracle.omega_ratios must have oracle.modes entries");
    r.omega_ratios = omega_ratios;
  }
  r.mu_cross = mu_cross;
  r.mu12 = mu12;
  r.cutoff_tail = cutoff_tail;
  r.hard_cutoff = hard_cutoff;
  return r;
}

AppConfig build_config(const ConfigStore& store) {
  AppConfig cfg;
  SweepConfig& s = cfg.sweep;
  OracleCheckConfig& o = cfg.oracle;
  OptimizerConfig& opt = s.optimizer;
  ChannelParams& ch = s.channel;

  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"sweep.epsilon_list", [&](const std::string& v) { s.epsilon_list = parse_list(v); }},
      {"sweep.t_max", [&](const std::string& v) { s.t_max = parse_double(v); }},
      {"sweep.t_steps", [&](const std::string& v) { s.t_steps = parse_unsigned(v); }},
      {"sweep.x_axis", [&](const std::string& v) { s.x_axis = parse_axis(v); }},
      {"sweep.include_css", [&](const std::string& v) { s.include_css = parse_bool(v); }},
      {"sweep.out", [&](const std::string& v) { s.out_path = v; }},
      {"channel.omega1", [&](const std::string& v) { ch.omega1 = parse_double(v); }},
      {"channel.omega2", [&](const std::string& v) { ch.omega2 = parse_double(v); }},
      {"channel.mu1", [&](const std::string& v) { ch.mu1 = parse_double(v); }},
      {"channel.mu2", [&](const std::string& v) { ch.mu2 = parse_double(v); }},
      {"channel.ntilde", [&](const std::string& v) { ch.ntilde = parse_double(v); }},
      {"optimizer.max_iters", [&](const std::string& v) { opt.max_iters = parse_unsigned(v); }},
      {"optimizer.restarts", [&](const std::string& v) { opt.restarts = parse_unsigned(v); }},
      {"optimizer.penalty_weight", [&](const std::string& v) { opt.penalty_weight = parse_double(v); }},
      {"optimizer.tol", [&](const std::string& v) { opt.tol = parse_double(v); }},
      {"optimizer.seed", [&](const std::string& v) { opt.seed = parse_unsigned(v); }},
      {"oracle.epsilon", [&](const std::string& v) { o.epsilon = parse_double(v); }},
      {"oracle.modes", [&](const std::string& v) { o.modes = parse_unsigned(v); }},
      {"oracle.ntilde", [&](const std::string& v) { o.ntilde = parse_double(v); }},
      {"oracle.alphas", [&](const std::string& v) { o.alphas = parse_list(v); }},
      {"oracle.omega_ratios", [&](const std::string& v) { o.omega_ratios = parse_list(v); }},
      {"oracle.mu_cross", [&](const std::string& v) { o.mu_cross = parse_double(v); }},
      {"oracle.mu12", [&](const std::string& v) { o.mu12 = parse_double(v); }},
      {"oracle.cutoff_tail", [&](const std::string& v) { o.cutoff_tail = parse_double(v); }},
      {"oracle.hard_cutoff", [&](const std::string& v) { o.hard_cutoff = parse_unsigned(v); }},
      {"oracle.t_max", [&](const std::string& v) { o.t_max = parse_double(v); }},
      {"oracle.t_steps", [&](const std::string& v) { o.t_steps = parse_unsigned(v); }},
      {"css.state", [&](const std::string& v) { cfg.css_state_path = v; }},
  };

  for (const auto& [key, entry] : store.entries()) {
    const auto it = setters.find(key);
    if (it == setters.end()) config_error(entry.origin + ": unknown key '" + key + "'");
    try {
      it->second(entry.value);
    } catch (const std::invalid_argument& e) {
      config_error(entry.origin + ": " + key + ": " + e.what());
    }
  }
  if (!(o.epsilon >= 0.0 && o.epsilon <= 1.0)) config_error("oracle.epsilon must lie in [0, 1]");
  if (o.t_steps < 1) config_error("oracle.t_steps must be >= 1");
  if (!(o.ntilde >= 0.0)) config_error("oracle.ntilde must be >= 0");
  return cfg;
}

// ----------------------------------------------------------------- sweep ---

const std::vector<std::string>& csv_columns(bool include_css) {
  static const std::vector<std::string> base = {
      "epsilon", "t",       "gamma",   "abs_a",      "delta12",       "negativity", "concurrence_wootters",
      "concurrence_paper", "eof", "fidelity_pure", "e_pure", "e_mixed", "e_maxmixed", "er_exact_nats",
      "er_lin"};
  static const std::vector<std::string> with_css = [] {
    auto v = base;
    v.emplace_back("css_e_value");
    v.emplace_back("css_pt_min_eig");
    return v;
  }();
  return include_css ? with_css : base;
}

MeasureRecord compute_record(double epsilon, const ChannelParams& channel, double t) {
  const DecoherenceFactor f = decoherence_factor(channel, t);
  const TwoQubitState rho = evolve(epsilon, channel, t);
  const TwoQubitState reference = pure_reference({epsilon, f.phase});

  MeasureRecord r;
  r.epsilon = epsilon;
  r.t = t;
  r.gamma = f.gamma;
  r.abs_a = f.abs_a;
  r.delta12 = linear_entropy(rho);
  r.negativity = negativity(rho);
  r.concurrence_wootters = concurrence_wootters(rho);
  r.concurrence_paper = concurrence_paper_closed(epsilon, f.abs_a);
  r.eof = eof(std::min(1.0, r.concurrence_wootters));
  r.fidelity_pure = uhlmann_fidelity(rho, reference);
  r.e_pure = e_pure_closed(epsilon, f.abs_a);
  r.e_mixed = e_separable_family(epsilon, f.abs_a);
  r.e_maxmixed = 1.0 - std::sqrt(uhlmann_fidelity(rho, maximally_mixed()));
  try {
    r.er_exact = relative_entropy_exact(reference, rho);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSupportMismatch) throw;
    r.er_exact = std::numeric_limits<double>::infinity();
  }
  r.er_lin = relative_entropy_linearized(rho, reference);
  return r;
}

std::vector<SweepRow> sweep_rows(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<double> eps = cfg.epsilon_list;
  std::stable_sort(eps.begin(), eps.end());
  const double t_max = cfg.resolved_t_max();
  const std::size_t steps = cfg.t_steps;
  const std::size_t total = eps.size() * steps;

  std::vector<std::optional<SweepRow>> slots(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        const double e = eps[i / steps];
        const double t = t_max * static_cast<double>(i % steps) / static_cast<double>(steps - 1);
        SweepRow row{compute_record(e, cfg.channel, t), std::nullopt};
        if (cfg.include_css) row.css = closest_separable_bures(evolve(e, cfg.channel, t), cfg.optimizer);
        slots[i] = std::move(row);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    const std::size_t n_threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepRow> rows;
  rows.reserve(total);
  for (auto& s : slots) rows.push_back(std::move(*s));
  return rows;
}

namespace {

void keep_worst(Section5Residuals& acc, const Section5Residuals& r) {
  const auto worst = [](double& a, double b) { a = std::max(a, std::abs(b)); };
  worst(acc.purity_half, r.purity_half);
  worst(acc.triangle_half, r.triangle_half);
  worst(acc.purity_general, r.purity_general);
  worst(acc.concurrence_general, r.concurrence_general);
  worst(acc.purity_general_corrected, r.purity_general_corrected);
  worst(acc.concurrence_general_corrected, r.concurrence_general_corrected);
}

}  // namespace

SweepSummary summarize(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  SweepSummary s;
  s.rows = rows.size();
  std::vector<MeasureRecord> records;
  records.reserve(rows.size());
  for (const SweepRow& row : rows) {
    const MeasureRecord& r = row.record;
    records.push_back(r);
    if (r.delta12 > s.max_delta12 || s.rows == 0) {
      s.max_delta12 = r.delta12;
      s.max_delta12_epsilon = r.epsilon;
      s.max_delta12_gamma = r.gamma;
    }
    s.max_identity_residual = std::max(s.max_identity_residual, std::abs(r.fidelity_pure + r.er_lin - 1.0));
    const Section5Residuals res = section5_relations(r);
    if (r.epsilon == 0.5) keep_worst(s.worst_section5_half, res);
    keep_worst(s.worst_section5_general, res);
  }
  const OrderingAxis axis = cfg.x_axis == XAxis::kFidelityPure ? OrderingAxis::kFidelityPure
                                                               : OrderingAxis::kLinearEntropy;
  s.ordering = ordering_check(records, axis);
  return s;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool include_css) {
  const auto& cols = csv_columns(include_css);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const SweepRow& row : rows) {
    const MeasureRecord& r = row.record;
    const std::vector<std::string> bad = r.violations();
    if (!bad.empty()) {
      throw Error(ErrorCode::kNumericalFailure, "record at epsilon=" + fmt(r.epsilon) + " t=" + fmt(r.t) +
                                                    " violates invariants: " + bad.front());
    }
    out << fmt(r.epsilon) << ',' << fmt(r.t) << ',' << fmt(r.gamma) << ',' << fmt(r.abs_a) << ','
        << fmt(r.delta12) << ',' << fmt(r.negativity) << ',' << fmt(r.concurrence_wootters) << ','
        << fmt(r.concurrence_paper) << ',' << fmt(r.eof) << ',' << fmt(r.fidelity_pure) << ',' << fmt(r.e_pure)
        << ',' << fmt(r.e_mixed) << ',' << fmt(r.e_maxmixed) << ',' << fmt(r.er_exact) << ','
        << fmt(r.er_lin);
    if (include_css) {
      if (!row.css) throw Error(ErrorCode::kInvalidArgument, "CSS columns requested but not computed");
      out << ',' << fmt(row.css->e_value) << ',' << fmt(row.css->pt_min_eig);
    }
    out << '\n';
  }
}

SweepSummary run_sweep(const SweepConfig& cfg) {
  const std::vector<SweepRow> rows = sweep_rows(cfg);
  std::ostringstream csv;
  write_csv(csv, rows, cfg.include_css);
  if (cfg.out_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + cfg.out_path);
    out << csv.str();
    if (!out) throw Error(ErrorCode::kIoError, "write failed for " + cfg.out_path);
  }
  return summarize(cfg, rows);
}

namespace {

nlohmann::json residuals_json(const Section5Residuals& r) {
  return {{"purity_half", r.purity_half},
          {"triangle_half", r.triangle_half},
          {"purity_general", r.purity_general},
          {"concurrence_general", r.concurrence_general},
          {"purity_general_corrected", r.purity_general_corrected},
          {"concurrence_general_corrected", r.concurrence_general_corrected}};
}

nlohmann::json witness_json(const CrossWitness& w) {
  if (!w.found) return nullptr;
  return {{"epsilon_e_mixed", w.epsilon_a}, {"epsilon_negativity", w.epsilon_b}, {"abscissa", w.abscissa},
          {"e_mixed", w.e_mixed}, {"negativity", w.negativity}};
}

}  // namespace

nlohmann::json summary_to_json(const SweepSummary& s) {
  nlohmann::json per_eps = nlohmann::json::array();
  for (std::size_t i = 0; i < s.ordering.epsilons.size(); ++i) {
    per_eps.push_back({{"epsilon", s.ordering.epsilons[i]}, {"violations", s.ordering.violations_per_epsilon[i]}});
  }
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : s.ordering.violations) {
    violations.push_back({{"epsilon", v.epsilon}, {"gamma", v.gamma}, {"relation", v.relation}, {"amount", v.amount}});
  }
  return {{"rows", s.rows},
          {"max_delta12", {{"value", s.max_delta12}, {"epsilon", s.max_delta12_epsilon}, {"gamma", s.max_delta12_gamma}}},
          {"max_fidelity_plus_er_lin_residual", s.max_identity_residual},
          {"section5_half_max_abs", residuals_json(s.worst_section5_half)},
          {"section5_all_max_abs", residuals_json(s.worst_section5_general)},
          {"ordering",
           {{"per_epsilon", per_eps},
            {"violations", violations},
            {"cross_epsilon",
             {{"e_mixed_above_negativity", witness_json(s.ordering.e_mixed_above)},
              {"e_mixed_below_negativity", witness_json(s.ordering.e_mixed_below)},
              {"no_global_order", s.ordering.no_global_order()}}}}}};
}

// ---------------------------------------------------------------- oracle ---

OracleReport run_oracle_check(const OracleCheckConfig& cfg, const ChannelParams& channel) {
  const ReservoirConfig reservoir = cfg.reservoir();
  reservoir.validate();
  OracleReport rep;
  rep.equivalence_mode = reservoir.is_resonant() && reservoir.mu_cross == 0.0 && reservoir.mu12 == 0.0;
  rep.threshold = 1e-8 + 10.0 * reservoir.cutoff_tail;

  const double t_max = cfg.t_max ? *cfg.t_max : channel.revival_period();
  const JointAmplitudes initial = build_joint(cfg.epsilon, reservoir);
  for (std::size_t k = 0; k < cfg.t_steps; ++k) {
    const double t = cfg.t_steps == 1 ? 0.0 : t_max * static_cast<double>(k) / static_cast<double>(cfg.t_steps - 1);
    const JointAmplitudes evolved = evolve_joint(initial, reservoir, channel, t);
    const OracleComparison cmp = reduce_and_compare(evolved, cfg.epsilon, reservoir, channel, t);
    rep.t_grid.push_back(t);
    rep.max_abs_diff.push_back(cmp.max_abs_diff);
    rep.abs_corner_diff.push_back(cmp.abs_corner_diff);
    rep.phase_offset.push_back(cmp.phase_offset);
    const double compared = rep.equivalence_mode ? cmp.max_abs_diff : std::max(cmp.diagonal_diff, cmp.abs_corner_diff);
    rep.worst = std::max(rep.worst, compared);
  }
  rep.passed = rep.worst <= rep.threshold;
  return rep;
}

nlohmann::json oracle_report_to_json(const OracleReport& r, const OracleCheckConfig& cfg, const ChannelParams& channel) {
  const ReservoirConfig reservoir = cfg.reservoir();
  nlohmann::json alphas = nlohmann::json::array();
  for (const Complex& a : reservoir.alphas) alphas.push_back({a.real(), a.imag()});
  return {{"config",
           {{"epsilon", cfg.epsilon},
            {"modes", reservoir.modes()},
            {"alphas", alphas},
            {"ntilde", reservoir.ntilde()},
            {"omega_ratios", reservoir.omega_ratios},
            {"mu_cross", reservoir.mu_cross},
            {"mu12", reservoir.mu12},
            {"cutoff_tail", reservoir.cutoff_tail},
            {"omega1", channel.omega1},
            {"omega2", channel.omega2},
            {"mu1", channel.mu1},
            {"mu2", channel.mu2}}},
          {"mode", r.equivalence_mode ? "equivalence" : "exploratory"},
          {"threshold", r.threshold},
          {"t_grid", r.t_grid},
          {"max_abs_diff", r.max_abs_diff},
          {"abs_corner_diff", r.abs_corner_diff},
          {"phase_offset", r.phase_offset},
          {"worst", r.worst},
          {"pass", r.passed}};
}

// ------------------------------------------------------------------- css ---

bool css_feasible(const CssResult& r) { return r.pt_min_eig >= -kPptFeasibilityTol; }

nlohmann::json css_report_to_json(const CssResult& r, const TwoQubitState& input) {
  return {{"input_negativity", negativity(input)},
          {"sigma_star", state_to_json(r.sigma_star)},
          {"e_value", r.e_value},
          {"bures_distance", std::sqrt(2.0 * r.e_value)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"best_restart", r.best_restart},
          {"pt_min_eig", r.pt_min_eig},
          {"feasible", css_feasible(r)}};
}

}  // namespace dephase
