#pragma once

// Configuration and the three batch jobs behind the command-line tool:
// parameter sweeps to CSV, oracle equivalence checks, and closest
// separable state searches.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dephase/channel.hpp"
#include "dephase/measures.hpp"
#include "dephase/oracle.hpp"
#include "dephase/refsearch.hpp"
#include "dephase/states.hpp"

namespace dephase {

// Flat "section.key" -> value store. Files use TOML-style sections:
//
//   # comment
//   [channel]
//   ntilde = 6.0
//   [sweep]
//   epsilon_list = 0.5, 0.42, 0.37
//
// Later assignments win, so command-line values set after loading a file
// override it.
class ConfigStore {
 public:
  struct Entry {
    std::string value;
    std::string origin;  // "file.conf:12" or "command line"
  };

  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& source_name);
  void set(const std::string& key, const std::string& value, const std::string& origin = "command line");

  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry> entries_;
};

enum class XAxis { kLinearEntropy, kFidelityPure, kTime };

struct SweepConfig {
  std::vector<double> epsilon_list{0.5, 0.42, 0.37, 0.32, 0.26, 0.19, 0.12, 0.05};
  std::optional<double> t_max;  // defaults to one revival period
  std::size_t t_steps = 201;
  ChannelParams channel{1.0, 1.0, 0.5, 0.5, 6.0};
  XAxis x_axis = XAxis::kLinearEntropy;
  bool include_css = false;
  OptimizerConfig optimizer;
  std::string out_path = "sweep.csv";

  void validate() const;
  double resolved_t_max() const;
};

struct OracleCheckConfig {
  double epsilon = 0.5;
  std::size_t modes = 3;
  double ntilde = 1.0;           // split evenly unless alphas are given
  std::vector<double> alphas;    // real amplitudes; empty means even split
  std::vector<double> omega_ratios;  // empty means all 1 (resonant)
  double mu_cross = 0.0;
  double mu12 = 0.0;
  double cutoff_tail = 1e-10;
  std::size_t hard_cutoff = 64;
  std::optional<double> t_max;   // defaults to one revival period
  std::size_t t_steps = 50;

  ReservoirConfig reservoir() const;
};

struct AppConfig {
  SweepConfig sweep;
  OracleCheckConfig oracle;
  std::string css_state_path;
};

/// Typed view of a store. Unknown keys and malformed values throw
/// kInvalidConfig naming the key and where it was set.
AppConfig build_config(const ConfigStore& store);

// ---- sweep ----

const std::vector<std::string>& csv_columns(bool include_css);

/// Every measure for one (eps, t) point. e_mixed is the exact separable
/// minimum of the family; e_maxmixed is measured against I/4 through the
/// general fidelity; er_exact is +inf on a support mismatch.
MeasureRecord compute_record(double epsilon, const ChannelParams& channel, double t);

struct SweepRow {
  MeasureRecord record;
  std::optional<CssResult> css;
};

struct SweepSummary {
  std::size_t rows = 0;
  double max_delta12 = 0.0;
  double max_delta12_epsilon = 0.0;
  double max_delta12_gamma = 0.0;
  double max_identity_residual = 0.0;  // |fidelity_pure + er_lin - 1|
  Section5Residuals worst_section5_half;  // over eps = 1/2 rows only
  Section5Residuals worst_section5_general;
  OrderingReport ordering;
};

/// Evaluate the (eps, t) grid concurrently; rows come back sorted by (eps, t).
std::vector<SweepRow> sweep_rows(const SweepConfig& cfg);
SweepSummary summarize(const SweepConfig& cfg, const std::vector<SweepRow>& rows);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool include_css);
/// Rows to cfg.out_path ("-" for stdout) and the summary back.
SweepSummary run_sweep(const SweepConfig& cfg);
nlohmann::json summary_to_json(const SweepSummary& s);

// ---- oracle check ----

struct OracleReport {
  bool equivalence_mode = false;  // resonant, no cross-Kerr, no qubit-qubit term
  double threshold = 0.0;
  std::vector<double> t_grid;
  std::vector<double> max_abs_diff;
  std::vector<double> abs_corner_diff;
  std::vector<double> phase_offset;
  double worst = 0.0;  // of the compared quantity
  bool passed = false;
};

/// Equivalence mode compares every matrix entry; otherwise only the
/// diagonal and |corner| are compared and the phase offset is reported.
OracleReport run_oracle_check(const OracleCheckConfig& cfg, const ChannelParams& channel);
nlohmann::json oracle_report_to_json(const OracleReport& r, const OracleCheckConfig& cfg,
                                     const ChannelParams& channel);

// ---- closest separable state ----

nlohmann::json css_report_to_json(const CssResult& r, const TwoQubitState& input);
bool css_feasible(const CssResult& r);

}  // namespace dephase
