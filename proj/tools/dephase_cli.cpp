// Command-line front end. Talks to the library only through dephase.h.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dephase/dephase.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int exit_code_for(dph_status s) {
  if (s == DPH_OK) return kExitOk;
  if (s == DPH_ERR_NUMERICAL || s == DPH_ERR_SUPPORT_MISMATCH) return kExitNumerical;
  return kExitValidation;
}

int report_failure(dph_status s) {
  std::cerr << "error (" << dph_status_name(s) << "): " << dph_last_error_message() << "\n";
  return exit_code_for(s);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Collects command-line overrides as (config key, value) pairs.
struct Overrides {
  std::vector<std::pair<std::string, std::string>> items;

  void real(const std::string& key, const std::optional<double>& v) {
    if (v) items.emplace_back(key, format_double(*v));
  }
  void text(const std::string& key, const std::optional<std::string>& v) {
    if (v) items.emplace_back(key, *v);
  }
};

struct ConfigHandle {
  dph_config* cfg = nullptr;
  ~ConfigHandle() { dph_config_destroy(cfg); }
};

struct StateHandle {
  dph_state* s = nullptr;
  ~StateHandle() { dph_state_destroy(s); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { dph_string_free(s); }
};

dph_status prepare(ConfigHandle& h, const std::string& config_path, const Overrides& o) {
  dph_status st = dph_config_create(&h.cfg);
  if (st != DPH_OK) return st;
  if (!config_path.empty()) {
    st = dph_config_load_file(h.cfg, config_path.c_str());
    if (st != DPH_OK) return st;
  }
  for (const auto& [k, v] : o.items) {
    st = dph_config_set(h.cfg, k.c_str(), v.c_str());
    if (st != DPH_OK) return st;
  }
  return dph_config_validate(h.cfg);
}

// JSON goes to --out when given, stdout otherwise.
int emit(const char* json, const std::optional<std::string>& out) {
  if (!out || *out == "-") {
    std::cout << json << "\n";
    return kExitOk;
  }
  std::ofstream f(*out);
  if (!f || !(f << json << "\n")) {
    std::cerr << "error (i/o error): cannot write " << *out << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement and mixedness measures for two qubits under phase damping"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "Config file with [section] key = value entries")
      ->check(CLI::ExistingFile);

  // Channel and optimizer flags are shared by the subcommands that use them.
  std::optional<double> ntilde, mu1, mu2, omega1, omega2, t_max;
  std::optional<std::string> t_steps, out, seed, restarts, max_iters;
  std::optional<double> penalty, tol;
  const auto add_channel = [&](CLI::App* sub) {
    sub->add_option("--ntilde", ntilde, "Mean reservoir excitation");
    sub->add_option("--mu1", mu1, "Qubit 1 coupling (rad/s)");
    sub->add_option("--mu2", mu2, "Qubit 2 coupling (rad/s)");
    sub->add_option("--omega1", omega1, "Qubit 1 frequency (rad/s)");
    sub->add_option("--omega2", omega2, "Qubit 2 frequency (rad/s)");
  };
  const auto add_optimizer = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Restart seed");
    sub->add_option("--restarts", restarts, "Number of optimizer restarts");
    sub->add_option("--max-iters", max_iters, "Simplex iterations per restart");
    sub->add_option("--penalty-weight", penalty, "Weight on PPT violation");
    sub->add_option("--tol", tol, "Convergence threshold on the objective");
  };

  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate every measure on an (epsilon, t) grid and write CSV");
  std::optional<std::string> epsilon_list, x_axis;
  bool include_css = false;
  add_channel(sweep);
  add_optimizer(sweep);
  sweep->add_option("--epsilon-list", epsilon_list, "Comma-separated mixing weights");
  sweep->add_option("--t-max", t_max, "End of the time grid (default: one revival period)");
  sweep->add_option("--t-steps", t_steps, "Number of time points");
  sweep->add_option("--x-axis", x_axis, "linear_entropy, fidelity_pure or time")
      ->check(CLI::IsMember({"linear_entropy", "fidelity_pure", "time"}));
  sweep->add_flag("--include-css", include_css, "Append closest separable state columns");
  sweep->add_option("--out", out, "CSV path, '-' for stdout");

  CLI::App* oracle = app.add_subcommand("oracle-check", "Compare the closed form against the qubit+reservoir simulation");
  std::optional<double> oracle_eps, mu_cross, mu12;
  std::optional<std::string> modes;
  add_channel(oracle);
  oracle->add_option("--t-max", t_max, "End of the time grid (default: one revival period)");
  oracle->add_option("--t-steps", t_steps, "Number of time points");
  oracle->add_option("--epsilon", oracle_eps, "Mixing weight");
  oracle->add_option("--modes", modes, "Number of reservoir modes");
  oracle->add_option("--mu-cross", mu_cross, "Reservoir cross-Kerr coupling (rad/s)");
  oracle->add_option("--mu12", mu12, "Qubit-qubit coupling (rad/s)");
  oracle->add_option("--out", out, "Report path, '-' for stdout");

  CLI::App* css = app.add_subcommand("css", "Closest separable state under the Bures distance");
  std::optional<std::string> state_path;
  add_optimizer(css);
  css->add_option("state", state_path, "State JSON file (default: css.state from the config)");
  css->add_option("--out", out, "Report path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  Overrides o;
  const auto optimizer_overrides = [&] {
    o.text("optimizer.seed", seed);
    o.text("optimizer.restarts", restarts);
    o.text("optimizer.max_iters", max_iters);
    o.real("optimizer.penalty_weight", penalty);
    o.real("optimizer.tol", tol);
  };
  o.real("channel.mu1", mu1);
  o.real("channel.mu2", mu2);
  o.real("channel.omega1", omega1);
  o.real("channel.omega2", omega2);

  ConfigHandle cfg;

  if (sweep->parsed()) {
    o.real("channel.ntilde", ntilde);
    o.text("sweep.epsilon_list", epsilon_list);
    o.real("sweep.t_max", t_max);
    o.text("sweep.t_steps", t_steps);
    o.text("sweep.x_axis", x_axis);
    if (include_css) o.items.emplace_back("sweep.include_css", "true");
    o.text("sweep.out", out);
    optimizer_overrides();
    if (const dph_status st = prepare(cfg, config_path, o); st != DPH_OK) return report_failure(st);

    OwnedString summary;
    if (const dph_status st = dph_run_sweep(cfg.cfg, &summary.s); st != DPH_OK) return report_failure(st);
    // Keep stdout clean when the CSV itself goes there.
    std::ostream& sink = (out && *out == "-") ? std::cerr : std::cout;
    sink << summary.s << "\n";
    return kExitOk;
  }

  if (oracle->parsed()) {
    o.real("oracle.ntilde", ntilde);
    o.real("oracle.t_max", t_max);
    o.text("oracle.t_steps", t_steps);
    o.real("oracle.epsilon", oracle_eps);
    o.text("oracle.modes", modes);
    o.real("oracle.mu_cross", mu_cross);
    o.real("oracle.mu12", mu12);
    if (const dph_status st = prepare(cfg, config_path, o); st != DPH_OK) return report_failure(st);

    OwnedString report;
    int passed = 0;
    if (const dph_status st = dph_run_oracle_check(cfg.cfg, &report.s, &passed); st != DPH_OK) {
      return report_failure(st);
    }
    if (const int rc = emit(report.s, out); rc != kExitOk) return rc;
    if (!passed) {
      std::cerr << "oracle check failed: difference above threshold\n";
      return kExitNumerical;
    }
    return kExitOk;
  }

  // css
  o.text("css.state", state_path);
  optimizer_overrides();
  if (const dph_status st = prepare(cfg, config_path, o); st != DPH_OK) return report_failure(st);

  std::string path;
  {
    OwnedString value;
    if (const dph_status st = dph_config_get(cfg.cfg, "css.state", &value.s); st != DPH_OK) {
      return report_failure(st);
    }
    if (value.s) path = value.s;
  }
  if (path.empty()) {
    std::cerr << "error (invalid argument): no state file given\n";
    return kExitValidation;
  }

  StateHandle rho;
  if (const dph_status st = dph_state_load(path.c_str(), &rho.s); st != DPH_OK) return report_failure(st);
  OwnedString report;
  int feasible = 0;
  if (const dph_status st = dph_run_css(cfg.cfg, rho.s, &report.s, &feasible); st != DPH_OK) {
    return report_failure(st);
  }
  if (const int rc = emit(report.s, out); rc != kExitOk) return rc;
  if (!feasible) {
    std::cerr << "closest separable state search returned an infeasible point\n";
    return kExitNumerical;
  }
  return kExitOk;
}
