#include "dephase/dephase.h"

#include <cstring>
#include <new>
#include <string>

#include "dephase/app.hpp"
#include "dephase/error.hpp"
#include "dephase/measures.hpp"
#include "dephase/state_io.hpp"

struct dph_state {
  dephase::TwoQubitState s;
};

struct dph_config {
  dephase::ConfigStore store;
};

namespace {

thread_local std::string g_last_error;

dph_status from_code(dephase::ErrorCode c) {
  using dephase::ErrorCode;
  switch (c) {
    case ErrorCode::kNotHermitian:
    case ErrorCode::kNotPSD:
    case ErrorCode::kBadDim:
    case ErrorCode::kInvalidState:
      return DPH_ERR_INVALID_STATE;
    case ErrorCode::kInvalidConfig:
      return DPH_ERR_INVALID_CONFIG;
    case ErrorCode::kIoError:
      return DPH_ERR_IO;
    case ErrorCode::kNoConvergence:
    case ErrorCode::kNumericalFailure:
      return DPH_ERR_NUMERICAL;
    case ErrorCode::kSupportMismatch:
      return DPH_ERR_SUPPORT_MISMATCH;
    case ErrorCode::kBadDims:
    case ErrorCode::kUnsupportedSubspace:
    case ErrorCode::kCutoffTooTight:
    case ErrorCode::kInvalidArgument:
      return DPH_ERR_INVALID_ARGUMENT;
  }
  return DPH_ERR_INTERNAL;
}

dph_status fail(dph_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs f, translating exceptions into status codes.
template <typename F>
dph_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return DPH_OK;
  } catch (const dephase::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(DPH_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DPH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DPH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DPH_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define DPH_REQUIRE(cond, what) \
  if (!(cond)) return fail(DPH_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* dph_last_error_message(void) { return g_last_error.c_str(); }

const char* dph_status_name(dph_status status) {
  switch (status) {
    case DPH_OK: return "ok";
    case DPH_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DPH_ERR_INVALID_STATE: return "invalid state";
    case DPH_ERR_INVALID_CONFIG: return "invalid config";
    case DPH_ERR_IO: return "i/o error";
    case DPH_ERR_NUMERICAL: return "numerical failure";
    case DPH_ERR_SUPPORT_MISMATCH: return "support mismatch";
    case DPH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void dph_string_free(char* s) { delete[] s; }

dph_status dph_state_from_json(const char* json_text, dph_state** out) {
  DPH_REQUIRE(json_text && out, "null argument");
  return guarded([&] { *out = new dph_state{dephase::state_from_json_text(json_text)}; });
}

dph_status dph_state_load(const char* path, dph_state** out) {
  DPH_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new dph_state{dephase::load_state_file(path)}; });
}

dph_status dph_state_evolved(const dph_config* cfg, double epsilon, double t, dph_state** out) {
  DPH_REQUIRE(cfg && out, "null argument");
  return guarded([&] {
    const dephase::AppConfig app = dephase::build_config(cfg->store);
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw dephase::Error(dephase::ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1]");
    }
    if (!(t >= 0.0)) throw dephase::Error(dephase::ErrorCode::kInvalidArgument, "t must be >= 0");
    app.sweep.channel.validate();
    *out = new dph_state{dephase::evolve(epsilon, app.sweep.channel, t)};
  });
}

dph_status dph_state_to_json(const dph_state* s, char** out_json) {
  DPH_REQUIRE(s && out_json, "null argument");
  return guarded([&] { *out_json = dup_string(dephase::state_to_json(s->s).dump()); });
}

void dph_state_destroy(dph_state* s) { delete s; }

dph_status dph_state_entry(const dph_state* s, int row, int col, double* re, double* im) {
  DPH_REQUIRE(s && re && im, "null argument");
  DPH_REQUIRE(row >= 0 && row < 4 && col >= 0 && col < 4, "index out of range");
  const dephase::Complex v = s->s(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
  *re = v.real();
  *im = v.imag();
  return DPH_OK;
}

dph_status dph_negativity(const dph_state* s, double* out) {
  DPH_REQUIRE(s && out, "null argument");
  return guarded([&] { *out = dephase::negativity(s->s); });
}

dph_status dph_concurrence(const dph_state* s, double* out) {
  DPH_REQUIRE(s && out, "null argument");
  return guarded([&] { *out = dephase::concurrence_wootters(s->s); });
}

dph_status dph_linear_entropy(const dph_state* s, double* out) {
  DPH_REQUIRE(s && out, "null argument");
  return guarded([&] { *out = dephase::linear_entropy(s->s); });
}

dph_status dph_fidelity(const dph_state* a, const dph_state* b, double* out) {
  DPH_REQUIRE(a && b && out, "null argument");
  return guarded([&] { *out = dephase::uhlmann_fidelity(a->s, b->s); });
}

dph_status dph_config_create(dph_config** out) {
  DPH_REQUIRE(out, "null argument");
  return guarded([&] { *out = new dph_config{}; });
}

void dph_config_destroy(dph_config* cfg) { delete cfg; }

dph_status dph_config_load_file(dph_config* cfg, const char* path) {
  DPH_REQUIRE(cfg && path, "null argument");
  return guarded([&] { cfg->store.load_file(path); });
}

dph_status dph_config_set(dph_config* cfg, const char* key, const char* value) {
  DPH_REQUIRE(cfg && key && value, "null argument");
  return guarded([&] { cfg->store.set(key, value); });
}

dph_status dph_config_get(const dph_config* cfg, const char* key, char** out_value) {
  DPH_REQUIRE(cfg && key && out_value, "null argument");
  return guarded([&] {
    const auto& entries = cfg->store.entries();
    const auto it = entries.find(key);
    *out_value = it == entries.end() ? nullptr : dup_string(it->second.value);
  });
}

dph_status dph_config_validate(const dph_config* cfg) {
  DPH_REQUIRE(cfg, "null argument");
  return guarded([&] {
    const dephase::AppConfig app = dephase::build_config(cfg->store);
    app.sweep.validate();
    app.oracle.reservoir().validate();
  });
}

dph_status dph_run_sweep(const dph_config* cfg, char** out_summary) {
  DPH_REQUIRE(cfg && out_summary, "null argument");
  return guarded([&] {
    const dephase::AppConfig app = dephase::build_config(cfg->store);
    const dephase::SweepSummary summary = dephase::run_sweep(app.sweep);
    *out_summary = dup_string(dephase::summary_to_json(summary).dump(2));
  });
}

dph_status dph_run_oracle_check(const dph_config* cfg, char** out_report, int* out_passed) {
  DPH_REQUIRE(cfg && out_report && out_passed, "null argument");
  return guarded([&] {
    const dephase::AppConfig app = dephase::build_config(cfg->store);
    app.sweep.channel.validate();
    const dephase::OracleReport rep = dephase::run_oracle_check(app.oracle, app.sweep.channel);
    *out_report = dup_string(dephase::oracle_report_to_json(rep, app.oracle, app.sweep.channel).dump(2));
    *out_passed = rep.passed ? 1 : 0;
  });
}

dph_status dph_run_css(const dph_config* cfg, const dph_state* rho, char** out_report, int* out_feasible) {
  DPH_REQUIRE(cfg && rho && out_report && out_feasible, "null argument");
  return guarded([&] {
    const dephase::AppConfig app = dephase::build_config(cfg->store);
    app.sweep.optimizer.validate();
    const dephase::CssResult r = dephase::closest_separable_bures(rho->s, app.sweep.optimizer);
    *out_report = dup_string(dephase::css_report_to_json(r, rho->s).dump(2));
    *out_feasible = dephase::css_feasible(r) ? 1 : 0;
  });
}

}  // extern "C"
