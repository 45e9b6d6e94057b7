#ifndef DEPHASE_DEPHASE_H
#define DEPHASE_DEPHASE_H

/* C interface to the dephase library. Every call returns a dph_status; on
 * failure dph_last_error_message() describes the problem for the calling
 * thread. Strings handed out by the library are released with
 * dph_string_free. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(DEPHASE_BUILDING)
#    define DPH_API __declspec(dllexport)
#  else
#    define DPH_API __declspec(dllimport)
#  endif
#else
#  define DPH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dph_status {
  DPH_OK = 0,
  DPH_ERR_INVALID_ARGUMENT = 1,
  DPH_ERR_INVALID_STATE = 2,
  DPH_ERR_INVALID_CONFIG = 3,
  DPH_ERR_IO = 4,
  DPH_ERR_NUMERICAL = 5,
  DPH_ERR_SUPPORT_MISMATCH = 6,
  DPH_ERR_INTERNAL = 7
} dph_status;

typedef struct dph_state dph_state;
typedef struct dph_config dph_config;

DPH_API const char* dph_last_error_message(void);
DPH_API const char* dph_status_name(dph_status status);
DPH_API void dph_string_free(char* s);

/* ---- states ---- */

/* {"dim":4,"re":[[...]],"im":[[...]]}; "im" may be omitted. */
DPH_API dph_status dph_state_from_json(const char* json_text, dph_state** out);
DPH_API dph_status dph_state_load(const char* path, dph_state** out);
/* Family state at time t under the channel parameters held by cfg. */
DPH_API dph_status dph_state_evolved(const dph_config* cfg, double epsilon, double t, dph_state** out);
DPH_API dph_status dph_state_to_json(const dph_state* s, char** out_json);
DPH_API void dph_state_destroy(dph_state* s);

DPH_API dph_status dph_state_entry(const dph_state* s, int row, int col, double* re, double* im);
DPH_API dph_status dph_negativity(const dph_state* s, double* out);
DPH_API dph_status dph_concurrence(const dph_state* s, double* out);
DPH_API dph_status dph_linear_entropy(const dph_state* s, double* out);
DPH_API dph_status dph_fidelity(const dph_state* a, const dph_state* b, double* out);

/* ---- configuration ---- */

DPH_API dph_status dph_config_create(dph_config** out);
DPH_API void dph_config_destroy(dph_config* cfg);
DPH_API dph_status dph_config_load_file(dph_config* cfg, const char* path);
/* key is "section.name", e.g. "channel.ntilde". Later calls win. */
DPH_API dph_status dph_config_set(dph_config* cfg, const char* key, const char* value);
/* *out_value is NULL when the key was never set. */
DPH_API dph_status dph_config_get(const dph_config* cfg, const char* key, char** out_value);
/* Parse and range-check every key without running anything. */
DPH_API dph_status dph_config_validate(const dph_config* cfg);

/* ---- jobs ---- */

/* Writes the CSV to sweep.out ("-" for stdout); *out_summary gets JSON. */
DPH_API dph_status dph_run_sweep(const dph_config* cfg, char** out_summary);
/* *out_passed is 1 when the worst difference is under the threshold. */
DPH_API dph_status dph_run_oracle_check(const dph_config* cfg, char** out_report, int* out_passed);
/* Uses the optimizer.* keys. *out_feasible is 0 if pt_min_eig < -1e-7. */
DPH_API dph_status dph_run_css(const dph_config* cfg, const dph_state* rho, char** out_report, int* out_feasible);

#ifdef __cplusplus
}
#endif

#endif
