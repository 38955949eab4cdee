/* pdmerton: portfolio choice with path-dependent labor income.
 *
 * C interface to the pdmerton core. All functions return a pdm_status; on
 * failure pdm_last_error() carries a message for the calling thread. Handles
 * are opaque and must be released with their matching free function. Strings
 * returned through char** are heap-allocated; release with pdm_string_free.
 */
#ifndef PDMERTON_H
#define PDMERTON_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pdm_scenario pdm_scenario;

typedef enum pdm_status {
    PDM_OK = 0,
    PDM_ERR_CONFIG = 2,     /* unreadable/malformed scenario */
    PDM_ERR_VALIDATION = 3, /* model hypotheses violated */
    PDM_ERR_CHECK = 4,      /* a verification check failed */
    PDM_ERR_INVALID = 5,    /* bad argument / state */
    PDM_ERR_IO = 6,
    PDM_ERR_RUNTIME = 7
} pdm_status;

const char* pdm_version(void);
const char* pdm_last_error(void);
void pdm_string_free(char* s);

/* --- scenario lifecycle --------------------------------------------------- */

pdm_status pdm_scenario_load(const char* path, pdm_scenario** out);
/* format: "toml" or "json" */
pdm_status pdm_scenario_load_string(const char* text, const char* format, pdm_scenario** out);
void pdm_scenario_free(pdm_scenario* s);

/* Run-control overrides (flags beat file values beat defaults). */
pdm_status pdm_scenario_set_seed(pdm_scenario* s, uint64_t seed);
pdm_status pdm_scenario_set_dt(pdm_scenario* s, double dt);
pdm_status pdm_scenario_set_horizon(pdm_scenario* s, double T);
pdm_status pdm_scenario_set_paths(pdm_scenario* s, uint64_t n_paths);
pdm_status pdm_scenario_set_gamma(pdm_scenario* s, double gamma);

/* When set, every run writes its artifacts (manifest.json plus a per-command
 * CSV/JSON report) into this directory. Empty string disables. */
pdm_status pdm_scenario_set_out_dir(pdm_scenario* s, const char* dir);

/* --- validation and derived constants ------------------------------------ */

/* *report_out receives the validation/derived-constants report text. Returns
 * PDM_ERR_VALIDATION when any hypothesis fails (report lists each violated
 * condition by name). */
pdm_status pdm_validate(pdm_scenario* s, char** report_out);

typedef struct pdm_derived {
    double b;
    double beta;
    double beta_inf;
    double beta_bar_inf;
    double g_inf;
    double nu;
    double f_inf;
    double gamma_star_drift;
    uint64_t n;  /* risky assets */
    uint64_t m;  /* history grid resolution */
} pdm_derived;

pdm_status pdm_derived_constants(pdm_scenario* s, pdm_derived* out);
/* buf must hold n (kappa / gamma_star_vol) or m+1 (h_inf) doubles. */
pdm_status pdm_derived_kappa(pdm_scenario* s, double* buf, size_t buflen);
pdm_status pdm_derived_gamma_star_vol(pdm_scenario* s, double* buf, size_t buflen);
pdm_status pdm_derived_h_inf(pdm_scenario* s, double* buf, size_t buflen);

/* Deterministic manifest (resolved parameters, derived constants, seed,
 * versions) as JSON text. */
pdm_status pdm_manifest(pdm_scenario* s, char** json_out);

/* --- verification runs ---------------------------------------------------- */

typedef struct pdm_check_result {
    double closed_form; /* V or human capital */
    double mc_mean;
    double mc_stderr;
    double truncation_bound;
    double z;
    int pass;
    uint64_t n_paths;
    double T;
} pdm_check_result;

/* Closed-form value function vs Monte Carlo objective under the optimal
 * feedback. PDM_ERR_CHECK when the agreement test fails. */
pdm_status pdm_run_value_check(pdm_scenario* s, pdm_check_result* out);

/* Human capital closed form vs state-price-density MC oracle. */
pdm_status pdm_run_human_capital_check(pdm_scenario* s, pdm_check_result* out);

typedef struct pdm_benchmark_result {
    double gamma_wedge;
    double gamma_rel_resid;
    double theta_rel_resid;
} pdm_benchmark_result;

/* Policy/total-wealth wedges vs the phi=0 benchmark; theta_wedge_buf (length
 * n) may be NULL. */
pdm_status pdm_run_benchmark(pdm_scenario* s, pdm_benchmark_result* out,
                             double* theta_wedge_buf, size_t buflen);

/* Simulates income paths and writes CSV (long format; one row per step with
 * path_id, t, y and optionally the driving increments). n_paths_cap limits
 * the file size; 0 means the scenario's path count. */
pdm_status pdm_run_income_sim(pdm_scenario* s, const char* csv_path, uint64_t n_paths_cap,
                              int with_increments);

/* Closed-loop simulation; writes paths CSV and a Gamma/consumption fan chart
 * into out_dir (paths.csv, fan_chart.csv, manifest.json). */
pdm_status pdm_run_policy_sim(pdm_scenario* s, const char* out_dir);

/* Runs every acceptance criterion; *summary_out gets one line per criterion.
 * PDM_OK only if all pass (PDM_ERR_CHECK otherwise). */
pdm_status pdm_run_suite(pdm_scenario* s, char** summary_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PDMERTON_H */
