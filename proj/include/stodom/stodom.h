/* stodom — exact stochastic-domination toolkit: C API.
 *
 * All functions return a stodom_status; on any non-OK status a description
 * is available from stodom_last_error() (thread-local). Objects are opaque
 * handles released with their _free function. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * stodom_string_free().
 */
#ifndef STODOM_H
#define STODOM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stodom_status {
  STODOM_OK = 0,
  /* A mathematical assertion failed; the report carries the certificate. */
  STODOM_CHECK_FAILED = 1,
  STODOM_EINPUT = 2,
  STODOM_ESIZE = 3,
  STODOM_EINTERNAL = 4
} stodom_status;

typedef struct stodom_measure stodom_measure;
typedef struct stodom_fibre_map stodom_fibre_map;
typedef struct stodom_coupling stodom_coupling;

const char* stodom_version(void);

/* Thread-local description of the last failure; empty string when none. */
const char* stodom_last_error(void);

void stodom_string_free(char* s);

/* Measures: JSON format
 *   {"sites": n, "label_bound": N, "weights": {"l0,l1,...": "num/den"}}   */
stodom_status stodom_measure_parse(const char* json, stodom_measure** out);
stodom_status stodom_measure_render(const stodom_measure* m, char** json_out);
void stodom_measure_free(stodom_measure* m);

/* Fibre maps: {"A": n, "B": m, "pi": [...], "section": [...]} (section
 * optional). */
stodom_status stodom_fibre_map_parse(const char* json, stodom_fibre_map** out);
void stodom_fibre_map_free(stodom_fibre_map* pm);

/* Couplings render with pair keys "left|right". */
stodom_status stodom_coupling_render(const stodom_coupling* c, char** json_out);
void stodom_coupling_free(stodom_coupling* c);

/* Exact stochastic-domination decision. *verdict_out is 1 or 0; the
 * certificate JSON holds a monotone coupling on YES and a violating up-set
 * (generators plus both exact masses) on NO. */
stodom_status stodom_dominates(const stodom_measure* mu, const stodom_measure* rho,
                               int* verdict_out, char** certificate_json);

/* Constructive monotone coupling for a lifted measure under the module's
 * preconditions; STODOM_CHECK_FAILED names the failed precondition. */
stodom_status stodom_build_main_coupling(const stodom_measure* mu, const stodom_measure* rho,
                                         const stodom_fibre_map* pm, stodom_coupling** out);

/* which: 'A' conditional condition (mu ignored, may be NULL),
 *        'B' flattened condition, 'C' section-marginal condition.
 * Report JSON: {"holds": bool, "witness": "..."} */
stodom_status stodom_check_assumption(char which, const stodom_measure* mu,
                                      const stodom_measure* rho, const stodom_fibre_map* pm,
                                      char** report_json);

/* Experiment runner: config and report are JSON documents; see the CLI
 * documentation for the command set. A report is produced for STODOM_OK and
 * STODOM_CHECK_FAILED; other statuses only set stodom_last_error(). */
stodom_status stodom_run(const char* config_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* STODOM_H */
