/* etmas — event-triggered multi-agent simulation and certification toolkit.
 *
 * C interface of the shared library.  All entry points return a status code:
 *   0  success
 *   1  unclassified failure
 *   2  configuration error (bad config text, dimension mismatch, missing data)
 *   3  numeric failure (non-finite state, clock outside the solved phi grid)
 *   4  infeasible certification (inadmissible phi(0) window or degenerate
 *      trigger constants)
 * On failure the output arguments are untouched and etmas_last_error() holds
 * a message (thread-local, valid until the next failing call on the thread).
 *
 * Strings returned through char** are heap-allocated; release them with
 * etmas_string_free.  Handles are opaque; release with the matching _free.
 */

#ifndef ETMAS_H
#define ETMAS_H

#ifdef __cplusplus
extern "C" {
#endif

#define ETMAS_OK 0
#define ETMAS_ERR 1
#define ETMAS_ERR_CONFIG 2
#define ETMAS_ERR_NUMERIC 3
#define ETMAS_ERR_INFEASIBLE 4

typedef struct etmas_scenario etmas_scenario;
typedef struct etmas_trace etmas_trace;

const char* etmas_version(void);
const char* etmas_last_error(void);
void etmas_string_free(char* s);

/* Canonicalizes a config document (the dump-config operation): parses the
 * key/value text and re-emits it in fixed key order with %.17g numerics. */
int etmas_config_canonical(const char* config_text, char** out);

/* Builds a scenario handle from a config document.  The document selects the
 * named scenario, applies per-network overrides, and fixes the run
 * parameters (horizon, step, etm mode, decimation, sweep ratios). */
int etmas_scenario_from_config(const char* config_text, etmas_scenario** out);
void etmas_scenario_free(etmas_scenario* s);

/* Number of networks in the scenario. */
int etmas_scenario_num_nets(const etmas_scenario* s, int* out);

/* Runs the hybrid execution with the handle's run parameters. */
int etmas_simulate(const etmas_scenario* s, etmas_trace** out);
void etmas_trace_free(etmas_trace* t);

int etmas_trace_rows(const etmas_trace* t, long* out);
int etmas_trace_csv(const etmas_trace* t, char** out);
int etmas_trace_jsonl(const etmas_trace* t, char** out);
int etmas_trace_summary_json(const etmas_trace* t, char** out);

/* Per-network event counts; net is 1-based. */
int etmas_event_counts(const etmas_trace* t, int net, long* samplings, long* fired,
                       long* updates);

/* Evaluates the composite Lyapunov monitor along the trace: fills the U
 * column in place and returns the violation report as JSON. */
int etmas_trace_monitor(etmas_trace* t, const etmas_scenario* s, double slack,
                        char** report_json);

/* Certifies every network (largest sampling period T and delay Delta) and
 * returns a JSON array with one object per network. */
int etmas_certify_json(const etmas_scenario* s, double grid_step, char** out);

/* Sweep of delay-free MASP bounds over trigger-aggressiveness ratios
 * (the handle's `ratios`, default 0, 0.1, ..., 1).  Emits CSV and JSON. */
int etmas_sweep(const etmas_scenario* s, double grid_step, int threads, char** out_csv,
                char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* ETMAS_H */
