/* irgmotif C API: scale-free random-graph sampling, exact clique/cycle
 * counting, and asymptotic theory evaluation behind a stable extern-C
 * surface. All functions return an irg_status code; on failure
 * irg_last_error() yields a thread-local description. Strings returned
 * through out-parameters are heap-allocated and must be released with
 * irg_string_free(). */

#ifndef IRGMOTIF_H
#define IRGMOTIF_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define IRG_API __declspec(dllexport)
#else
#define IRG_API __attribute__((visibility("default")))
#endif

typedef enum irg_status {
    IRG_OK = 0,
    IRG_ERR_INVALID = 1,     /* caller violated a precondition */
    IRG_ERR_DOMAIN = 2,      /* numeric input outside the defined domain */
    IRG_ERR_RESOURCE = 3,    /* combinatorial or size budget exceeded */
    IRG_ERR_UNSUPPORTED = 4, /* request outside the implemented surface */
    IRG_ERR_IO = 5,          /* file read/write failure */
    IRG_ERR_INTERNAL = 6,
    IRG_PARTIAL = 7 /* experiment finished with flagged (timed-out) replications */
} irg_status;

/* Opaque sampled graph. */
typedef struct irg_graph_t irg_graph_t;

IRG_API const char* irg_version(void);

/* Thread-local message describing the most recent failure in this thread. */
IRG_API const char* irg_last_error(void);

IRG_API void irg_string_free(char* s);
IRG_API void irg_graph_free(irg_graph_t* graph);

/* params_json: {"n":int,"tau":real,"kernel":"min-one|ratio|exp-complement",
 *               "svf":{"variant":"constant|log-power","c"/"a":real},
 *               "seed":int,"replication":int}
 * kernel, svf and replication are optional (min-one / constant 1 / 0). */
IRG_API irg_status irg_sample_graph(const char* params_json, irg_graph_t** out_graph);

/* Graph wire format:
 * {"n","tau","kernel","seed","replication","weights":[...],"edges":[[i,j],...]}
 * with zero-based i<j pairs. */
IRG_API irg_status irg_graph_from_json(const char* json_text, irg_graph_t** out_graph);
IRG_API irg_status irg_graph_read_file(const char* path, irg_graph_t** out_graph);
IRG_API irg_status irg_graph_to_json(const irg_graph_t* graph, char** out_text);
IRG_API irg_status irg_graph_write_file(const irg_graph_t* graph, const char* path);
IRG_API irg_status irg_graph_stats(const irg_graph_t* graph, uint64_t* out_n,
                                   uint64_t* out_edges, uint64_t* out_max_degree);

/* kind: "clique" or "cycle"; use_brute_force switches to the subset-
 * enumeration oracle. The count is returned as a decimal string (counts can
 * exceed 64 bits). k > n yields "0". */
IRG_API irg_status irg_count_motifs(const irg_graph_t* graph, const char* kind, int k,
                                    int use_brute_force, char** out_count_decimal);

/* request_json: {"family":"clique|cycle","mode":...,"n","k","tau",
 *                "kernel","svf","rel_tol","budget","A"} (extras optional).
 * Modes: clique rough|cutoff|precise|bound, cycle
 * odd|even|lower-bound|stirling|direct-integral. Result JSON carries value,
 * log_value, components, error estimate and flags. */
IRG_API irg_status irg_theory(const char* request_json, char** out_json);

/* Circulant diagnostics for the cycle analysis: determinant, eigenvalues,
 * and for even k the reduced determinant and null vector. */
IRG_API irg_status irg_circulant(int k, char** out_json);

/* Runs a Monte Carlo experiment from a config document (see the README for
 * the schema); appends JSONL records to the configured output path. Returns
 * IRG_PARTIAL when some replications timed out. out_report_json (optional)
 * receives {"written","skipped","timeouts"}. */
IRG_API irg_status irg_run_experiment(const char* config_json, char** out_report_json);

/* Reads a JSONL record file, aggregates per-cell statistics, optionally joins
 * theory columns, and writes the summary CSV. */
IRG_API irg_status irg_summarize_records(const char* records_path, const char* csv_path,
                                         int join_theory);

/* Scaling-exponent fit over a record file: OLS of log mean count against
 * log n for the given (k, tau, kind). Result JSON: slope, intercept,
 * slope_stderr, r_squared, points. */
IRG_API irg_status irg_scaling_fit(const char* records_path, int k, double tau,
                                   const char* kind, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IRGMOTIF_H */
