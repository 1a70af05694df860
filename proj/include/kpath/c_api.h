/* C interface to the kpath centrality library.
 *
 * All functions returning kp_status report KP_OK on success; on failure
 * kp_last_error() gives a thread-local human-readable message. Graphs are
 * opaque handles owned by the library and released with kp_graph_free().
 * Score buffers are caller-allocated arrays of kp_graph_vertex_count()
 * doubles, indexed by dense vertex id. Strings returned through char** are
 * heap-allocated and released with kp_string_free().
 */
#ifndef KPATH_C_API_H
#define KPATH_C_API_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct kp_graph kp_graph;

typedef enum kp_status {
    KP_OK = 0,
    KP_ERROR_INVALID_ARGUMENT = 1,
    KP_ERROR_PARSE = 2,
    KP_ERROR_IO = 3,
    KP_ERROR_TOO_LARGE = 4,
    KP_ERROR_UNDEFINED = 5,
    KP_ERROR_BUDGET_EXCEEDED = 6,
    KP_ERROR_INTERNAL = 7
} kp_status;

typedef enum kp_format {
    KP_FORMAT_SNAP = 0,
    KP_FORMAT_PAJEK = 1
} kp_format;

typedef enum kp_correlation_method {
    KP_CORRELATION_PEARSON = 0,
    KP_CORRELATION_SPEARMAN = 1
} kp_correlation_method;

const char* kp_version(void);
const char* kp_status_name(kp_status status);
const char* kp_last_error(void);

/* ---- graph lifecycle -------------------------------------------------- */

typedef struct kp_load_options {
    int directed;           /* SNAP only; Pajek gets it from the section kind */
    int weighted;           /* SNAP only: expect a third weight column */
    int force_unit_weights; /* parse weights but store 1.0 everywhere */
} kp_load_options;

kp_status kp_graph_load_path(const char* path, kp_format format,
                             const kp_load_options* options, kp_graph** out);
kp_status kp_graph_load_text(const char* text, kp_format format,
                             const kp_load_options* options, kp_graph** out);
kp_status kp_graph_generate(uint64_t n, uint32_t edges_per_new_vertex,
                            double triad_probability, uint64_t seed,
                            kp_graph** out);
void kp_graph_free(kp_graph* graph);

uint64_t kp_graph_vertex_count(const kp_graph* graph);
uint64_t kp_graph_edge_count(const kp_graph* graph);
int kp_graph_directed(const kp_graph* graph);
int kp_graph_weighted(const kp_graph* graph);
uint64_t kp_graph_duplicate_edges_dropped(const kp_graph* graph);
uint64_t kp_graph_self_loops_dropped(const kp_graph* graph);
kp_status kp_graph_external_id(const kp_graph* graph, uint64_t vertex,
                               int64_t* out);

/* ---- serialization ----------------------------------------------------- */

kp_status kp_graph_write_edge_list(const kp_graph* graph, char** out);
kp_status kp_graph_id_map_csv(const kp_graph* graph, char** out);
kp_status kp_graph_stats_json(const kp_graph* graph, char** out);
kp_status kp_scores_csv(const kp_graph* graph, const double* scores, char** out);
void kp_string_free(char* text);

/* ---- centrality algorithms --------------------------------------------- */

kp_status kp_brandes(const kp_graph* graph, int workers, double* scores);
kp_status kp_bounded_betweenness(const kp_graph* graph, double distance_bound,
                                 int workers, double* scores);
/* Test oracle; fails with KP_ERROR_TOO_LARGE above vertex_limit vertices. */
kp_status kp_brute_force_betweenness(const kp_graph* graph,
                                     uint64_t vertex_limit, double* scores);
/* pivot_override/cutoff_override/iterations_override: negative = derived. */
kp_status kp_ra_brandes(const kp_graph* graph, double epsilon,
                        int64_t pivot_override, uint64_t seed, int workers,
                        double* scores);
kp_status kp_as_brandes(const kp_graph* graph, double c, double s,
                        int64_t cutoff_override, uint64_t seed, double* scores);
kp_status kp_ra_kpath(const kp_graph* graph, uint32_t kappa, double alpha,
                      int64_t iterations_override, uint64_t seed, int workers,
                      double* scores);
kp_status kp_exact_kpath(const kp_graph* graph, uint32_t kappa,
                         uint64_t vertex_limit, double* scores);

/* ---- derived parameters ------------------------------------------------ */

kp_status kp_ra_brandes_pivot_count(uint64_t n, double epsilon, uint64_t* out);
kp_status kp_as_brandes_cutoff(uint64_t n, double s, uint64_t* out);
kp_status kp_ra_kpath_iterations(uint64_t n, uint32_t kappa, double alpha,
                                 uint64_t* out);
kp_status kp_default_kpath_params(const kp_graph* graph, uint32_t* kappa,
                                  double* alpha);
kp_status kp_match_speedup_params(double kpath_speedup, uint64_t n,
                                  double* epsilon, double* s, int* clamped);

/* ---- evaluation metrics ------------------------------------------------ */

/* KP_ERROR_UNDEFINED when the coefficient does not exist (constant input). */
kp_status kp_correlation(const double* x, const double* y, uint64_t length,
                         kp_correlation_method method, double* out);
/* external_ids may be NULL (ties then break by index). */
kp_status kp_top_overlap(const double* exact, const double* approx,
                         const int64_t* external_ids, uint64_t length,
                         double n_percent, double* out);

/* ---- comparison harness ------------------------------------------------ */

typedef struct kp_compare_options {
    const char* algorithms; /* comma-separated; NULL = ra-kpath,ra-brandes,as-brandes */
    uint32_t repetitions;
    uint64_t seed;
    int workers;
    uint32_t kappa;             /* 0 = default round(ln(n+m)) */
    double alpha;               /* NAN = default 0.2 */
    double epsilon;             /* NAN = speedup-matched, else 0.5 */
    double as_c;                /* NAN = 5 */
    double as_s;                /* NAN = speedup-matched, else 20 */
    double distance_bound;      /* NAN unless kbetweenness is selected */
    double time_budget_seconds; /* <= 0 = unlimited */
    const char* network_label;  /* NULL = "graph" */
    const double* top_percents; /* NULL = {1, 5, 10} */
    uint64_t top_percent_count;
} kp_compare_options;

void kp_compare_options_init(kp_compare_options* options);

/* Runs the comparison and renders the report. overlap_csv/correlation_csv
 * may be NULL when not wanted. On a time-budget breach the partial report is
 * still produced (flagged incomplete) and the status is
 * KP_ERROR_BUDGET_EXCEEDED. */
kp_status kp_compare_run(const kp_graph* graph,
                         const kp_compare_options* options, char** report_json,
                         char** overlap_csv, char** correlation_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KPATH_C_API_H */
