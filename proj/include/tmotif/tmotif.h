/*
 * C interface to the tmotif library.
 *
 * Objects are opaque handles created by tm_*_load / tm_*_parse / tm_gen_* and
 * released with the matching tm_*_free. Every fallible call returns a
 * tm_status; on failure tm_last_error() describes the error for the calling
 * thread until its next failing call. Strings returned through char** out
 * parameters are heap-allocated and released with tm_string_free.
 */
#ifndef TMOTIF_TMOTIF_H
#define TMOTIF_TMOTIF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define TM_API __declspec(dllexport)
#else
#  define TM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tm_status {
  TM_OK = 0,
  TM_ERR_USAGE = 1,        /* operation not applicable, bad argument */
  TM_ERR_PARSE = 2,        /* malformed edge list or motif text */
  TM_ERR_CONFIG = 3,       /* invalid sampling or generator parameters */
  TM_ERR_DOMAIN = 4,       /* value outside an operation's domain */
  TM_ERR_STREAM_ORDER = 5, /* streamed edges out of time order */
  TM_ERR_BUDGET = 6,       /* oracle work budget exceeded */
  TM_ERR_OVERFLOW = 7,     /* checked count arithmetic overflowed */
  TM_ERR_IO = 8,
  TM_ERR_INTERNAL = 9
} tm_status;

typedef enum tm_algo { TM_ALGO_AUTO = 0, TM_ALGO_BT = 1, TM_ALGO_EX23 = 2 } tm_algo;

typedef struct tm_graph tm_graph;
typedef struct tm_motif tm_motif;
typedef struct tm_histogram tm_histogram;
typedef struct tm_estimate tm_estimate;

typedef struct tm_graph_stats {
  uint64_t nodes;
  uint64_t temporal_edges;
  uint64_t static_edges;
  int64_t t_min;
  int64_t t_max;
} tm_graph_stats;

typedef struct tm_sampling_config {
  int64_t c;
  uint32_t b;
  double r;
  uint64_t seed;
  uint32_t threads;      /* 0 = hardware concurrency */
  double target_epsilon; /* <= 0 means unset */
} tm_sampling_config;

TM_API const char* tm_last_error(void);
TM_API const char* tm_status_name(tm_status status);
TM_API void tm_string_free(char* s);

/* Graphs */
TM_API tm_status tm_graph_load_file(const char* path, tm_graph** out);
TM_API tm_status tm_graph_load_string(const char* text, size_t len, tm_graph** out);
TM_API void tm_graph_free(tm_graph* g);
TM_API tm_status tm_graph_stats_get(const tm_graph* g, tm_graph_stats* out);
TM_API tm_status tm_graph_to_edge_list(const tm_graph* g, char** out);

/* Motifs: "m23", "bifan", "triangle", or "u v" lines in motif order. */
TM_API tm_status tm_motif_parse(const char* text, tm_motif** out);
TM_API tm_status tm_motif_load_file(const char* path, tm_motif** out);
TM_API void tm_motif_free(tm_motif* m);
TM_API size_t tm_motif_num_nodes(const tm_motif* m);
TM_API size_t tm_motif_num_edges(const tm_motif* m);
TM_API tm_status tm_motif_to_text(const tm_motif* m, char** out);

/* Exact counting. TM_ALGO_EX23 on a motif other than 2-node/3-edge fails with
 * TM_ERR_USAGE. */
TM_API tm_status tm_count(const tm_graph* g, const tm_motif* m, int64_t delta, tm_algo algo,
                          tm_histogram** out);
TM_API void tm_histogram_free(tm_histogram* h);
TM_API size_t tm_histogram_size(const tm_histogram* h);
TM_API tm_status tm_histogram_entry(const tm_histogram* h, size_t i, int64_t* duration,
                                    uint64_t* count);
TM_API tm_status tm_histogram_total(const tm_histogram* h, uint64_t* total);
/* {"histogram": {"<duration>": count, ...}, "total": n} */
TM_API tm_status tm_histogram_to_json(const tm_histogram* h, char** out);

/* Sampling estimator */
TM_API void tm_sampling_config_default(tm_sampling_config* cfg);
TM_API tm_status tm_estimate_graph(const tm_graph* g, const tm_motif* m, int64_t delta,
                                   const tm_sampling_config* cfg, tm_algo algo,
                                   tm_estimate** out);
/* Streams a time-sorted edge-list file without loading it. */
TM_API tm_status tm_estimate_stream_file(const char* path, const tm_motif* m, int64_t delta,
                                         const tm_sampling_config* cfg, tm_algo algo,
                                         tm_estimate** out);
TM_API void tm_estimate_free(tm_estimate* e);
TM_API double tm_estimate_value(const tm_estimate* e);
TM_API size_t tm_estimate_num_shifts(const tm_estimate* e);
TM_API double tm_estimate_shift_value(const tm_estimate* e, size_t k);
TM_API uint64_t tm_estimate_sampled_intervals(const tm_estimate* e);
TM_API double tm_estimate_sampled_edge_fraction(const tm_estimate* e);
/* Returns 0 when the estimate did not come from streaming. */
TM_API int tm_estimate_peak_retained_edges(const tm_estimate* e, uint64_t* out);
/* {value, per_shift[], shifts[], sampled_interval_count, ..., config} */
TM_API tm_status tm_estimate_to_json(const tm_estimate* e, char** out);

/* One full pass at the first shift: q and Y summaries, correlation,
 * sparsity, conditional variance and the error trade-off terms, as JSON. */
TM_API tm_status tm_diagnose(const tm_graph* g, const tm_motif* m, int64_t delta,
                             const tm_sampling_config* cfg, tm_algo algo, char** json_out);

/* Generators */
TM_API tm_status tm_gen_random(uint64_t n, uint64_t m, int64_t t_range, uint64_t seed,
                               tm_graph** out);
/* Undirected graph on nodes 1..n given as num_edges (u, v) pairs in
 * `edges` (2 * num_edges entries). Produces the temporal graph and the
 * k-leaf star motif; *delta receives the unbounded time span. */
TM_API tm_status tm_gen_reduction(uint64_t n, const uint32_t* edges, size_t num_edges,
                                  uint64_t k, tm_graph** graph_out, tm_motif** motif_out,
                                  int64_t* delta);

#ifdef __cplusplus
}
#endif

#endif /* TMOTIF_TMOTIF_H */
