#ifndef PLAWBG_H
#define PLAWBG_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PlawbgDirection {
  PLAWBG_DIRECTION_IN = 0,
  PLAWBG_DIRECTION_OUT = 1,
} PlawbgDirection;

typedef enum PlawbgGeneratorKind {
  PLAWBG_GENERATOR_KIND_POWER_LAW = 0,
  PLAWBG_GENERATOR_KIND_LOG_NORMAL = 1,
} PlawbgGeneratorKind;

typedef enum PlawbgOptimizer {
  PLAWBG_OPTIMIZER_EXHAUSTIVE = 0,
  PLAWBG_OPTIMIZER_ANNEALING = 1,
} PlawbgOptimizer;

typedef enum PlawbgStatus {
  PLAWBG_STATUS_OK = 0,
  PLAWBG_STATUS_NULL_POINTER = 1,
  PLAWBG_STATUS_INVALID_ARGUMENT = 2,
  // Malformed incidence data.
  PLAWBG_STATUS_STRUCTURAL = 3,
  // The distribution does not admit the exponent estimate or a fit.
  PLAWBG_STATUS_PRECONDITION = 4,
  PLAWBG_STATUS_BUFFER_TOO_SMALL = 5,
  PLAWBG_STATUS_PANIC = 6,
} PlawbgStatus;

typedef struct PlawbgDistribution PlawbgDistribution;

typedef struct PlawbgFit PlawbgFit;

typedef struct PlawbgGraph PlawbgGraph;

typedef struct PlawbgSummary {
  uint64_t n;
  uint64_t m;
  uint64_t d_max;
  uint64_t n_d1;
  size_t n_bins;
} PlawbgSummary;

typedef struct PlawbgFitConfig {
  enum PlawbgOptimizer optimizer;
  size_t max_bins;
  uint64_t seed;
  uint64_t iteration_budget;
  double tolerance;
  double ratio_threshold;
  double filter_factor;
} PlawbgFitConfig;

typedef struct PlawbgFitSummary {
  double alpha;
  double scale_c;
  double objective;
  double divergence;
  bool consistent;
  bool no_overlap;
  size_t n_bins;
  uint64_t d_max;
  uint64_t model_n;
  uint64_t model_m;
} PlawbgFitSummary;

typedef struct PlawbgGeneratorSpec {
  enum PlawbgGeneratorKind kind;
  // Power-law density exponent; ignored for log-normal.
  double exponent;
  double mu;
  double sigma;
  size_t n_samples;
  uint64_t x_min;
  uint64_t seed;
} PlawbgGeneratorSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next failing call on the same thread.
const char *plawbg_last_error_message(void);

// NUL-terminated library version.
const char *plawbg_version(void);

// Builds a graph from `n_edges` directed edges `src[i] -> dst[i]`.
//
// # Safety
// `src` and `dst` must each point to `n_edges` readable elements and `out`
// must be writable.
enum PlawbgStatus plawbg_graph_from_edges(size_t n_vertices,
                                          const size_t *src,
                                          const size_t *dst,
                                          size_t n_edges,
                                          struct PlawbgGraph **out);

// Builds a graph from incidence entries `(edge[i], vertex[i], sign[i])`,
// `sign` being -1 where the edge leaves the vertex and 1 where it enters.
//
// # Safety
// `edge`, `vertex` and `sign` must each point to `len` readable elements and
// `out` must be writable.
enum PlawbgStatus plawbg_graph_from_triples(size_t n_edges,
                                            size_t n_vertices,
                                            const size_t *edge,
                                            const size_t *vertex,
                                            const int64_t *sign,
                                            size_t len,
                                            struct PlawbgGraph **out);

// # Safety
// `graph` must be null or a handle from this library not yet freed.
void plawbg_graph_free(struct PlawbgGraph *graph);

// Writes per-vertex degrees in `direction` (length = vertex count).
//
// # Safety
// `graph` must be a live handle; `buf` must hold `cap` elements; `out_len`
// must be writable.
enum PlawbgStatus plawbg_graph_degrees(const struct PlawbgGraph *graph,
                                       enum PlawbgDirection direction,
                                       uint64_t *buf,
                                       size_t cap,
                                       size_t *out_len);

// # Safety
// `graph` must be a live handle and `out` writable.
enum PlawbgStatus plawbg_graph_degree_distribution(const struct PlawbgGraph *graph,
                                                   enum PlawbgDirection direction,
                                                   struct PlawbgDistribution **out);

// Distribution from a multiset of degrees; zeros are ignored.
//
// # Safety
// `degrees` must point to `len` readable elements and `out` be writable.
enum PlawbgStatus plawbg_distribution_from_degrees(const uint64_t *degrees,
                                                   size_t len,
                                                   enum PlawbgDirection direction,
                                                   struct PlawbgDistribution **out);

// Distribution from explicit bins (strictly ascending, positive) and counts.
//
// # Safety
// `bins` and `counts` must each point to `len` readable elements and `out`
// must be writable.
enum PlawbgStatus plawbg_distribution_new(const uint64_t *bins,
                                          const uint64_t *counts,
                                          size_t len,
                                          enum PlawbgDirection direction,
                                          struct PlawbgDistribution **out);

// # Safety
// `dist` must be null or a handle from this library not yet freed.
void plawbg_distribution_free(struct PlawbgDistribution *dist);

// # Safety
// `dist` must be a live handle and `out` writable.
enum PlawbgStatus plawbg_distribution_summary(const struct PlawbgDistribution *dist,
                                              struct PlawbgSummary *out);

// `ln n(d_1) / ln d_max`.
//
// # Safety
// `dist` must be a live handle and `out` writable.
enum PlawbgStatus plawbg_estimate_alpha(const struct PlawbgDistribution *dist, double *out);

struct PlawbgFitConfig plawbg_fit_config_default(void);

// Fits, rebins and compares the graph's degree distribution. A null
// `config` uses [`plawbg_fit_config_default`].
//
// # Safety
// `graph` must be a live handle, `config` null or readable, `out` writable.
enum PlawbgStatus plawbg_fit_graph(const struct PlawbgGraph *graph,
                                   enum PlawbgDirection direction,
                                   const struct PlawbgFitConfig *config,
                                   struct PlawbgFit **out);

// Like [`plawbg_fit_graph`] for a bare distribution. Flagged indices then
// refer to the distribution expanded into ascending degrees.
//
// # Safety
// `dist` must be a live handle, `config` null or readable, `out` writable.
enum PlawbgStatus plawbg_fit_distribution(const struct PlawbgDistribution *dist,
                                          const struct PlawbgFitConfig *config,
                                          struct PlawbgFit **out);

// # Safety
// `fit` must be null or a handle from this library not yet freed.
void plawbg_fit_free(struct PlawbgFit *fit);

// # Safety
// `fit` must be a live handle and `out` writable.
enum PlawbgStatus plawbg_fit_summary(const struct PlawbgFit *fit, struct PlawbgFitSummary *out);

// Model bins with their model and rebinned observed counts. Any of the
// three buffers may be null to skip it; all share `cap`.
//
// # Safety
// `fit` must be a live handle; each non-null buffer must hold `cap`
// elements; `out_len` must be writable.
enum PlawbgStatus plawbg_fit_bins(const struct PlawbgFit *fit,
                                  uint64_t *bins,
                                  uint64_t *model_counts,
                                  uint64_t *rebinned_counts,
                                  size_t cap,
                                  size_t *out_len);

// Indices of vertices flagged at `factor`, ascending.
//
// # Safety
// `fit` must be a live handle; `buf` must hold `cap` elements; `out_len`
// must be writable.
enum PlawbgStatus plawbg_fit_flagged(const struct PlawbgFit *fit,
                                     double factor,
                                     size_t *buf,
                                     size_t cap,
                                     size_t *out_len);

// Seeded degree samples; `spec.n_samples` values are written.
//
// # Safety
// `spec` must be readable; `buf` must hold `cap` elements; `out_len` must be
// writable.
enum PlawbgStatus plawbg_synth_degrees(const struct PlawbgGeneratorSpec *spec,
                                       uint64_t *buf,
                                       size_t cap,
                                       size_t *out_len);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PLAWBG_H */
