#ifndef CARTWIDTH_H
#define CARTWIDTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CwStatus {
  CW_STATUS_OK = 0,
  CW_STATUS_INVALID_INPUT = 1,
  CW_STATUS_INVALID_PARAMETER = 2,
  CW_STATUS_INDEX_OUT_OF_RANGE = 3,
  CW_STATUS_STRUCTURAL = 4,
  CW_STATUS_PRECONDITION = 5,
  CW_STATUS_SPEC = 6,
  CW_STATUS_RESOURCE = 7,
  CW_STATUS_PARSE = 8,
  CW_STATUS_IO = 9,
  CW_STATUS_INVARIANT = 10,
  CW_STATUS_NULL_POINTER = 11,
  CW_STATUS_PANIC = 12,
} CwStatus;

typedef enum CwStrategy {
  CW_STRATEGY_MIN_DEGREE = 0,
  CW_STRATEGY_MIN_FILL = 1,
} CwStrategy;

/**
 * A tree decomposition together with its host vertex count.
 */
typedef struct CwDecomposition CwDecomposition;

/**
 * An undirected simple graph.
 */
typedef struct CwGraph CwGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. Valid
 * until the next call on this thread.
 */
const char *cw_last_error(void);

void cw_string_free(char *s);

/**
 * Graph on `n` vertices; `edges` holds `edge_count` pairs as `2 * edge_count`
 * consecutive ids.
 */
enum CwStatus cw_graph_new(size_t n,
                           const size_t *edges,
                           size_t edge_count,
                           struct CwGraph **out_graph);

/**
 * Generated graph from a family spec such as `pathpower:n=5,k=2` or
 * `product:cycle:n=5,cycle:n=5`.
 */
enum CwStatus cw_graph_generate(const char *spec, struct CwGraph **out_graph);

/**
 * Parses PACE `.gr` text.
 */
enum CwStatus cw_graph_read_gr(const char *gr, struct CwGraph **out_graph);

enum CwStatus cw_graph_write_gr(const struct CwGraph *g, char **out_text);

void cw_graph_free(struct CwGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 */
size_t cw_graph_vertex_count(const struct CwGraph *g);

/**
 * Edge count, or 0 for a null handle.
 */
size_t cw_graph_edge_count(const struct CwGraph *g);

/**
 * `G □ H`, vertex `(v, w)` at `v * |V(H)| + w`.
 */
enum CwStatus cw_cartesian_product(const struct CwGraph *g,
                                   const struct CwGraph *h,
                                   struct CwGraph **out_graph);

enum CwStatus cw_vertex_connectivity(const struct CwGraph *g, size_t *out_kappa);

/**
 * `k(n - 2k + 2) - 1`; `out_vacuous` is set when `n <= 2k - 2`.
 */
enum CwStatus cw_theorem_bound(size_t k, size_t n, int64_t *out_value, bool *out_vacuous);

/**
 * Exact treewidth. `ceiling` 0 uses the default; `time_ms` 0 means no time
 * limit. `out_td` may be null.
 */
enum CwStatus cw_exact_treewidth(const struct CwGraph *g,
                                 size_t ceiling,
                                 uint64_t time_ms,
                                 size_t *out_width,
                                 struct CwDecomposition **out_td);

/**
 * Greedy elimination upper bound. `out_td` may be null.
 */
enum CwStatus cw_heuristic_treewidth(const struct CwGraph *g,
                                     enum CwStrategy strategy,
                                     size_t *out_width,
                                     struct CwDecomposition **out_td);

void cw_decomposition_free(struct CwDecomposition *td);

enum CwStatus cw_decomposition_width(const struct CwDecomposition *td, size_t *out_width);

/**
 * Sets `out_valid` and, when `out_violations` is non-null, a newline
 * separated list of violations (empty when valid).
 */
enum CwStatus cw_decomposition_validate(const struct CwDecomposition *td,
                                        const struct CwGraph *g,
                                        bool *out_valid,
                                        char **out_violations);

/**
 * PACE `.td` text.
 */
enum CwStatus cw_decomposition_write_td(const struct CwDecomposition *td, char **out_text);

/**
 * Order of the bramble on `g` whose element `i` is
 * `vertices[offsets[i] .. offsets[i + 1]]`; `offsets` has `element_count + 1`
 * entries. `out_certified` is false when the budget ran out, in which case
 * `out_order` is a proven lower bound.
 */
enum CwStatus cw_bramble_order(const struct CwGraph *g,
                               const size_t *offsets,
                               const size_t *vertices,
                               size_t element_count,
                               uint64_t time_ms,
                               size_t *out_order,
                               bool *out_certified);

/**
 * Runs the refuter on `G □ H` for candidate set `candidate`. Sets
 * `out_avoiding` when an element avoiding the set was found, and writes the
 * transcript to `out_transcript` when that is non-null.
 */
enum CwStatus cw_refute(const struct CwGraph *g,
                        const struct CwGraph *h,
                        size_t k,
                        const size_t *candidate,
                        size_t candidate_len,
                        bool *out_avoiding,
                        char **out_transcript);

/**
 * Re-checks a certificate (bramble, `.td`, or refutation transcript)
 * against `g`. `out_messages` may be null.
 */
enum CwStatus cw_verify_certificate(const char *certificate,
                                    const struct CwGraph *g,
                                    uint64_t time_ms,
                                    bool *out_valid,
                                    char **out_messages);

/**
 * Bounds report for a `product:` spec as JSON. `k` 0 picks the factor
 * connectivity; `seed` is used only if candidate sets must be sampled and
 * `has_seed` is true; `time_ms` 0 means no time limit.
 */
enum CwStatus cw_product_bounds_json(const char *spec,
                                     size_t k,
                                     bool has_seed,
                                     uint64_t seed,
                                     uint64_t time_ms,
                                     char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARTWIDTH_H */
