/* C interface of the scottq graph-state entanglement toolkit. */

#ifndef SCOTTQ_H
#define SCOTTQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum ScottqStatus {
  // Success.
  SCOTTQ_STATUS_OK = 0,
  // Malformed input: syntax, vertex range, size limits.
  SCOTTQ_STATUS_INPUT_ERROR = 1,
  // A subset size beyond floor(n/2) was rejected; pass
  // `allow_complement` to evaluate it anyway.
  SCOTTQ_STATUS_WINDOW_REJECTION = 2,
  // The dense and exact engines disagreed beyond tolerance.
  SCOTTQ_STATUS_ENGINE_DISAGREEMENT = 3,
  // A required pointer argument was null.
  SCOTTQ_STATUS_NULL_POINTER = 4,
  // A string argument was not valid UTF-8.
  SCOTTQ_STATUS_UTF8_ERROR = 5,
  // An internal panic was caught at the boundary.
  SCOTTQ_STATUS_PANIC = 6,
} ScottqStatus;

// Purity engine selector for measure evaluations.
typedef enum ScottqEngine {
  // Full state vector, numerical purities.
  SCOTTQ_ENGINE_DENSE = 0,
  // Binary-rank arithmetic, exact purities.
  SCOTTQ_ENGINE_STABILIZER = 1,
  // Both, cross-checked against each other.
  SCOTTQ_ENGINE_BOTH = 2,
} ScottqEngine;

// An undirected simple graph. Opaque; create via the parse functions,
// release via `scottq_graph_free`.
typedef struct ScottqGraph ScottqGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse an edge list of the form `"n: a-b, c-d"` with 1-based vertex
// labels (`"3:"` alone is the edgeless graph).
//
// # Safety
// `text` must be NUL-terminated; `out` must be a valid pointer.
enum ScottqStatus scottq_graph_parse_edge_list(const char *text, struct ScottqGraph **out);

// Parse a graph6 string (optionally prefixed with the `>>graph6<<`
// header).
//
// # Safety
// `text` must be NUL-terminated; `out` must be a valid pointer.
enum ScottqStatus scottq_graph_parse_graph6(const char *text, struct ScottqGraph **out);

// Render the graph in graph6 form. The string goes to
// `scottq_string_free`.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum ScottqStatus scottq_graph_to_graph6(const struct ScottqGraph *g, char **out);

// Release a graph handle. Null is a no-op.
//
// # Safety
// `g` must have come from this library and not been freed already.
void scottq_graph_free(struct ScottqGraph *g);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `g` must be a live handle or null.
size_t scottq_graph_vertex_count(const struct ScottqGraph *g);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `g` must be a live handle or null.
size_t scottq_graph_edge_count(const struct ScottqGraph *g);

// Whether the graph is connected. False for a null handle.
//
// # Safety
// `g` must be a live handle or null.
bool scottq_graph_is_connected(const struct ScottqGraph *g);

// Local complementation at 0-based vertex `v`, as a new handle.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum ScottqStatus scottq_graph_local_complement(const struct ScottqGraph *g,
                                                size_t v,
                                                struct ScottqGraph **out);

// Binary rank of the adjacency submatrix between `subset` and its
// complement. The graph-state marginal purity of the subset is
// `2^-rank`.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum ScottqStatus scottq_cut_rank(const struct ScottqGraph *g, uint64_t subset, size_t *out);

// Exact marginal purity of the subset in the graph's state, reported
// as the exponent `k` of `purity = 2^-k`.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum ScottqStatus scottq_purity_exponent(const struct ScottqGraph *g,
                                         uint64_t subset,
                                         uint32_t *out);

// Marginal purity of the subset computed on the dense state vector.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum ScottqStatus scottq_purity_dense(const struct ScottqGraph *g, uint64_t subset, double *out);

// Whether every marginal of at most half the qubits is maximally
// mixed in the graph's state.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum ScottqStatus scottq_is_ame(const struct ScottqGraph *g, bool *out);

// The entanglement measure Q_m of the graph's state. Sizes above
// floor(n/2) are rejected unless `allow_complement` is set.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum ScottqStatus scottq_qm(const struct ScottqGraph *g,
                            size_t m,
                            bool allow_complement,
                            enum ScottqEngine engine,
                            double *out);

// Full measure report as a JSON document (the same schema the CLI
// prints). `ms` may be null with `ms_len` 0 to request every size up
// to floor(n/2). The string goes to `scottq_string_free`.
//
// # Safety
// `g` must be a live handle; `ms` must point to `ms_len` readable
// entries or be null; `out` must be a valid pointer.
enum ScottqStatus scottq_qm_report_json(const struct ScottqGraph *g,
                                        const size_t *ms,
                                        size_t ms_len,
                                        bool allow_complement,
                                        enum ScottqEngine engine,
                                        char **out);

// graph6 strings of every n-vertex graph (one per isomorphism class)
// whose state has all small marginals maximally mixed, as a JSON
// array. The string goes to `scottq_string_free`.
//
// # Safety
// `out` must be a valid pointer.
enum ScottqStatus scottq_ame_search_json(size_t n, char **out);

// Release a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must have come from this library and not been freed already.
void scottq_string_free(char *s);

// Library version as a static string; do not free.
const char *scottq_version(void);

// Description of the most recent failure on this thread, or null if
// none. Valid until the next library call on the same thread; do not
// free.
const char *scottq_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCOTTQ_H */
