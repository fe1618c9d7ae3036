#ifndef SIGNED_BALANCE_H
#define SIGNED_BALANCE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SbStatus {
  SB_STATUS_OK = 0,
  SB_STATUS_NULL_POINTER = 1,
  SB_STATUS_INVALID_ARGUMENT = 2,
  SB_STATUS_PARSE_ERROR = 3,
  // The measure is undefined on this graph.
  SB_STATUS_UNDEFINED = 4,
  // A budget was exhausted before an exact answer was found.
  SB_STATUS_INFEASIBLE = 5,
  SB_STATUS_PANIC = 6,
} SbStatus;

// Opaque graph handle.
typedef struct SbGraph SbGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *sb_last_error_message(void);

// Builds a graph on nodes `0..n` from `m` edges `(us[i], vs[i], signs[i])`
// with signs `+1` or `-1`.
//
// # Safety
// `us`, `vs` and `signs` must each point to `m` readable elements (or may
// be null when `m == 0`); `out` must be writable.
enum SbStatus sb_graph_new(size_t n,
                           const size_t *us,
                           const size_t *vs,
                           const int32_t *signs,
                           size_t m,
                           struct SbGraph **out);

// Parses the whitespace edge-list format (`u v sign` per line).
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum SbStatus sb_graph_parse(const char *text, struct SbGraph **out);

// Releases a handle; null is ignored.
//
// # Safety
// `g` must come from this library and not be used afterwards.
void sb_graph_free(struct SbGraph *g);

// Node count, or 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t sb_graph_node_count(const struct SbGraph *g);

// Edge count, or 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t sb_graph_edge_count(const struct SbGraph *g);

// Negative edge count, or 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t sb_graph_negative_count(const struct SbGraph *g);

// Writes 1 to `out` if the graph is balanced, else 0.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum SbStatus sb_graph_is_balanced(const struct SbGraph *g, int32_t *out);

// Evaluates one measure by name (`D`, `C`, `C_rec`, `D3`, `T`, `W`, `A`,
// `F`, `Fprime`, `X`, `Y`, `Z`, `lambda`, `L`) with default budgets.
//
// # Safety
// `g` must be a live handle, `name` a nul-terminated string, `out` writable.
enum SbStatus sb_measure(const struct SbGraph *g, const char *name, double *out);

// Frustration index within a node-visit `budget` (0 selects the default).
// `lower` and `upper` receive the proven bounds; `exact` receives 1 when
// they meet. Returns `SB_STATUS_INFEASIBLE` (with the bounds filled in)
// when the search was cut short.
//
// # Safety
// `g` must be a live handle; `lower`, `upper` and `exact` writable.
enum SbStatus sb_frustration(const struct SbGraph *g,
                             uint64_t budget,
                             size_t *lower,
                             size_t *upper,
                             int32_t *exact);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGNED_BALANCE_H */
