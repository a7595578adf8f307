#ifndef CAYLEYISO_H
#define CAYLEYISO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum CayleyisoStatus {
  CAYLEYISO_STATUS_OK = 0,
  CAYLEYISO_STATUS_NULL_POINTER = 1,
  CAYLEYISO_STATUS_INVALID_UTF8 = 2,
  CAYLEYISO_STATUS_MALFORMED_INPUT = 3,
  CAYLEYISO_STATUS_PARSE = 4,
  CAYLEYISO_STATUS_BUDGET_EXCEEDED = 5,
  CAYLEYISO_STATUS_CAP_EXCEEDED = 6,
  CAYLEYISO_STATUS_UNKNOWN_CASE = 7,
  CAYLEYISO_STATUS_INTERNAL = 8,
  /**
   * Any other library error; see the last error message.
   */
  CAYLEYISO_STATUS_OTHER = 9,
  CAYLEYISO_STATUS_PANIC = 10,
} CayleyisoStatus;

/**
 * Which criterion [`cayleyiso_graph_test`] runs.
 */
typedef enum CayleyisoProperty {
  CAYLEYISO_PROPERTY_KMCI = 0,
  CAYLEYISO_PROPERTY_KMPCI = 1,
  /**
   * Bi-Cayley digraphs only.
   */
  CAYLEYISO_PROPERTY_TWO_PCI = 2,
  /**
   * Bi-Cayley digraphs only.
   */
  CAYLEYISO_PROPERTY_K2PCI = 3,
} CayleyisoProperty;

/**
 * An m-Cayley digraph.
 */
typedef struct CayleyisoGraph CayleyisoGraph;

/**
 * A finite group.
 */
typedef struct CayleyisoGroup CayleyisoGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call on the same thread.
 */
const char *cayleyiso_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void cayleyiso_string_free(char *s);

/**
 * Builds a group from a spec such as `Z4`, `D8`, `Q8xZ2` or `A5`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` valid for writes.
 */
enum CayleyisoStatus cayleyiso_group_new(const char *spec, struct CayleyisoGroup **out);

/**
 * # Safety
 * `g` must be null or a live group handle.
 */
void cayleyiso_group_free(struct CayleyisoGroup *g);

/**
 * Order of the group, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live group handle.
 */
size_t cayleyiso_group_order(const struct CayleyisoGroup *g);

/**
 * Builds `BCay(G, S)` from comma-separated element labels.
 *
 * # Safety
 * `g` must be a live group handle, `set` a NUL-terminated string and `out` valid for writes.
 */
enum CayleyisoStatus cayleyiso_bcay_new(const struct CayleyisoGroup *g,
                                        const char *set,
                                        struct CayleyisoGraph **out);

/**
 * Parses the digraph text form (`mcay m=.. group=..` then `S i j : labels`).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid for writes.
 */
enum CayleyisoStatus cayleyiso_graph_from_text(const char *text, struct CayleyisoGraph **out);

/**
 * # Safety
 * `d` must be null or a live digraph handle.
 */
void cayleyiso_graph_free(struct CayleyisoGraph *d);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live digraph handle.
 */
size_t cayleyiso_graph_vertex_count(const struct CayleyisoGraph *d);

/**
 * Order of the automorphism group of the uncolored digraph. Fails with
 * `CapExceeded` when it does not fit in 64 bits.
 *
 * # Safety
 * `d` must be a live digraph handle and `out` valid for writes.
 */
enum CayleyisoStatus cayleyiso_graph_aut_order(const struct CayleyisoGraph *d, uint64_t *out);

/**
 * # Safety
 * `d` must be a live digraph handle and `out` valid for writes.
 */
enum CayleyisoStatus cayleyiso_graph_is_vertex_transitive(const struct CayleyisoGraph *d,
                                                          bool *out);

/**
 * Runs one decision procedure. `out_result` receives the verdict; when
 * `out_json` is not null it receives the full verdict as a JSON string.
 *
 * # Safety
 * `d` must be a live digraph handle, `out_result` valid for writes and
 * `out_json` null or valid for writes.
 */
enum CayleyisoStatus cayleyiso_graph_test(const struct CayleyisoGraph *d,
                                          enum CayleyisoProperty property,
                                          bool *out_result,
                                          char **out_json);

/**
 * Runs a shipped case by id; `out_passed` tells whether every check matched.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out_passed` valid for writes.
 */
enum CayleyisoStatus cayleyiso_registry_case(const char *id, bool *out_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAYLEYISO_H */
