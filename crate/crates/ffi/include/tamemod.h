#ifndef TAMEMOD_H
#define TAMEMOD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four match the exit codes of the `tamemod`
 * binary.
 */
typedef enum TmStatus {
  TM_STATUS_OK = 0,
  /**
   * A certificate was rejected or a sampled property failed.
   */
  TM_STATUS_REJECTED = 1,
  /**
   * Malformed input, unknown ids or mismatched shapes.
   */
  TM_STATUS_INVALID = 2,
  /**
   * A resource cap was exceeded.
   */
  TM_STATUS_RESOURCE = 3,
  /**
   * A required pointer argument was null.
   */
  TM_STATUS_NULL_ARGUMENT = 4,
  /**
   * The engine panicked; the handle should be treated as unusable.
   */
  TM_STATUS_PANIC = 5,
} TmStatus;

/**
 * A parsed and resolved workspace.
 */
typedef struct TmWorkspace TmWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a workspace document. On success `*out` receives a handle to be
 * released with [`tm_workspace_free`].
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum TmStatus tm_workspace_parse(const char *json, struct TmWorkspace **out);

/**
 * Releases a workspace. Null is ignored.
 *
 * # Safety
 * `ws` must come from [`tm_workspace_parse`] and not be used afterwards.
 */
void tm_workspace_free(struct TmWorkspace *ws);

/**
 * Computes `F_degree` of a module as JSON, with its Hilbert table up to
 * `*weight_bound`, or the default bound when `weight_bound` is null.
 *
 * # Safety
 * Pointers must be valid; `module` nul-terminated.
 */
enum TmStatus tm_functor(const struct TmWorkspace *ws,
                         const char *module,
                         uint8_t degree,
                         const int64_t *weight_bound,
                         char **out_json);

/**
 * Verifies a certificate under the workspace predicate. Returns
 * [`TmStatus::Rejected`] with the failing node path in
 * [`tm_last_error`] when a node fails.
 *
 * # Safety
 * Pointers must be valid; `cert` nul-terminated.
 */
enum TmStatus tm_cert_verify(const struct TmWorkspace *ws, const char *cert);

/**
 * Writes the type level of a certificate to `*level`.
 *
 * # Safety
 * Pointers must be valid; `cert` nul-terminated.
 */
enum TmStatus tm_cert_level(const struct TmWorkspace *ws, const char *cert, size_t *level);

/**
 * Transforms a certificate for `F_degree` and returns the verified result
 * as a workspace document.
 *
 * # Safety
 * Pointers must be valid; `cert` nul-terminated.
 */
enum TmStatus tm_cert_transform(const struct TmWorkspace *ws,
                                const char *cert,
                                uint8_t degree,
                                char **out_json);

/**
 * Runs the property harness. The report is written even when a property
 * fails, in which case [`TmStatus::Rejected`] is returned. `base_pred` may
 * be null to reuse `pred`.
 *
 * # Safety
 * `pred` must be nul-terminated, `base_pred` null or nul-terminated, and
 * `out_json` valid.
 */
enum TmStatus tm_harness(size_t edges,
                         const char *pred,
                         const char *base_pred,
                         uint64_t samples,
                         uint64_t seed,
                         size_t jobs,
                         char **out_json);

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *tm_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tm_string_free(char *s);

/**
 * Library version, static storage.
 */
const char *tm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAMEMOD_H */
