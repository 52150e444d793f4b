#ifndef SNCX_H
#define SNCX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum SncxStatus {
  SNCX_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SNCX_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  SNCX_STATUS_INVALID_UTF8 = 2,
  /**
   * The input could not be parsed or violates its format.
   */
  SNCX_STATUS_INVALID_INPUT = 3,
  /**
   * The input was well formed but the computation was rejected.
   */
  SNCX_STATUS_FAILED = 4,
  /**
   * A caller-provided buffer is too small; the needed length is reported.
   */
  SNCX_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * An internal error was caught at the boundary.
   */
  SNCX_STATUS_PANIC = 6,
} SncxStatus;

/**
 * Opaque handle to a complex.
 */
typedef struct SncxComplex SncxComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library as a static NUL-terminated string.
 */
const char *sncx_version(void);

/**
 * Message of the last failed call on this thread; empty after success.
 * Valid until the next call on this thread.
 */
const char *sncx_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sncx_string_free(char *s);

/**
 * Releases a complex. Null is ignored.
 *
 * # Safety
 * `c` must come from this library and not have been freed.
 */
void sncx_complex_free(struct SncxComplex *c);

/**
 * Parses a complex document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SncxStatus sncx_complex_from_json(const char *json, struct SncxComplex **out);

/**
 * Dual complex of a strata description.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SncxStatus sncx_dual_complex(const char *json, struct SncxComplex **out);

/**
 * Link of the origin in a fan given as `{"rays", "cones"}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SncxStatus sncx_toric_link(const char *json, struct SncxComplex **out);

/**
 * Boundary complex of a nondegenerate hypersurface in a torus with the
 * given Newton polytope.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SncxStatus sncx_torus_boundary(const char *json, struct SncxComplex **out);

/**
 * Runs a blowup script on `c`, writing the resulting complex to `out` and,
 * when `log` is not null, the per-step log as JSON.
 *
 * # Safety
 * `c` must be a live handle, `script` a NUL-terminated string and `out`
 * writable; `log` may be null.
 */
enum SncxStatus sncx_complex_blowup(const struct SncxComplex *c,
                                    const char *script,
                                    struct SncxComplex **out,
                                    char **log);

/**
 * Number of faces.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum SncxStatus sncx_complex_face_count(const struct SncxComplex *c, uintptr_t *out);

/**
 * Dimension, or -1 for the empty complex.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum SncxStatus sncx_complex_dim(const struct SncxComplex *c, int64_t *out);

/**
 * Copies the face counts by dimension into `buf`. `len` receives the
 * number of entries; when it exceeds `cap` nothing is copied and
 * `SNCX_STATUS_BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `c` must be a live handle, `len` writable and `buf` valid for `cap`
 * entries (it may be null when `cap` is 0).
 */
enum SncxStatus sncx_complex_f_vector(const struct SncxComplex *c,
                                      uintptr_t *buf,
                                      uintptr_t cap,
                                      uintptr_t *len);

/**
 * Betti number in `degree` (reduced when `reduced` is true).
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum SncxStatus sncx_complex_betti(const struct SncxComplex *c,
                                   bool reduced,
                                   int64_t degree,
                                   uintptr_t *out);

/**
 * Integral homology as JSON.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum SncxStatus sncx_complex_homology_json(const struct SncxComplex *c, bool reduced, char **out);

/**
 * Canonical complex document.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum SncxStatus sncx_complex_to_json(const struct SncxComplex *c, char **out);

/**
 * Wedge-of-spheres certificate for spheres of dimension `sphere_dim`, as
 * JSON with a `verdict` field.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum SncxStatus sncx_complex_certify_json(const struct SncxComplex *c,
                                          uintptr_t sphere_dim,
                                          char **out);

/**
 * Weight-zero report of the singularity with the given monomial support.
 * When `resolution` is not null it receives the resolution complex.
 *
 * # Safety
 * `support` must be a NUL-terminated string and `out` writable;
 * `resolution` may be null.
 */
enum SncxStatus sncx_newton_report_json(const char *support,
                                        char **out,
                                        struct SncxComplex **resolution);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SNCX_H */
