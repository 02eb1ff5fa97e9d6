#ifndef SKEWHEYTING_H
#define SKEWHEYTING_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. The first four values match the exit
 * codes of the command-line tool.
 */
typedef enum SkhStatus {
  SKH_STATUS_OK = 0,
  SKH_STATUS_PROPERTY_FAILS = 1,
  SKH_STATUS_PARSE_ERROR = 2,
  SKH_STATUS_INCONSISTENT = 3,
  SKH_STATUS_NULL_POINTER = 4,
  SKH_STATUS_INVALID_ARGUMENT = 5,
  SKH_STATUS_PANIC = 6,
} SkhStatus;

typedef enum SkhFormat {
  SKH_FORMAT_TEXT = 0,
  SKH_FORMAT_MACHINE = 1,
} SkhFormat;

/**
 * Opaque handle to a finite algebra.
 */
typedef struct SkhAlgebra SkhAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last nonzero status on this thread, or null. Valid until
 * the next call into this library from the same thread.
 */
const char *skh_last_error_message(void);

/**
 * Static NUL-terminated version string.
 */
const char *skh_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void skh_string_free(char *s);

/**
 * Parses the algebra text format.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` writable.
 */
enum SkhStatus skh_algebra_parse(const char *text, struct SkhAlgebra **out);

/**
 * # Safety
 * `handle` must be null or a handle from this library not yet freed.
 */
void skh_algebra_free(struct SkhAlgebra *handle);

/**
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum SkhStatus skh_algebra_size(const struct SkhAlgebra *handle, size_t *out);

/**
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum SkhStatus skh_algebra_meet(const struct SkhAlgebra *handle, size_t x, size_t y, size_t *out);

/**
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum SkhStatus skh_algebra_join(const struct SkhAlgebra *handle, size_t x, size_t y, size_t *out);

/**
 * `InvalidArgument` when the algebra carries no arrow.
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum SkhStatus skh_algebra_arrow(const struct SkhAlgebra *handle, size_t x, size_t y, size_t *out);

/**
 * Writes the name of element `e`, to be freed with [`skh_string_free`].
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum SkhStatus skh_algebra_name(const struct SkhAlgebra *handle, size_t e, char **out);

/**
 * Renders the algebra in the text format the parser reads.
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum SkhStatus skh_algebra_to_text(const struct SkhAlgebra *handle, char **out);

/**
 * Partial functions from an `x`-set to a `y`-set.
 *
 * # Safety
 * `out` must be writable.
 */
enum SkhStatus skh_model_partial_functions(size_t x, size_t y, struct SkhAlgebra **out);

/**
 * A copy of the algebra carrying its derived arrow. `PropertyFails` when no
 * arrow exists; nothing is written then.
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum SkhStatus skh_algebra_derive_arrow(const struct SkhAlgebra *handle, struct SkhAlgebra **out);

/**
 * Runs every applicable theorem check and writes the rendered report. The
 * status follows the verdict; the report is written in every case.
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum SkhStatus skh_algebra_verify(const struct SkhAlgebra *handle,
                                  enum SkhFormat format,
                                  char **out);

/**
 * Classifies the algebra. `require` is null or a comma-separated list of
 * property names that decide the verdict; null means `skew-lattice`.
 *
 * # Safety
 * `handle` must be a live handle, `require` null or a NUL-terminated
 * string, and `out` writable.
 */
enum SkhStatus skh_algebra_check(const struct SkhAlgebra *handle,
                                 const char *require,
                                 enum SkhFormat format,
                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEWHEYTING_H */
