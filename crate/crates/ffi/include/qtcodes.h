#ifndef QTCODES_H
#define QTCODES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of the C API.
 */
typedef enum QtcStatus {
  QTC_STATUS_OK = 0,
  QTC_STATUS_NULL_POINTER = 1,
  QTC_STATUS_INVALID_UTF8 = 2,
  QTC_STATUS_PARSE = 3,
  QTC_STATUS_INVALID_SPEC = 4,
  QTC_STATUS_BUDGET = 5,
  QTC_STATUS_INTERNAL = 6,
  QTC_STATUS_PANIC = 7,
} QtcStatus;

/**
 * Opaque handle to a validated code and its algebraic structure.
 */
typedef struct QtcCode QtcCode;

/**
 * A minimum distance; `finite == false` means the code is zero.
 */
typedef struct QtcDistance {
  bool finite;
  uint32_t value;
} QtcDistance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a code from a NUL-terminated JSON document.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum QtcStatus qtc_code_from_json(const char *json, struct QtcCode **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `code` must come from `qtc_code_from_json` and not be used afterwards.
 */
void qtc_code_free(struct QtcCode *code);

/**
 * Dimension of the code over its base field.
 *
 * # Safety
 * `code` and `out` must be valid pointers.
 */
enum QtcStatus qtc_code_dimension(const struct QtcCode *code, size_t *out);

/**
 * Exact minimum distance. A nonzero `budget` limits both the codewords
 * enumerated and the column subsets ranked; `0` selects the defaults.
 *
 * # Safety
 * `code` and `out` must be valid pointers.
 */
enum QtcStatus qtc_code_min_distance(const struct QtcCode *code,
                                     uint64_t budget,
                                     struct QtcDistance *out);

/**
 * Structure report (Groebner matrix, eigenvalues, eigencodes) as JSON.
 *
 * # Safety
 * `code` and `out` must be valid pointers.
 */
enum QtcStatus qtc_code_analyze_json(const struct QtcCode *code, char **out);

/**
 * Bound comparison with up to `s` terms in the generalized bound, as JSON.
 * `budget` is as for `qtc_code_min_distance`.
 *
 * The report is written even when a computation hit a budget; the status
 * is then `QTC_STATUS_BUDGET`.
 *
 * # Safety
 * `code` and `out` must be valid pointers.
 */
enum QtcStatus qtc_code_bounds_json(const struct QtcCode *code,
                                    uint32_t s,
                                    uint64_t budget,
                                    char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qtc_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on the same thread.
 */
const char *qtc_last_error(void);

/**
 * Library version as a static C string.
 */
const char *qtc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTCODES_H */
