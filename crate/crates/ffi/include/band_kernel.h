#ifndef BAND_KERNEL_H
#define BAND_KERNEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BkStatus {
  BK_STATUS_OK = 0,
  BK_STATUS_CHECK_FAILED = 1,
  BK_STATUS_INVALID_INPUT = 2,
  BK_STATUS_NULL_POINTER = 3,
  BK_STATUS_PANIC = 4,
  BK_STATUS_UNSUPPORTED = 5,
} BkStatus;

/**
 * A band from the zoo, selected by id.
 */
typedef struct BkBand BkBand;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or NULL. Free it with
 * [`bk_string_free`].
 */
char *bk_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void bk_string_free(char *s);

/**
 * Library version, a static string.
 */
const char *bk_version(void);

/**
 * Parses a band id such as `sign`, `trop`, `ring:Z/6` or `field:Q-padic:3`.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BkStatus bk_band_new(const char *id, struct BkBand **out);

/**
 * # Safety
 * `band` must be NULL or a handle from [`bk_band_new`], freed once.
 */
void bk_band_free(struct BkBand *band);

/**
 * Whether the comma-separated formal sum is null.
 *
 * # Safety
 * Pointers must be valid; `sum` NUL-terminated.
 */
enum BkStatus bk_band_is_null(const struct BkBand *band, const char *sum, bool *out);

/**
 * The additive inverse of `elem`, as a string.
 *
 * # Safety
 * Pointers must be valid; `elem` NUL-terminated.
 */
enum BkStatus bk_band_neg(const struct BkBand *band, const char *elem, char **out);

/**
 * Runs the axiom suite and writes the JSON report. Returns `CheckFailed`
 * with the report still written when an axiom fails. `max_len` 0 means the
 * default.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BkStatus bk_check_axioms_json(const struct BkBand *band,
                                   size_t samples,
                                   size_t max_len,
                                   uint64_t seed,
                                   char **out);

/**
 * Spec of the band as JSON. `ring:Z` is truncated to primes at most
 * `prime_bound`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BkStatus bk_spec_json(const struct BkBand *band, uint64_t prime_bound, char **out);

/**
 * Bend condition of `poly` in the comma-separated `vars` at the nonnegative
 * point `point` (comma-separated rationals).
 *
 * # Safety
 * Pointers must be valid and NUL-terminated.
 */
enum BkStatus bk_trop_is_point(const char *field_id,
                               const char *vars,
                               const char *poly,
                               const char *point,
                               bool *out);

/**
 * Plane tropical curve of a polynomial in x and y, as JSON.
 *
 * # Safety
 * Pointers must be valid and NUL-terminated.
 */
enum BkStatus bk_trop_curve_json(const char *field_id, const char *poly, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BAND_KERNEL_H */
