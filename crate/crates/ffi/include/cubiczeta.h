#ifndef CUBICZETA_H
#define CUBICZETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CzStatus {
  CZ_STATUS_OK = 0,
  CZ_STATUS_NULL_ARGUMENT = 1,
  CZ_STATUS_INVALID_UTF8 = 2,
  CZ_STATUS_INVALID_FIELD = 3,
  CZ_STATUS_INCOMPATIBLE_FIELDS = 4,
  CZ_STATUS_ZERO_POLYNOMIAL = 5,
  CZ_STATUS_ZERO_ELEMENT = 6,
  CZ_STATUS_PARSE = 7,
  CZ_STATUS_BUDGET = 8,
  CZ_STATUS_NOT_EXACT = 9,
  CZ_STATUS_PRECONDITION = 10,
  CZ_STATUS_VERIFICATION = 11,
  CZ_STATUS_OUT_OF_RANGE = 12,
  CZ_STATUS_PANIC = 13,
} CzStatus;

/**
 * Point counts of a threefold or BSD on a line of it.
 */
typedef enum CzVia {
  CZ_VIA_COUNT = 0,
  CZ_VIA_BSD = 1,
} CzVia;

typedef struct CzCubic CzCubic;

typedef struct CzField CzField;

typedef struct CzWeil CzWeil;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *cz_last_error(void);

/**
 * Library version as a static string.
 */
const char *cz_version(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void cz_string_free(char *s);

/**
 * `F_{p^r}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CzStatus cz_field_new(uint64_t p, uint32_t r, struct CzField **out);

/**
 * # Safety
 * `k` must come from [`cz_field_new`] or be null.
 */
void cz_field_free(struct CzField *k);

/**
 * # Safety
 * `k` must be a live field handle.
 */
uint64_t cz_field_order(const struct CzField *k);

/**
 * Parses a cubic in any supported text format. `field` may be null when the text names one.
 *
 * # Safety
 * `src` must be a nul-terminated string, `field` null or live, `out` writable.
 */
enum CzStatus cz_cubic_parse(const char *src, const struct CzField *field, struct CzCubic **out);

/**
 * The Fermat cubic in `n + 2` variables.
 *
 * # Safety
 * `field` must be live, `out` writable.
 */
enum CzStatus cz_cubic_fermat(const struct CzField *field, uint32_t n, struct CzCubic **out);

/**
 * # Safety
 * `x` must come from this library or be null.
 */
void cz_cubic_free(struct CzCubic *x);

/**
 * Dimension `n` of the hypersurface, or 0 for a null handle.
 *
 * # Safety
 * `x` must be live or null.
 */
uint32_t cz_cubic_dimension(const struct CzCubic *x);

/**
 * The cubic as JSON.
 *
 * # Safety
 * `x` must be live, `out` writable.
 */
enum CzStatus cz_cubic_to_json(const struct CzCubic *x, char **out);

/**
 * `#X(F_{q^r})`.
 *
 * # Safety
 * `x` must be live, `out` writable.
 */
enum CzStatus cz_count_points(const struct CzCubic *x, uint32_t r, uint64_t *out);

/**
 * Number of lines defined over `F_{q^k}`.
 *
 * # Safety
 * `x` must be live, `out` writable.
 */
enum CzStatus cz_count_lines(const struct CzCubic *x, uint32_t k, uint64_t *out);

/**
 * Writes 1 if smooth over the algebraic closure, else 0.
 *
 * # Safety
 * `x` must be live, `out` writable.
 */
enum CzStatus cz_is_smooth(const struct CzCubic *x, int32_t *out);

/**
 * `P_1(F(X), T)` of a smooth cubic threefold.
 *
 * # Safety
 * `x` must be live, `out` writable.
 */
enum CzStatus cz_threefold_p1(const struct CzCubic *x, enum CzVia via, struct CzWeil **out);

/**
 * # Safety
 * `p` must come from this library or be null.
 */
void cz_weil_free(struct CzWeil *p);

/**
 * # Safety
 * `p` must be live or null.
 */
uint32_t cz_weil_degree(const struct CzWeil *p);

/**
 * Coefficient of `T^i`; [`CzStatus::OutOfRange`] if it does not fit in 64 bits.
 *
 * # Safety
 * `p` must be live, `out` writable.
 */
enum CzStatus cz_weil_coeff(const struct CzWeil *p, uint32_t i, int64_t *out);

/**
 * Writes 1 if the functional equation and root moduli check out, else 0.
 *
 * # Safety
 * `p` must be live, `out` writable.
 */
enum CzStatus cz_weil_verify(const struct CzWeil *p, int32_t *out);

/**
 * Factored zeta function of the surface of lines, with Picard number, classification and
 * `D_q`, as JSON.
 *
 * # Safety
 * `p1` must be live, `out` writable.
 */
enum CzStatus cz_fano_zeta_json(const struct CzWeil *p1, char **out);

/**
 * Smallest and largest possible numbers of `F_q`-lines on a smooth cubic threefold.
 *
 * # Safety
 * `min_lines` and `max_lines` must be writable.
 */
enum CzStatus cz_threefold_line_bounds(uint64_t q, uint64_t *min_lines, uint64_t *max_lines);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBICZETA_H */
