#ifndef BRAIDKIT_H
#define BRAIDKIT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by all fallible functions.
 */
typedef enum BkStatus {
  BK_STATUS_OK = 0,
  BK_STATUS_NULL_POINTER = 1,
  BK_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed text, out-of-range index or bad JSON.
   */
  BK_STATUS_INVALID_INPUT = 3,
  BK_STATUS_STRAND_MISMATCH = 4,
  /**
   * A map failed validation.
   */
  BK_STATUS_INVALID_MAP = 5,
  /**
   * An internal error; the library caught a panic.
   */
  BK_STATUS_INTERNAL = 6,
} BkStatus;

/**
 * Opaque braid word.
 */
typedef struct BkBraid BkBraid;

/**
 * Opaque factorization (ordered tuple of braid words).
 */
typedef struct BkFactorization BkFactorization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call on the same thread; never null.
 */
const char *bk_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *bk_version(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void bk_string_free(char *s);

/**
 * Parses whitespace-separated signed generator indices ("1 -2 1").
 *
 * # Safety
 * `text_in` must be a nul-terminated string; `out` must be writable.
 */
enum BkStatus bk_braid_parse(uint32_t strands_n, const char *text_in, struct BkBraid **out);

/**
 * # Safety
 * `b` must come from this library and not be freed twice.
 */
void bk_braid_free(struct BkBraid *b);

/**
 * Strand count, or 0 for a null handle.
 *
 * # Safety
 * `b` must be null or a live handle.
 */
uint32_t bk_braid_strands(const struct BkBraid *b);

/**
 * Number of letters, or 0 for a null handle.
 *
 * # Safety
 * `b` must be null or a live handle.
 */
size_t bk_braid_len(const struct BkBraid *b);

/**
 * The word in text form.
 *
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum BkStatus bk_braid_to_string(const struct BkBraid *b, char **out);

/**
 * Canonical normal-form key; equal braids have equal keys.
 *
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum BkStatus bk_braid_normal_form_key(const struct BkBraid *b, char **out);

/**
 * Writes whether `a` and `b` are the same braid.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum BkStatus bk_braid_equal(const struct BkBraid *a, const struct BkBraid *b, bool *out);

/**
 * The product `a b` (letters of `a` first).
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum BkStatus bk_braid_compose(const struct BkBraid *a,
                               const struct BkBraid *b,
                               struct BkBraid **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum BkStatus bk_braid_inverse(const struct BkBraid *a, struct BkBraid **out);

/**
 * The conjugate `g⁻¹ x g`.
 *
 * # Safety
 * `x`, `g` must be live handles; `out` must be writable.
 */
enum BkStatus bk_braid_conjugate(const struct BkBraid *x,
                                 const struct BkBraid *g,
                                 struct BkBraid **out);

/**
 * Expands a band word ("3:1 2:1") into Artin generators.
 *
 * # Safety
 * `text_in` must be a nul-terminated string; `out` must be writable.
 */
enum BkStatus bk_band_expand(uint32_t strands_n, const char *text_in, struct BkBraid **out);

/**
 * Reads `{"strands": n, "factors": ["1 2", ...]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum BkStatus bk_factorization_from_json(const char *json, struct BkFactorization **out);

/**
 * The standard factorization of the full twist, conjugated by `b` when `b`
 * is not null.
 *
 * # Safety
 * `b` must be null or a live handle; `out` must be writable.
 */
enum BkStatus bk_delta2_factorization(uint32_t strands_n,
                                      const struct BkBraid *b,
                                      struct BkFactorization **out);

/**
 * # Safety
 * `f` must come from this library and not be freed twice.
 */
void bk_factorization_free(struct BkFactorization *f);

/**
 * Number of factors, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t bk_factorization_len(const struct BkFactorization *f);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum BkStatus bk_factorization_to_json(const struct BkFactorization *f, char **out);

/**
 * Canonical key of the whole tuple, compared position by position.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum BkStatus bk_factorization_tuple_key(const struct BkFactorization *f, char **out);

/**
 * Applies Hurwitz moves in order: `k` is `R_k`, `-k` is its inverse.
 *
 * # Safety
 * `f` must be a live handle; `moves` must point to `count` integers (may be
 * null when `count` is 0); `out` must be writable.
 */
enum BkStatus bk_factorization_apply_moves(const struct BkFactorization *f,
                                           const int64_t *moves,
                                           size_t count,
                                           struct BkFactorization **out);

/**
 * Searches for Hurwitz moves from `source` to `target` and writes a JSON
 * report: `{"result":"found","moves":[...]}`, `{"result":"not_found",
 * "orbit_closed":bool}` or `{"result":"different_products"}`.
 *
 * # Safety
 * `source`, `target` must be live handles; `out` must be writable.
 */
enum BkStatus bk_find_path(const struct BkFactorization *source,
                           const struct BkFactorization *target,
                           size_t depth_cap,
                           size_t size_cap,
                           char **out);

/**
 * Checks a map given as JSON and writes the verdict as JSON.
 *
 * # Safety
 * `map_json` must be a nul-terminated string; `out` must be writable.
 */
enum BkStatus bk_semiframe_check_json(const char *map_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRAIDKIT_H */
