#ifndef LATPAIR_H
#define LATPAIR_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_NULL_POINTER = 1,
  LP_STATUS_INVALID_UTF8 = 2,
  LP_STATUS_INVALID_INPUT = 3,
  LP_STATUS_ASSUMPTION_VIOLATED = 4,
  LP_STATUS_UNSUPPORTED = 5,
  LP_STATUS_INTERNAL = 6,
  LP_STATUS_PANIC = 7,
} LpStatus;

/**
 * Opaque lattice pair `(Λ, Λ′, F, G)`.
 */
typedef struct LpPair LpPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses lattice data in the JSON schema of the library into a new handle.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be a valid pointer.
 */
enum LpStatus lp_pair_from_json(const char *json, struct LpPair **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `pair` must come from [`lp_pair_from_json`] and not be used afterwards.
 */
void lp_pair_free(struct LpPair *pair);

/**
 * Rank of the lattice, or 0 for a null handle.
 *
 * # Safety
 * `pair` must be null or a live handle.
 */
size_t lp_pair_dim(const struct LpPair *pair);

/**
 * Type label such as `"1.2B:3,1"`.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_classify(const struct LpPair *pair, char **out);

/**
 * JSON object `{"T", "B", "P", "r", "d", "c"}`.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_invariants_json(const struct LpPair *pair, char **out);

/**
 * Tamagawa number over an `(e, f)` extension, as a decimal string. Needs a pair with a pairing.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_tamagawa(const struct LpPair *pair, uint64_t e, uint64_t f, char **out);

/**
 * Curve report for `{"p": p, "f": [...]}`; `e = f = 0` skips the extension entry.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum LpStatus lp_genus2_json(const char *json, uint64_t e, uint64_t f, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void lp_string_free(char *s);

/**
 * Message for the last failure on this thread; empty after a success.
 * The pointer stays valid until the next call into the library on the same thread.
 */
const char *lp_last_error(void);

/**
 * Library version, a static string.
 */
const char *lp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATPAIR_H */
