#ifndef BS_EDT0L_H
#define BS_EDT0L_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BsStatus {
  BS_STATUS_OK = 0,
  BS_STATUS_NULL_POINTER = 1,
  BS_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed element, word, case or parameter.
   */
  BS_STATUS_INVALID_INPUT = 3,
  BS_STATUS_INVALID_SYSTEM = 4,
  /**
   * The generator could not produce a system for these parameters.
   */
  BS_STATUS_CONSTRUCTION = 5,
  BS_STATUS_IO = 6,
  BS_STATUS_PANIC = 7,
} BsStatus;

/**
 * Outcome of [`bs_verify`].
 */
typedef enum BsVerdict {
  BS_VERDICT_EQUAL = 0,
  BS_VERDICT_MISMATCH = 1,
  BS_VERDICT_INCONCLUSIVE = 3,
} BsVerdict;

/**
 * An element of BS(1,k).
 */
typedef struct BsElement BsElement;

/**
 * An ET0L system.
 */
typedef struct BsSystem BsSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *bs_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void bs_string_free(char *s);

/**
 * Parse an element written `(r,u)` or as a word over `a A b B`.
 *
 * # Safety
 * `input` is a NUL-terminated string; `out` is writable.
 */
enum BsStatus bs_element_parse(uint32_t k, const char *input, struct BsElement **out);

/**
 * # Safety
 * `e` is null or a handle from this library not yet freed.
 */
void bs_element_free(struct BsElement *e);

/**
 * `x y`.
 *
 * # Safety
 * `x`, `y` are live handles of the same k; `out` is writable.
 */
enum BsStatus bs_element_mul(const struct BsElement *x,
                             const struct BsElement *y,
                             struct BsElement **out);

/**
 * # Safety
 * `x` is a live handle; `out` is writable.
 */
enum BsStatus bs_element_inv(const struct BsElement *x, struct BsElement **out);

/**
 * # Safety
 * `x` is a live handle; `out` is writable.
 */
enum BsStatus bs_element_pow(const struct BsElement *x, int64_t n, struct BsElement **out);

/**
 * # Safety
 * `x`, `y` are live handles; `out` is writable.
 */
enum BsStatus bs_element_equal(const struct BsElement *x, const struct BsElement *y, bool *out);

/**
 * `(r,u)`.
 *
 * # Safety
 * `x` is a live handle; `out` is writable.
 */
enum BsStatus bs_element_to_string(const struct BsElement *x, char **out);

/**
 * The normal form word.
 *
 * # Safety
 * `x` is a live handle; `out` is writable.
 */
enum BsStatus bs_element_nf(const struct BsElement *x, char **out);

/**
 * The fractional form.
 *
 * # Safety
 * `x` is a live handle; `out` is writable.
 */
enum BsStatus bs_element_frac(const struct BsElement *x, char **out);

/**
 * Generate a named system. `r`, `g`, `h` and `sign_case` are used by the
 * systems that take them; strings may be null when unused.
 *
 * # Safety
 * String arguments are null or NUL-terminated; `out` is writable.
 */
enum BsStatus bs_system_build(const char *name,
                              uint32_t k,
                              int64_t r,
                              const char *g,
                              const char *h,
                              const char *sign_case,
                              struct BsSystem **out);

/**
 * # Safety
 * `json` is NUL-terminated; `out` is writable.
 */
enum BsStatus bs_system_from_json(const char *json, struct BsSystem **out);

/**
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum BsStatus bs_system_to_json(const struct BsSystem *s, char **out);

/**
 * # Safety
 * `s` is null or a handle from this library not yet freed.
 */
void bs_system_free(struct BsSystem *s);

/**
 * The words of length at most `max_len`, newline-separated in shortlex
 * order. `exhaustive` is false when the control depth cut the search.
 *
 * # Safety
 * `s` is a live handle; `out`, `exhaustive` are writable.
 */
enum BsStatus bs_system_enumerate(const struct BsSystem *s,
                                  size_t max_len,
                                  size_t depth,
                                  size_t slack,
                                  char **out,
                                  bool *exhaustive);

/**
 * Whether the system generates `word`. On a yes, `witness` receives the
 * control word (table ids separated by spaces), else null.
 *
 * # Safety
 * `s` is a live handle; `word` is NUL-terminated; out pointers are writable.
 */
enum BsStatus bs_system_membership(const struct BsSystem *s,
                                   const char *word,
                                   size_t depth,
                                   size_t slack,
                                   bool *member,
                                   char **witness);

/**
 * Compare a named system with the oracle; arguments as for
 * [`bs_system_build`]. Fractional triples use `|r| ≤ 1` and 3 digits.
 *
 * # Safety
 * String arguments are null or NUL-terminated; `out` is writable.
 */
enum BsStatus bs_verify(const char *name,
                        uint32_t k,
                        int64_t r,
                        const char *g,
                        const char *h,
                        const char *sign_case,
                        size_t max_len,
                        size_t depth,
                        size_t slack,
                        enum BsVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BS_EDT0L_H */
