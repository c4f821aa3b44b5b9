#ifndef LG_ORBIFOLD_H
#define LG_ORBIFOLD_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LgStatus {
  LG_STATUS_OK = 0,
  LG_STATUS_NULL_ARGUMENT = 1,
  LG_STATUS_INVALID_UTF8 = 2,
  LG_STATUS_PARSE_ERROR = 3,
  LG_STATUS_INVALID_PROBLEM = 4,
  LG_STATUS_GROUP_ERROR = 5,
  LG_STATUS_COMPUTE_ERROR = 6,
  LG_STATUS_NOT_FOUND = 7,
  LG_STATUS_PANIC = 8,
} LgStatus;

/**
 * A polynomial with its symmetry group generators.
 */
typedef struct LgProblem LgProblem;

/**
 * The outcome of a Poincaré polynomial computation.
 */
typedef struct LgResult LgResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a success.
 * The pointer stays valid until the next library call on this thread.
 */
const char *lg_last_error(void);

/**
 * Parses a problem file held in `text`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LgStatus lg_problem_parse(const char *text, struct LgProblem **out);

/**
 * Loads a built-in problem such as `quintic-j` or `an-6-2`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LgStatus lg_problem_preset(const char *name, struct LgProblem **out);

/**
 * # Safety
 * `problem` must come from this library and not be used afterwards.
 */
void lg_problem_free(struct LgProblem *problem);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `problem` must be null or a live handle.
 */
size_t lg_problem_nvars(const struct LgProblem *problem);

/**
 * Generates the group (at most `cap` elements, 0 for the default) and
 * computes the Poincaré polynomial.
 *
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum LgStatus lg_compute(const struct LgProblem *problem, size_t cap, struct LgResult **out);

/**
 * # Safety
 * `result` must come from this library and not be used afterwards.
 */
void lg_result_free(struct LgResult *result);

/**
 * Order of the group, or 0 for a null handle.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
size_t lg_result_group_order(const struct LgResult *result);

/**
 * Writes the central charge as a reduced fraction.
 *
 * # Safety
 * `result` must be a live handle; `num` and `den` valid pointers.
 */
enum LgStatus lg_result_central_charge(const struct LgResult *result, int64_t *num, int64_t *den);

/**
 * h^{p,q} for integer p and q; fractional bidegrees are only reachable
 * through the CSV output.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
int64_t lg_result_hodge_number(const struct LgResult *result, int64_t p, int64_t q);

/**
 * The table as CSV with header `p,q,h`; exponents multiplied by `scale`.
 *
 * # Safety
 * `result` must be a live handle and `out` a valid pointer. Free the string
 * with [`lg_string_free`].
 */
enum LgStatus lg_result_csv(const struct LgResult *result, int64_t scale, char **out);

/**
 * The polynomial as text, e.g. `u^3 v^3 + 101 u^2 v^2 + ...`.
 *
 * # Safety
 * As for [`lg_result_csv`].
 */
enum LgStatus lg_result_polynomial(const struct LgResult *result, int64_t scale, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void lg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LG_ORBIFOLD_H */
