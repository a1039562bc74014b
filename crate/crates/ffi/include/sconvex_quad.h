#ifndef SCONVEX_QUAD_H
#define SCONVEX_QUAD_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SqMethod {
  SQ_METHOD_POWER_MEAN = 0,
  SQ_METHOD_HOLDER_CONVEX = 1,
  SQ_METHOD_HOLDER_CONCAVE = 2,
  SQ_METHOD_PRIOR_MIDPOINT_POWER_MEAN = 3,
  SQ_METHOD_PRIOR_MIDPOINT_HOLDER = 4,
  SQ_METHOD_PRIOR_SIMPSON_HOLDER = 5,
  SQ_METHOD_PRIOR_TRAPEZOID_HOLDER = 6,
  SQ_METHOD_CONVEX_POWER_MEAN = 7,
} SqMethod;

typedef enum SqMode {
  SQ_MODE_S_CONVEX = 0,
  SQ_MODE_S_CONCAVE = 1,
} SqMode;

typedef enum SqStatus {
  SQ_STATUS_OK = 0,
  SQ_STATUS_NULL_POINTER = 1,
  SQ_STATUS_DOMAIN = 2,
  SQ_STATUS_MISSING_DATA = 3,
  SQ_STATUS_UNSUPPORTED = 4,
  SQ_STATUS_NO_APPLICABLE_METHOD = 5,
  SQ_STATUS_NON_CONVERGENCE = 6,
  SQ_STATUS_CONFIG = 7,
  SQ_STATUS_UNKNOWN_FUNCTION = 8,
  SQ_STATUS_INTERNAL = 9,
  SQ_STATUS_INVALID_STRING = 10,
  SQ_STATUS_PANIC = 11,
  SQ_STATUS_INDEX_OUT_OF_RANGE = 12,
} SqStatus;

/**
 * Opaque computed bound.
 */
typedef struct SqBound SqBound;

/**
 * Opaque fuzz report.
 */
typedef struct SqReport SqReport;

typedef struct SqMomentSet {
  double gamma1;
  double gamma2;
  double c1;
  double c2;
  double c3;
  double c4;
} SqMomentSet;

typedef struct SqHolderMoments {
  double eps1;
  double eps2;
} SqHolderMoments;

/**
 * `|f'|` at the nodes. Optional entries are ignored when their `has_*`
 * flag is zero.
 */
typedef struct SqDerivativeData {
  double d_a;
  double d_b;
  uint8_t has_mix;
  double d_mix;
  uint8_t has_quarters;
  double d_lo;
  double d_hi;
} SqDerivativeData;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len - 1` bytes) and returns the full message length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t sq_last_error_message(char *buf, size_t len);

/**
 * Case of the rule `(alpha, lambda)`: 1, 2 or 3.
 *
 * # Safety
 * `out_case` must be null or valid for writes.
 */
enum SqStatus sq_classify_case(double alpha, double lambda, int32_t *out_case);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum SqStatus sq_kernel_moments(double alpha, double lambda, double s, struct SqMomentSet *out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum SqStatus sq_holder_moments(double alpha, double lambda, double p, struct SqHolderMoments *out);

/**
 * Computes one bound on `[a, b]`. On success `*out` owns a new handle.
 *
 * # Safety
 * `data` must be null or point to a valid [`SqDerivativeData`]; `out` must
 * be null or valid for writes.
 */
enum SqStatus sq_bound_compute(enum SqMethod method,
                               double alpha,
                               double lambda,
                               double s,
                               double q,
                               enum SqMode mode,
                               const struct SqDerivativeData *data,
                               double a,
                               double b,
                               struct SqBound **out);

/**
 * # Safety
 * `bound` must be a live handle from [`sq_bound_compute`] or null.
 */
enum SqStatus sq_bound_value(const struct SqBound *bound, double *out);

/**
 * Case (1, 2 or 3) the returned value was computed in.
 *
 * # Safety
 * `bound` must be a live handle or null; `out` null or writable.
 */
enum SqStatus sq_bound_case(const struct SqBound *bound, int32_t *out);

/**
 * Number of labelled components of the bound.
 *
 * # Safety
 * `bound` must be a live handle or null.
 */
enum SqStatus sq_bound_component_count(const struct SqBound *bound, size_t *out);

/**
 * Component `index`: its value, and its label copied into `label`
 * (NUL-terminated, truncated to `label_len - 1` bytes; may be null).
 *
 * # Safety
 * `bound` must be a live handle; `label` null or `label_len` writable bytes;
 * `value` null or valid for writes.
 */
enum SqStatus sq_bound_component(const struct SqBound *bound,
                                 size_t index,
                                 char *label,
                                 size_t label_len,
                                 double *value);

/**
 * # Safety
 * `bound` must be a handle from [`sq_bound_compute`] not yet freed, or null.
 */
void sq_bound_free(struct SqBound *bound);

/**
 * Signed rule error of the default member of the test family `fn_id`.
 *
 * # Safety
 * `fn_id` must be null or a NUL-terminated string; `out` null or writable.
 */
enum SqStatus sq_rule_error(const char *fn_id,
                            double alpha,
                            double lambda,
                            double a,
                            double b,
                            double *out);

/**
 * Runs a fuzz campaign with default ranges over all certified pairings.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum SqStatus sq_fuzz_run(size_t trials, uint64_t seed, double tol, struct SqReport **out);

/**
 * Trials run, violations and per-trial errors of a report.
 *
 * # Safety
 * `report` must be a live handle; the out-pointers null or writable.
 */
enum SqStatus sq_report_counts(const struct SqReport *report,
                               size_t *trials,
                               size_t *violations,
                               size_t *errors);

/**
 * Largest `|I_f| / bound` seen in the campaign.
 *
 * # Safety
 * `report` must be a live handle; `out` null or writable.
 */
enum SqStatus sq_report_max_ratio(const struct SqReport *report, double *out);

/**
 * # Safety
 * `report` must be a handle from [`sq_fuzz_run`] not yet freed, or null.
 */
void sq_report_free(struct SqReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCONVEX_QUAD_H */
