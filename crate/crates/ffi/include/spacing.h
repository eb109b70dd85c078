/* Generated by cbindgen from src/lib.rs; do not edit. */

#ifndef SPACING_H
#define SPACING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SPACING_STATUS_OK = 0,
  SPACING_STATUS_UNSAT = 1,
  SPACING_STATUS_TIMEOUT = 2,
  SPACING_STATUS_NULL_POINTER = 10,
  SPACING_STATUS_INVALID_ARGUMENT = 11,
  SPACING_STATUS_PARSE = 12,
  SPACING_STATUS_GENERATE = 13,
  SPACING_STATUS_REDUCTION = 14,
  SPACING_STATUS_BUFFER_TOO_SMALL = 15,
  SPACING_STATUS_OUT_OF_RANGE = 16,
  SPACING_STATUS_PANIC = 99,
} SpacingStatus;

typedef enum {
  SPACING_MODEL_OM = 0,
  SPACING_MODEL_SM = 1,
  SPACING_MODEL_SB = 2,
  SPACING_MODEL_SR = 3,
} SpacingModel;

typedef enum {
  /**
   * Smallest domain first.
   */
  SPACING_HEURISTIC_FIRST_FAIL = 0,
  /**
   * Lowest index first; the order used for benchmark comparisons.
   */
  SPACING_HEURISTIC_STATIC = 1,
} SpacingHeuristic;

typedef enum {
  SPACING_VERDICT_SAT = 0,
  SPACING_VERDICT_UNSAT = 1,
  SPACING_VERDICT_UNKNOWN = 2,
} SpacingVerdict;

typedef enum {
  SPACING_REDUCTION_SPACING = 0,
  SPACING_REDUCTION_SPACING_F = 1,
  SPACING_REDUCTION_SPACING_F_NO_MAX = 2,
  SPACING_REDUCTION_SPACING_H = 3,
} SpacingReduction;

/**
 * Acceptance suites, numbered like the criteria they check.
 */
typedef enum {
  SPACING_SUITE_WORKED_EXAMPLE = 1,
  SPACING_SUITE_INTERVOICE_EXAMPLE = 2,
  SPACING_SUITE_STRICTNESS = 3,
  SPACING_SUITE_SPACING1 = 4,
  SPACING_SUITE_SB = 5,
  SPACING_SUITE_INTERVOICE = 6,
  SPACING_SUITE_BOUNDED = 7,
  SPACING_SUITE_REDUCTIONS = 8,
  SPACING_SUITE_MONOTONICITY = 9,
  SPACING_SUITE_SB_COUNT = 10,
} SpacingSuite;

typedef struct SpacingCheckReport SpacingCheckReport;

/**
 * A rhythm instance.
 */
typedef struct SpacingInstance SpacingInstance;

/**
 * A formula compiled into a Spacing instance.
 */
typedef struct SpacingReduced SpacingReduced;

/**
 * Outcome of a search.
 */
typedef struct SpacingResult SpacingResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *spacing_last_error(void);

const char *spacing_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void spacing_string_free(char *s);

/**
 * Builds an instance from `h` voices given as parallel arrays.
 *
 * # Safety
 * `p`, `k` and `m` must point to `h` readable values; `out` must be writable.
 */
SpacingStatus spacing_instance_new(size_t n,
                                   size_t h,
                                   const size_t *p,
                                   const size_t *k,
                                   const size_t *m,
                                   SpacingInstance **out);

/**
 * Random instance for the grid cell `(h, p1, kh)`; `fraction` of the
 * (position, onset) pairs are removed.
 *
 * # Safety
 * `out` must be writable.
 */
SpacingStatus spacing_instance_generate(size_t h,
                                        size_t p1,
                                        size_t kh,
                                        uint64_t seed,
                                        double fraction,
                                        SpacingInstance **out);

/**
 * Copy of `inst` with further removals drawn from `seed`.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
SpacingStatus spacing_instance_extend(const SpacingInstance *inst,
                                      double fraction,
                                      uint64_t seed,
                                      SpacingInstance **out);

/**
 * Removes onset `value` from 1-based position `pos`.
 *
 * # Safety
 * `inst` must be a live handle.
 */
SpacingStatus spacing_instance_remove(SpacingInstance *inst, size_t pos, uint32_t value);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
SpacingStatus spacing_instance_from_json(const char *json, SpacingInstance **out);

/**
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
SpacingStatus spacing_instance_to_json(const SpacingInstance *inst, char **out);

/**
 * Sequence length, or 0 for NULL.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t spacing_instance_length(const SpacingInstance *inst);

/**
 * Number of voices, or 0 for NULL.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t spacing_instance_voice_count(const SpacingInstance *inst);

/**
 * Period, repetitions and onset count of voice `l` (0-based).
 *
 * # Safety
 * `inst` must be a live handle; the output pointers must be writable.
 */
SpacingStatus spacing_instance_voice(const SpacingInstance *inst,
                                     size_t l,
                                     size_t *p,
                                     size_t *k,
                                     size_t *m);

/**
 * # Safety
 * `inst` must be NULL or a handle not yet freed.
 */
void spacing_instance_free(SpacingInstance *inst);

/**
 * Searches `inst` under `model`. With `all` every solution is counted,
 * otherwise search stops at the first; `timeout_ms = 0` means no limit.
 * At most `keep` solutions are stored in the result.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
SpacingStatus spacing_solve(const SpacingInstance *inst,
                            SpacingModel model,
                            SpacingHeuristic heuristic,
                            bool all,
                            size_t keep,
                            uint64_t timeout_ms,
                            SpacingResult **out);

/**
 * # Safety
 * `res` must be a live handle.
 */
SpacingVerdict spacing_result_verdict(const SpacingResult *res);

/**
 * # Safety
 * `res` must be NULL or a live handle.
 */
uint64_t spacing_result_solution_count(const SpacingResult *res);

/**
 * # Safety
 * `res` must be NULL or a live handle.
 */
uint64_t spacing_result_backtracks(const SpacingResult *res);

/**
 * # Safety
 * `res` must be NULL or a live handle.
 */
uint64_t spacing_result_nodes(const SpacingResult *res);

/**
 * Wall time in seconds.
 *
 * # Safety
 * `res` must be NULL or a live handle.
 */
double spacing_result_seconds(const SpacingResult *res);

/**
 * Copies stored solution `index` into `buf`. `*written` receives the
 * solution length even when the buffer is too small.
 *
 * # Safety
 * `res` must be a live handle; `buf` must hold `len` values; `written`
 * may be NULL.
 */
SpacingStatus spacing_result_solution(const SpacingResult *res,
                                      size_t index,
                                      uint32_t *buf,
                                      size_t len,
                                      size_t *written);

/**
 * # Safety
 * `res` must be NULL or a handle not yet freed.
 */
void spacing_result_free(SpacingResult *res);

/**
 * Compiles a DIMACS formula.
 *
 * # Safety
 * `dimacs` must be a NUL-terminated string; `out` must be writable.
 */
SpacingStatus spacing_reduce_dimacs(const char *dimacs,
                                    SpacingReduction kind,
                                    SpacingReduced **out);

/**
 * # Safety
 * `red` must be NULL or a live handle.
 */
size_t spacing_reduced_length(const SpacingReduced *red);

/**
 * # Safety
 * `red` must be a live handle; `out` must be writable.
 */
SpacingStatus spacing_reduced_to_json(const SpacingReduced *red, char **out);

/**
 * # Safety
 * `red` must be a live handle; `out` must be writable.
 */
SpacingStatus spacing_reduced_mapping_json(const SpacingReduced *red, char **out);

/**
 * Searches for a support and decodes it into one literal per variable.
 * Returns `Unsat` when no support exists and `Timeout` when the limit
 * ran out first.
 *
 * # Safety
 * `red` must be a live handle; `buf` must hold `len` values; `written`
 * may be NULL.
 */
SpacingStatus spacing_reduced_find_model(const SpacingReduced *red,
                                         uint64_t timeout_ms,
                                         int32_t *buf,
                                         size_t len,
                                         size_t *written);

/**
 * # Safety
 * `red` must be NULL or a handle not yet freed.
 */
void spacing_reduced_free(SpacingReduced *red);

/**
 * Runs one suite. `trials = 0` keeps the suite's default size.
 *
 * # Safety
 * `out` must be writable.
 */
SpacingStatus spacing_check_run(SpacingSuite suite,
                                uint64_t seed,
                                size_t trials,
                                SpacingCheckReport **out);

/**
 * # Safety
 * `rep` must be NULL or a live handle.
 */
bool spacing_check_passed(const SpacingCheckReport *rep);

/**
 * # Safety
 * `rep` must be NULL or a live handle.
 */
size_t spacing_check_trials(const SpacingCheckReport *rep);

/**
 * # Safety
 * `rep` must be NULL or a live handle.
 */
size_t spacing_check_failures(const SpacingCheckReport *rep);

/**
 * # Safety
 * `rep` must be NULL or a live handle.
 */
double spacing_check_seconds(const SpacingCheckReport *rep);

/**
 * One-line summary plus the first counterexample, if any.
 *
 * # Safety
 * `rep` must be a live handle; `out` must be writable.
 */
SpacingStatus spacing_check_summary(const SpacingCheckReport *rep, char **out);

/**
 * # Safety
 * `rep` must be NULL or a handle not yet freed.
 */
void spacing_check_free(SpacingCheckReport *rep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPACING_H */
