/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef F2GROWTH_H
#define F2GROWTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum F2Status {
  F2_STATUS_OK = 0,
  F2_STATUS_NULL_POINTER = 1,
  F2_STATUS_INVALID_UTF8 = 2,
  F2_STATUS_INVALID_INPUT = 3,
  F2_STATUS_INFINITE_INDEX = 4,
  F2_STATUS_NOT_TRANSITIVE = 5,
  F2_STATUS_OUT_OF_RANGE = 6,
  F2_STATUS_CAP_EXCEEDED = 7,
  F2_STATUS_PANIC = 8,
} F2Status;

/**
 * A coefficient table computed for one target coset.
 */
typedef struct F2Recurrence F2Recurrence;

/**
 * A finite-index subgroup with its coset graph.
 */
typedef struct F2Subgroup F2Subgroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Folds comma-separated generators such as `"aa,bb,Aba,Bab"`.
 *
 * # Safety
 * `generators` must be a nul-terminated string; `out` must be writable.
 */
enum F2Status f2_subgroup_from_generators(const char *generators, struct F2Subgroup **out);

/**
 * Builds a subgroup from two permutation image arrays of length `degree`.
 *
 * # Safety
 * `sigma_a` and `sigma_b` must point to `degree` readable values.
 */
enum F2Status f2_subgroup_from_action(const size_t *sigma_a,
                                      const size_t *sigma_b,
                                      size_t degree,
                                      size_t basepoint,
                                      struct F2Subgroup **out);

/**
 * Accepts the JSON spec format read by the command-line tool.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum F2Status f2_subgroup_from_spec_json(const char *json, struct F2Subgroup **out);

/**
 * # Safety
 * `subgroup` must come from an `f2_subgroup_from_*` call, or be null.
 */
void f2_subgroup_free(struct F2Subgroup *subgroup);

/**
 * # Safety
 * `subgroup` must be a live handle; `out` must be writable.
 */
enum F2Status f2_subgroup_index(const struct F2Subgroup *subgroup, size_t *out);

/**
 * # Safety
 * `subgroup` must be a live handle; `out` must be writable.
 */
enum F2Status f2_subgroup_has_odd_element(const struct F2Subgroup *subgroup, bool *out);

/**
 * Exports the coset graph as `"dot"` or `"json"`.
 *
 * # Safety
 * `subgroup` must be a live handle; `format` a nul-terminated string.
 */
enum F2Status f2_subgroup_export(const struct F2Subgroup *subgroup, const char *format, char **out);

/**
 * `|wH ∩ Sₙ|` as a decimal string.
 *
 * # Safety
 * `subgroup` must be a live handle; `coset` a nul-terminated word.
 */
enum F2Status f2_count(const struct F2Subgroup *subgroup, const char *coset, size_t n, char **out);

/**
 * Computes the coefficients for target coset `target` (a word, `""` for
 * `H`). `max_steps == 0` selects the default cap.
 *
 * # Safety
 * `subgroup` must be a live handle; `target` a nul-terminated word.
 */
enum F2Status f2_recurrence_compute(const struct F2Subgroup *subgroup,
                                    const char *target,
                                    size_t max_steps,
                                    struct F2Recurrence **out);

/**
 * # Safety
 * `recurrence` must come from `f2_recurrence_compute`, or be null.
 */
void f2_recurrence_free(struct F2Recurrence *recurrence);

/**
 * # Safety
 * `recurrence` must be a live handle; `out` must be writable.
 */
enum F2Status f2_recurrence_terminated(const struct F2Recurrence *recurrence, bool *out);

/**
 * Last nonempty step, or the cap when not terminated.
 *
 * # Safety
 * `recurrence` must be a live handle; `out` must be writable.
 */
enum F2Status f2_recurrence_last_step(const struct F2Recurrence *recurrence, size_t *out);

/**
 * Number of nonzero coefficients.
 *
 * # Safety
 * `recurrence` must be a live handle; `out` must be writable.
 */
enum F2Status f2_recurrence_entry_count(const struct F2Recurrence *recurrence, size_t *out);

/**
 * Entry `i` in (step, vertex) order. `vertex` indexes the coset labels of
 * the graph export.
 *
 * # Safety
 * `recurrence` must be a live handle; all out pointers writable.
 */
enum F2Status f2_recurrence_entry(const struct F2Recurrence *recurrence,
                                  size_t i,
                                  size_t *step,
                                  size_t *vertex,
                                  uint64_t *coefficient);

/**
 * The table as JSON with coset labels.
 *
 * # Safety
 * `recurrence` must be a live handle; `out` must be writable.
 */
enum F2Status f2_recurrence_to_json(const struct F2Recurrence *recurrence, char **out);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void f2_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *f2_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* F2GROWTH_H */
