#ifndef GENUS2_SCROLLS_H
#define GENUS2_SCROLLS_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `Ok`, `Mismatch` and `InputError` line up with the CLI
 * exit codes.
 */
typedef enum G2Status {
  G2_STATUS_OK = 0,
  G2_STATUS_MISMATCH = 1,
  G2_STATUS_INPUT_ERROR = 2,
  G2_STATUS_NULL_POINTER = 3,
  G2_STATUS_INVALID_UTF8 = 4,
  G2_STATUS_INTERNAL = 5,
} G2Status;

/**
 * A built instance: curve, embedding and `g^1_3`.
 */
typedef struct G2Instance G2Instance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a random instance of degree `d` over `F_p` from `seed`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum G2Status g2_instance_new(uint64_t p, uint32_t d, uint64_t seed, struct G2Instance **out);

/**
 * Builds an instance from a JSON spec such as
 * `{"p":10007,"d":7,"H":"3*K+inf","D":"random","seed":1}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum G2Status g2_instance_from_json(const char *json, struct G2Instance **out);

/**
 * # Safety
 * `inst` must be null or a handle from this library that has not been freed.
 */
void g2_instance_free(struct G2Instance *inst);

/**
 * Embedding degree, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
uint32_t g2_instance_degree(const struct G2Instance *inst);

/**
 * The replayable spec of an instance, as JSON.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum G2Status g2_instance_spec_json(const struct G2Instance *inst, char **out);

/**
 * Writes the `g^1_2`-scroll type into `s_out[0..2]` and the `g^1_3`-scroll
 * type into `v_out[0..3]`, both nonincreasing.
 *
 * # Safety
 * `inst` must be a live handle; `s_out` must have room for 2 values and
 * `v_out` for 3.
 */
enum G2Status g2_scroll_types(const struct G2Instance *inst, int64_t *s_out, int64_t *v_out);

/**
 * Verifies `I_S + I_V = I_C` in degree 2 and returns the report as JSON.
 * Returns `Mismatch` (with the report still written) if the identity fails.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum G2Status g2_verify(const struct G2Instance *inst, char **out);

/**
 * Predicted and computed types for both scrolls, as JSON
 * `{"S": {...}, "V": {...}}`. Returns `Mismatch` if either disagrees.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum G2Status g2_classify(const struct G2Instance *inst, char **out);

/**
 * Counts collinear triples among `trials` random triples of curve points.
 *
 * # Safety
 * `inst` must be a live handle and `violations` a valid pointer.
 */
enum G2Status g2_trisecant_scan(const struct G2Instance *inst, size_t trials, size_t *violations);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *g2_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void g2_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GENUS2_SCROLLS_H */
