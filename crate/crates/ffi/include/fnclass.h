/* SPDX-License-Identifier: Apache-2.0 */

#ifndef FNCLASS_H
#define FNCLASS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FnclassStatus {
  FNCLASS_STATUS_OK = 0,
  FNCLASS_STATUS_NULL_POINTER = 1,
  FNCLASS_STATUS_INVALID_ARGUMENT = 2,
  FNCLASS_STATUS_PARSE_ERROR = 3,
  FNCLASS_STATUS_TOO_LARGE = 4,
  FNCLASS_STATUS_BUFFER_TOO_SMALL = 5,
  FNCLASS_STATUS_BUDGET = 6,
  FNCLASS_STATUS_INTERNAL = 7,
} FnclassStatus;

/**
 * Opaque function handle.
 */
typedef struct FnclassFunction FnclassFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a function from `k^n` table values in little-endian point order.
 *
 * # Safety
 * `values` must point to `len` readable bytes and `out` must be writable.
 */
enum FnclassStatus fnclass_function_from_values(uint8_t k,
                                                size_t n,
                                                const uint8_t *values,
                                                size_t len,
                                                struct FnclassFunction **out);

/**
 * Builds a Boolean function from a hex table. `n = 0` infers the arity.
 *
 * # Safety
 * `hex` must be a NUL-terminated string and `out` must be writable.
 */
enum FnclassStatus fnclass_function_from_hex(const char *hex,
                                             size_t n,
                                             struct FnclassFunction **out);

/**
 * Parses a sum-of-products expression over `Z_k`. `n = 0` takes the
 * largest variable index as the arity.
 *
 * # Safety
 * `expr` must be a NUL-terminated string and `out` must be writable.
 */
enum FnclassStatus fnclass_function_parse(const char *expr,
                                          uint8_t k,
                                          size_t n,
                                          struct FnclassFunction **out);

/**
 * # Safety
 * `f` must be null or a handle from this library that was not yet freed.
 */
void fnclass_function_free(struct FnclassFunction *f);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void fnclass_string_free(char *s);

/**
 * Message for the previous call on this thread if it failed, else null.
 * Valid until the next call on the same thread.
 */
const char *fnclass_last_error(void);

/**
 * # Safety
 * `f` must be a live handle; `k` and `n` must be writable or null.
 */
enum FnclassStatus fnclass_function_shape(const struct FnclassFunction *f, uint8_t *k, size_t *n);

/**
 * Bit `i - 1` of `mask` is set when `x_i` is essential.
 *
 * # Safety
 * `f` must be a live handle and `mask` writable.
 */
enum FnclassStatus fnclass_function_essential(const struct FnclassFunction *f, uint64_t *mask);

/**
 * # Safety
 * `f` must be a live handle, `point` must hold `len` bytes and `out` be
 * writable.
 */
enum FnclassStatus fnclass_function_eval(const struct FnclassFunction *f,
                                         const uint8_t *point,
                                         size_t len,
                                         uint8_t *out);

/**
 * `imp(f)`, the number of implementations over all orderings.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FnclassStatus fnclass_function_imp(const struct FnclassFunction *f, uint64_t *out);

/**
 * `(sub_0, ..., sub_n)`. `*len` is always set to `n + 1`.
 *
 * # Safety
 * `f` must be a live handle, `buf` must hold `cap` entries, `len` writable.
 */
enum FnclassStatus fnclass_function_sub_vector(const struct FnclassFunction *f,
                                               uint64_t *buf,
                                               size_t cap,
                                               size_t *len);

/**
 * `(sep_1, ..., sep_n)`. `*len` is always set to `n`.
 *
 * # Safety
 * As for `fnclass_function_sub_vector`.
 */
enum FnclassStatus fnclass_function_sep_vector(const struct FnclassFunction *f,
                                               uint64_t *buf,
                                               size_t cap,
                                               size_t *len);

/**
 * Canonical sum-of-products form.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FnclassStatus fnclass_function_to_sp(const struct FnclassFunction *f, char **out);

/**
 * Graphviz text of the reduced diagram. `ordering` may be null for the
 * natural order; `depth` may be null.
 *
 * # Safety
 * `f` must be a live handle, `ordering` null or NUL-terminated, `out`
 * writable.
 */
enum FnclassStatus fnclass_function_diagram_dot(const struct FnclassFunction *f,
                                                const char *ordering,
                                                char **out,
                                                size_t *depth);

/**
 * Class counts of `P_k^n` under the imp, sub and sep equivalences.
 *
 * # Safety
 * The three outputs must be writable.
 */
enum FnclassStatus fnclass_class_counts(uint8_t k,
                                        size_t n,
                                        uint64_t *imp,
                                        uint64_t *sub,
                                        uint64_t *sep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FNCLASS_H */
