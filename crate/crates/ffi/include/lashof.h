#ifndef LASHOF_H
#define LASHOF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LashofStatus {
  LASHOF_STATUS_OK = 0,
  LASHOF_STATUS_NULL_POINTER = 1,
  LASHOF_STATUS_INVALID_UTF8 = 2,
  LASHOF_STATUS_SYNTAX = 3,
  LASHOF_STATUS_UNSUPPORTED_PRIME = 4,
  LASHOF_STATUS_INVALID_ARGUMENT = 5,
  LASHOF_STATUS_CONTEXT = 6,
  LASHOF_STATUS_INCONSISTENCY = 7,
  LASHOF_STATUS_BUFFER_TOO_SMALL = 8,
  LASHOF_STATUS_PANIC = 9,
  LASHOF_STATUS_OTHER = 10,
} LashofStatus;

/**
 * Opaque handle to an engine.
 */
typedef struct LashofContext LashofContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Context for `H_*QS^{-k}` from the built-in stems table.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LashofStatus lashof_context_new_sphere(uint32_t k, struct LashofContext **out);

/**
 * Context for `H_*QX`, `X` named from the atlas (for example "BU") or
 * given as the text of a presentation.
 *
 * # Safety
 * `space` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LashofStatus lashof_context_new_space(const char *space, struct LashofContext **out);

/**
 * # Safety
 * `ctx` must come from a `lashof_context_new_*` call and not be used afterwards.
 */
void lashof_context_free(struct LashofContext *ctx);

/**
 * Normal form of an expression; the caller frees `*out` with `lashof_string_free`.
 *
 * # Safety
 * `ctx` must be a live context, `expr` a NUL-terminated string, `out` a valid pointer.
 */
enum LashofStatus lashof_normalize(const struct LashofContext *ctx, const char *expr, char **out);

/**
 * Fills `out[0..=up_to]` with basis counts; `len` must be at least `up_to + 1`.
 *
 * # Safety
 * `ctx` must be a live context and `out` valid for `len` writes.
 */
enum LashofStatus lashof_poincare_series(const struct LashofContext *ctx,
                                         uint32_t up_to,
                                         uint64_t *out,
                                         size_t len);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void lashof_string_free(char *s);

/**
 * The 2-adic valuation of `3^{4j} - 1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LashofStatus lashof_nu(uint64_t j, uint32_t *out);

/**
 * The least prime `q` generating the units mod `p^2`, for an odd prime `p`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LashofStatus lashof_q_of_p(uint64_t p, uint64_t *out);

/**
 * Whether `x_i^{-k}` is nontrivial in `H_*Q_0S^{-k}`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LashofStatus lashof_x_class_nontrivial(uint32_t i, uint32_t k, bool *out);

/**
 * Whether `w^{-k}` indexed by `i` is nontrivial at the prime `p`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LashofStatus lashof_w_class_nontrivial(uint32_t i, uint32_t k, uint64_t p, bool *out);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *lashof_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LASHOF_H */
