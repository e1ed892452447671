#ifndef CONFLUENT_HEUN_H
#define CONFLUENT_HEUN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bits reported by [`heun_classify`].
 */
#define HEUN_CASE_ALPHA_ZERO 1

#define HEUN_CASE_SIGMA_ZERO 2

#define HEUN_CASE_SIGMA_EQ_4P_ALPHA 4

/**
 * Values of the `branch` argument of [`heun_termination_roots`].
 */
#define HEUN_BRANCH_DELTA_EQ_MINUS_N 0

#define HEUN_BRANCH_ALPHA_MINUS_GAMMA_EQ_MINUS_N 1

/**
 * Result codes. Codes 10 and above mirror the library's error kinds.
 */
typedef enum HeunStatus {
  HEUN_STATUS_OK = 0,
  HEUN_STATUS_NULL_POINTER = 1,
  HEUN_STATUS_BUFFER_TOO_SMALL = 2,
  HEUN_STATUS_INTERNAL = 3,
  HEUN_STATUS_ZERO_P = 10,
  HEUN_STATUS_NON_FINITE = 11,
  HEUN_STATUS_SINGULAR_POINT = 12,
  HEUN_STATUS_G_ZERO = 13,
  HEUN_STATUS_POLE_PARAMETER = 14,
  HEUN_STATUS_NO_CONVERGENCE = 15,
  HEUN_STATUS_BRANCH_CUT = 16,
  HEUN_STATUS_ZERO_BASE = 17,
  HEUN_STATUS_OUT_OF_DISK = 18,
  HEUN_STATUS_RESONANT_GAMMA = 19,
  HEUN_STATUS_NOT_APPLICABLE = 20,
  HEUN_STATUS_DEGENERATE_BRANCHES = 21,
  HEUN_STATUS_DEGENERATE_GAMMA = 22,
  HEUN_STATUS_DEGENERATE_ALPHA = 23,
  HEUN_STATUS_NOT_SIGMA_ZERO = 24,
  HEUN_STATUS_DEGENERATE_RN = 25,
  HEUN_STATUS_ZERO_GAMMA_N = 26,
  HEUN_STATUS_C0_UNDETERMINED = 27,
  HEUN_STATUS_DEGENERATE_POLYNOMIAL = 28,
  HEUN_STATUS_PATH_TOO_CLOSE_TO_SINGULARITY = 29,
  HEUN_STATUS_STEP_UNDERFLOW = 30,
  HEUN_STATUS_INVALID_ARGUMENT = 31,
} HeunStatus;

/**
 * Opaque Kummer-function expansion with computed coefficients.
 */
typedef struct HeunGoursat HeunGoursat;

/**
 * Opaque parameter set `(p, γ, δ, α, σ)`.
 */
typedef struct HeunParams HeunParams;

typedef struct HeunComplex {
  double re;
  double im;
} HeunComplex;

/**
 * A function value with its first two derivatives.
 */
typedef struct HeunJet {
  struct HeunComplex value;
  struct HeunComplex d1;
  struct HeunComplex d2;
} HeunJet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread, NUL-terminated and
 * truncated to `cap` bytes. Returns the full message length (excluding
 * the terminator); pass a null buffer to query it.
 *
 * # Safety
 * `buf` must be null or point to `cap` writable bytes.
 */
size_t heun_last_error_message(char *buf, size_t cap);

/**
 * Validates and allocates a parameter set.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum HeunStatus heun_params_new(struct HeunComplex p,
                                struct HeunComplex gamma,
                                struct HeunComplex delta,
                                struct HeunComplex alpha,
                                struct HeunComplex sigma,
                                struct HeunParams **out);

/**
 * Releases a parameter set. Null is ignored.
 *
 * # Safety
 * `params` must be null or a handle from [`heun_params_new`] that has not
 * been freed.
 */
void heun_params_free(struct HeunParams *params);

/**
 * `HC(z)` and two derivatives from a Frobenius series of the given order
 * (`|z| ≤ 0.5`).
 *
 * # Safety
 * `params` must be a live handle and `out` a valid pointer.
 */
enum HeunStatus heun_hc_eval(const struct HeunParams *params,
                             struct HeunComplex z,
                             size_t order,
                             struct HeunJet *out);

/**
 * The local solution `z^{1−γ}(1 + O(z))` and two derivatives.
 *
 * # Safety
 * `params` must be a live handle and `out` a valid pointer.
 */
enum HeunStatus heun_second_solution_eval(const struct HeunParams *params,
                                          struct HeunComplex z,
                                          size_t order,
                                          struct HeunJet *out);

/**
 * Coefficients `(a1, a0)` of the equation satisfied by `u'`.
 *
 * # Safety
 * `params` must be a live handle; `a1` and `a0` valid pointers.
 */
enum HeunStatus heun_derivative_ode_coeffs(const struct HeunParams *params,
                                           struct HeunComplex z,
                                           struct HeunComplex *a1,
                                           struct HeunComplex *a0);

/**
 * Writes a bit set of `HEUN_CASE_*` flags; zero means generic.
 *
 * # Safety
 * `params` must be a live handle and `flags` a valid pointer.
 */
enum HeunStatus heun_classify(const struct HeunParams *params, double tol, uint32_t *flags);

/**
 * Builds the Kummer-function expansion of a `σ = 0` parameter set with
 * coefficients `a_0..a_n`.
 *
 * # Safety
 * `params` must be a live handle and `out` a valid pointer.
 */
enum HeunStatus heun_goursat_new(const struct HeunParams *params,
                                 size_t n,
                                 struct HeunGoursat **out);

/**
 * Releases an expansion. Null is ignored.
 *
 * # Safety
 * `g` must be null or a live handle from [`heun_goursat_new`].
 */
void heun_goursat_free(struct HeunGoursat *g);

/**
 * Copies the coefficients into `buf`. `len` receives the number of
 * coefficients; if it exceeds `cap` nothing is copied and
 * `BufferTooSmall` is returned.
 *
 * # Safety
 * `g` must be a live handle, `len` valid, and `buf` valid for `cap`
 * elements unless `cap` is zero.
 */
enum HeunStatus heun_goursat_coeffs(const struct HeunGoursat *g,
                                    struct HeunComplex *buf,
                                    size_t cap,
                                    size_t *len);

/**
 * The partial sum `w(z)` and two derivatives.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum HeunStatus heun_goursat_eval_w(const struct HeunGoursat *g,
                                    struct HeunComplex z,
                                    struct HeunJet *out);

/**
 * `u(z) − C0` and two derivatives.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum HeunStatus heun_goursat_eval_integral(const struct HeunGoursat *g,
                                           struct HeunComplex z,
                                           struct HeunJet *out);

/**
 * Roots in `p` of the degree-`n` termination condition on one branch.
 * `free` is `α` on the `δ = −n` branch and `δ` on the `α − γ = −n`
 * branch. Buffer semantics as in [`heun_goursat_coeffs`].
 *
 * # Safety
 * `len` must be valid and `buf` valid for `cap` elements unless `cap` is
 * zero.
 */
enum HeunStatus heun_termination_roots(size_t n,
                                       uint32_t branch,
                                       struct HeunComplex gamma,
                                       struct HeunComplex free,
                                       struct HeunComplex *buf,
                                       size_t cap,
                                       size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONFLUENT_HEUN_H */
