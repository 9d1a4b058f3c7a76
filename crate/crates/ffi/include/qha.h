#ifndef QHA_H
#define QHA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum QhaStatus {
  QHA_STATUS_OK = 0,
  QHA_STATUS_NULL_POINTER = 1,
  QHA_STATUS_INVALID_PARAMETER = 2,
  QHA_STATUS_GRID_MISMATCH = 3,
  QHA_STATUS_DOMAIN = 4,
  QHA_STATUS_HYPOTHESIS_VIOLATION = 5,
  QHA_STATUS_FORMAT = 6,
  QHA_STATUS_IO = 7,
  QHA_STATUS_PANIC = 8,
} QhaStatus;

/**
 * Operator-convolution algorithm selector.
 */
typedef enum QhaConvMethod {
  QHA_CONV_METHOD_DIRECT = 0,
  QHA_CONV_METHOD_FAST = 1,
} QhaConvMethod;

/**
 * Opaque phase-space grid.
 */
typedef struct QhaGrid QhaGrid;

/**
 * Opaque operator kernel.
 */
typedef struct QhaOperator QhaOperator;

/**
 * Opaque sampled symbol.
 */
typedef struct QhaSymbol QhaSymbol;

/**
 * Opaque window vector.
 */
typedef struct QhaVector QhaVector;

typedef struct QhaComplex {
  double re;
  double im;
} QhaComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *qha_last_error(void);

/**
 * Static name of a status code.
 */
const char *qha_status_name(enum QhaStatus status);

/**
 * Grid with `n` samples per axis on `[-half_width, half_width)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QhaStatus qha_grid_new(size_t n, double half_width, struct QhaGrid **out);

/**
 * Grid with equal position and frequency spacing, `L = √n / 2`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QhaStatus qha_grid_self_dual(size_t n, struct QhaGrid **out);

/**
 * # Safety
 * `grid` must be null or a live grid handle.
 */
size_t qha_grid_n(const struct QhaGrid *grid);

/**
 * # Safety
 * `grid` must be null or a live grid handle.
 */
double qha_grid_half_width(const struct QhaGrid *grid);

/**
 * # Safety
 * `grid` must be null or a handle not yet freed.
 */
void qha_grid_free(struct QhaGrid *grid);

/**
 * Wraps `len` symbol samples on `grid`; the length must match the grid.
 *
 * # Safety
 * `grid` must be a live handle, `data` valid for `len` reads, `out` valid for writes.
 */
enum QhaStatus qha_symbol_new(const struct QhaGrid *grid,
                              const struct QhaComplex *data,
                              size_t len,
                              struct QhaSymbol **out);

/**
 * Number of symbol samples, 0 for null.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t qha_symbol_len(const struct QhaSymbol *h);

/**
 * Copies the symbol samples into `out`, which must hold exactly `len` entries.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for `len` writes.
 */
enum QhaStatus qha_symbol_values(const struct QhaSymbol *h, struct QhaComplex *out, size_t len);

/**
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_symbol_grid(const struct QhaSymbol *h, struct QhaGrid **out);

/**
 * # Safety
 * `path` must be NUL-terminated and `out` valid for writes.
 */
enum QhaStatus qha_symbol_read(const char *path, struct QhaSymbol **out);

/**
 * # Safety
 * `h` must be a live handle and `path` NUL-terminated.
 */
enum QhaStatus qha_symbol_write(const struct QhaSymbol *h, const char *path);

/**
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_symbol_copy(const struct QhaSymbol *h, struct QhaSymbol **out);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void qha_symbol_free(struct QhaSymbol *h);

/**
 * Wraps `len` kernel samples on `grid`; the length must match the grid.
 *
 * # Safety
 * `grid` must be a live handle, `data` valid for `len` reads, `out` valid for writes.
 */
enum QhaStatus qha_operator_new(const struct QhaGrid *grid,
                                const struct QhaComplex *data,
                                size_t len,
                                struct QhaOperator **out);

/**
 * Number of kernel samples, 0 for null.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t qha_operator_len(const struct QhaOperator *h);

/**
 * Copies the kernel samples into `out`, which must hold exactly `len` entries.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for `len` writes.
 */
enum QhaStatus qha_operator_kernel(const struct QhaOperator *h, struct QhaComplex *out, size_t len);

/**
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_operator_grid(const struct QhaOperator *h, struct QhaGrid **out);

/**
 * # Safety
 * `path` must be NUL-terminated and `out` valid for writes.
 */
enum QhaStatus qha_operator_read(const char *path, struct QhaOperator **out);

/**
 * # Safety
 * `h` must be a live handle and `path` NUL-terminated.
 */
enum QhaStatus qha_operator_write(const struct QhaOperator *h, const char *path);

/**
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_operator_copy(const struct QhaOperator *h, struct QhaOperator **out);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void qha_operator_free(struct QhaOperator *h);

/**
 * Wraps `len` vector samples on `grid`; the length must match the grid.
 *
 * # Safety
 * `grid` must be a live handle, `data` valid for `len` reads, `out` valid for writes.
 */
enum QhaStatus qha_vector_new(const struct QhaGrid *grid,
                              const struct QhaComplex *data,
                              size_t len,
                              struct QhaVector **out);

/**
 * Number of vector samples, 0 for null.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t qha_vector_len(const struct QhaVector *h);

/**
 * Copies the vector samples into `out`, which must hold exactly `len` entries.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for `len` writes.
 */
enum QhaStatus qha_vector_values(const struct QhaVector *h, struct QhaComplex *out, size_t len);

/**
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_vector_grid(const struct QhaVector *h, struct QhaGrid **out);

/**
 * # Safety
 * `path` must be NUL-terminated and `out` valid for writes.
 */
enum QhaStatus qha_vector_read(const char *path, struct QhaVector **out);

/**
 * # Safety
 * `h` must be a live handle and `path` NUL-terminated.
 */
enum QhaStatus qha_vector_write(const struct QhaVector *h, const char *path);

/**
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_vector_copy(const struct QhaVector *h, struct QhaVector **out);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void qha_vector_free(struct QhaVector *h);

/**
 * Samples a descriptor such as `gaussian:2,0.7071`, `projector`,
 * `constant:1` or `coordinate:x`.
 *
 * # Safety
 * `grid` must be a live handle, `spec` NUL-terminated, `out` valid for writes.
 */
enum QhaStatus qha_symbol_build(const struct QhaGrid *grid,
                                const char *spec,
                                struct QhaSymbol **out);

/**
 * `φ₀(t) = 2^{1/4} e^{−πt²}` sampled on `grid`.
 *
 * # Safety
 * `grid` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_vector_gaussian(const struct QhaGrid *grid, struct QhaVector **out);

/**
 * # Safety
 * `s` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_symplectic_fourier(const struct QhaSymbol *s, struct QhaSymbol **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` valid for writes.
 */
enum QhaStatus qha_convolve(const struct QhaSymbol *a,
                            const struct QhaSymbol *b,
                            struct QhaSymbol **out);

/**
 * `‖s‖_p`; pass `INFINITY` for the sup norm.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_lp_norm(const struct QhaSymbol *s, double p, double *out);

/**
 * # Safety
 * `s` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_weyl_quantize(const struct QhaSymbol *s, struct QhaOperator **out);

/**
 * # Safety
 * `t` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_weyl_symbol(const struct QhaOperator *t, struct QhaSymbol **out);

/**
 * # Safety
 * `t` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_fourier_weyl(const struct QhaOperator *t, struct QhaSymbol **out);

/**
 * Cross-Wigner distribution `W(psi, phi)`.
 *
 * # Safety
 * `psi`, `phi` must be live handles and `out` valid for writes.
 */
enum QhaStatus qha_cross_wigner(const struct QhaVector *psi,
                                const struct QhaVector *phi,
                                struct QhaSymbol **out);

/**
 * The operator `f ↦ ⟨f, h⟩ g`.
 *
 * # Safety
 * `g`, `h` must be live handles and `out` valid for writes.
 */
enum QhaStatus qha_rank_one(const struct QhaVector *g,
                            const struct QhaVector *h,
                            struct QhaOperator **out);

/**
 * `‖t‖_{S^p}`; pass `INFINITY` for the operator norm.
 *
 * # Safety
 * `t` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_schatten_norm(const struct QhaOperator *t, double p, double *out);

/**
 * # Safety
 * `t` must be a live handle and `out` valid for writes.
 */
enum QhaStatus qha_trace(const struct QhaOperator *t, struct QhaComplex *out);

/**
 * Operator convolution `t ⋆ s`, a symbol.
 *
 * # Safety
 * `t`, `s` must be live handles and `out` valid for writes.
 */
enum QhaStatus qha_op_conv(const struct QhaOperator *t,
                           const struct QhaOperator *s,
                           enum QhaConvMethod method,
                           struct QhaSymbol **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QHA_H */
