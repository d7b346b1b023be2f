#ifndef SCHWARZKIT_H
#define SCHWARZKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SkAngleKind {
  SK_ANGLE_KIND_PSI = 0,
  SK_ANGLE_KIND_PHI = 1,
} SkAngleKind;

typedef enum SkMode {
  SK_MODE_MODULUS = 0,
  SK_MODE_REAL = 1,
} SkMode;

typedef enum SkOrder {
  SK_ORDER_P_FORM = 0,
  SK_ORDER_QUADRATIC = 1,
  SK_ORDER_P2_SIMPLE = 2,
} SkOrder;

/**
 * Result code of every fallible call.
 */
typedef enum SkStatus {
  SK_STATUS_OK = 0,
  SK_STATUS_NULL_POINTER = 1,
  SK_STATUS_INVALID_ARGUMENT = 2,
  SK_STATUS_DIMENSION_MISMATCH = 3,
  SK_STATUS_EMPTY_VECTOR = 4,
  SK_STATUS_NON_FINITE = 5,
  SK_STATUS_ZERO_VECTOR = 6,
  SK_STATUS_NOT_UNIT = 7,
  SK_STATUS_NOT_ORTHONORMAL = 8,
  SK_STATUS_CONSISTENCY = 9,
  SK_STATUS_PARSE = 10,
  SK_STATUS_IO = 11,
  SK_STATUS_BUFFER_TOO_SMALL = 12,
  SK_STATUS_PANIC = 13,
} SkStatus;

typedef enum SkTriangleKind {
  SK_TRIANGLE_KIND_LIN_PSI = 0,
  SK_TRIANGLE_KIND_KREIN = 1,
  SK_TRIANGLE_KIND_WZ_SIN_PSI = 2,
  SK_TRIANGLE_KIND_SIN_PHI = 3,
  SK_TRIANGLE_KIND_DP = 4,
  SK_TRIANGLE_KIND_DELTA_P = 5,
  SK_TRIANGLE_KIND_COS_LOWER = 6,
} SkTriangleKind;

/**
 * Opaque vantage-point index.
 */
typedef struct SkIndex SkIndex;

/**
 * Opaque orthogonal projection.
 */
typedef struct SkProjector SkProjector;

/**
 * Opaque vector in C^n.
 */
typedef struct SkVector SkVector;

/**
 * Relative and absolute tolerance. Pass `NULL` for the defaults
 * (1e-9, 1e-12).
 */
typedef struct SkTolerance {
  double rel_eps;
  double abs_eps;
} SkTolerance;

/**
 * One evaluated inequality `lhs >= rhs`.
 */
typedef struct SkBoundReport {
  double lhs;
  double rhs;
  double gap;
  bool satisfied;
  bool equality;
} SkBoundReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *sk_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sk_version(void);

/**
 * Creates a vector from `dim` real parts and optional imaginary parts
 * (`im` may be `NULL`).
 */
enum SkStatus sk_vector_new(const double *re,
                            const double *im,
                            size_t dim,
                            struct SkVector **out_vec);

void sk_vector_free(struct SkVector *v);

/**
 * Dimension of `v`, or 0 for `NULL`.
 */
size_t sk_vector_dim(const struct SkVector *v);

enum SkStatus sk_vector_get(const struct SkVector *v, size_t index, double *re, double *im);

/**
 * `<x, y> = sum x_k conj(y_k)`.
 */
enum SkStatus sk_inner(const struct SkVector *x, const struct SkVector *y, double *re, double *im);

enum SkStatus sk_norm(const struct SkVector *x, double *result);

/**
 * Projection onto the span of an orthonormal family of `n` vectors
 * (`n = 0` gives the zero projection).
 */
enum SkStatus sk_projector_new(const struct SkVector *const *family,
                               size_t n,
                               struct SkProjector **out_proj);

void sk_projector_free(struct SkProjector *p);

enum SkStatus sk_projector_apply(const struct SkProjector *p,
                                 const struct SkVector *x,
                                 struct SkVector **out_vec);

enum SkStatus sk_schwarz_bound(const struct SkVector *x,
                               const struct SkVector *y,
                               const struct SkTolerance *tol,
                               struct SkBoundReport *report);

/**
 * Projection refinement and the chain `|x||y| - |<x,y>| >= ...`.
 */
enum SkStatus sk_projection_bound(const struct SkProjector *p,
                                  const struct SkVector *x,
                                  const struct SkVector *y,
                                  const struct SkTolerance *tol,
                                  struct SkBoundReport *refinement,
                                  struct SkBoundReport *chain);

enum SkStatus sk_quad_refinement(const struct SkVector *x,
                                 const struct SkVector *y,
                                 const struct SkVector *z,
                                 const struct SkTolerance *tol,
                                 struct SkBoundReport *report);

/**
 * `a >= b` in `upper` and `b >= c` in `lower`.
 */
enum SkStatus sk_rs_chain(const struct SkVector *x,
                          const struct SkVector *y,
                          const struct SkVector *e,
                          const struct SkTolerance *tol,
                          struct SkBoundReport *upper,
                          struct SkBoundReport *lower);

enum SkStatus sk_detp_bound(const struct SkVector *x,
                            const struct SkVector *y,
                            const struct SkVector *e,
                            double p,
                            enum SkMode mode,
                            const struct SkTolerance *tol,
                            struct SkBoundReport *report);

enum SkStatus sk_det2_bound(const struct SkVector *x,
                            const struct SkVector *y,
                            const struct SkVector *e,
                            enum SkMode mode,
                            const struct SkTolerance *tol,
                            struct SkBoundReport *report);

enum SkStatus sk_d_p(const struct SkVector *x, const struct SkVector *y, double p, double *result);

enum SkStatus sk_delta_p(const struct SkVector *x,
                         const struct SkVector *y,
                         double p,
                         double *result);

/**
 * Angle in radians.
 */
enum SkStatus sk_angle(const struct SkVector *x,
                       const struct SkVector *y,
                       enum SkAngleKind kind,
                       double *result);

enum SkStatus sk_triangle_check(enum SkTriangleKind kind,
                                const struct SkVector *x,
                                const struct SkVector *y,
                                const struct SkVector *z,
                                double p,
                                const struct SkTolerance *tol,
                                struct SkBoundReport *report);

/**
 * Determinant bound for n-tuples with an arbitrary unit `e`.
 */
enum SkStatus sk_ntuple_general(const struct SkVector *x,
                                const struct SkVector *y,
                                const struct SkVector *e,
                                double p,
                                enum SkOrder order,
                                const struct SkTolerance *tol,
                                struct SkBoundReport *report);

/**
 * Maximum over standard basis vectors; `argmax` receives the 1-based index.
 */
enum SkStatus sk_ntuple_basis_max(const struct SkVector *x,
                                  const struct SkVector *y,
                                  double p,
                                  enum SkOrder order,
                                  const struct SkTolerance *tol,
                                  struct SkBoundReport *report,
                                  size_t *argmax);

/**
 * Mean / centered-moment form (uniform `e`).
 */
enum SkStatus sk_ntuple_mean(const struct SkVector *x,
                             const struct SkVector *y,
                             double p,
                             enum SkOrder order,
                             const struct SkTolerance *tol,
                             struct SkBoundReport *report);

enum SkStatus sk_index_build(const struct SkVector *const *points,
                             size_t n,
                             double p,
                             struct SkIndex **out_index);

void sk_index_free(struct SkIndex *idx);

/**
 * Number of stored points, or 0 for `NULL`.
 */
size_t sk_index_len(const struct SkIndex *idx);

/**
 * `k` nearest points. Results go to `ids`/`dists` (capacity `cap`);
 * `count` always receives the number of results, also when the status is
 * `BufferTooSmall`.
 */
enum SkStatus sk_index_query_nn(const struct SkIndex *idx,
                                const struct SkVector *q,
                                size_t k,
                                size_t *ids,
                                double *dists,
                                size_t cap,
                                size_t *count);

/**
 * Points within distance `r`; buffers as in [`sk_index_query_nn`].
 */
enum SkStatus sk_index_query_range(const struct SkIndex *idx,
                                   const struct SkVector *q,
                                   double r,
                                   size_t *ids,
                                   double *dists,
                                   size_t cap,
                                   size_t *count);

enum SkStatus sk_index_save(const struct SkIndex *idx, const char *path);

enum SkStatus sk_index_load(const char *path, struct SkIndex **out_index);

/**
 * Runs the randomized suite. `config_json` is a trial configuration, e.g.
 * `{"dims":[2,3],"trials_per_dim":100,"seed":42,"p_values":[2,3],
 * "scalar_field":"complex","tol":{"rel_eps":1e-9,"abs_eps":1e-12}}`.
 * The report is returned in `out_json`; release it with [`sk_string_free`].
 */
enum SkStatus sk_run_suite_json(const char *config_json, bool parallel, char **out_json);

/**
 * Releases a string returned by this library.
 */
void sk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHWARZKIT_H */
