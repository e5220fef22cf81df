#ifndef SLABRES_H
#define SLABRES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SrEdgeType {
  SR_EDGE_TYPE_DEGENERATE = 0,
  SR_EDGE_TYPE_NON_DEGENERATE = 1,
  SR_EDGE_TYPE_OPEN = 2,
} SrEdgeType;

typedef enum SrFixedPointKind {
  SR_FIXED_POINT_KIND_ELLIPTIC = 0,
  SR_FIXED_POINT_KIND_PARABOLIC = 1,
  SR_FIXED_POINT_KIND_HYPERBOLIC = 2,
} SrFixedPointKind;

typedef enum SrStatus {
  SR_STATUS_OK = 0,
  SR_STATUS_NULL_POINTER = 1,
  SR_STATUS_INVALID_CELL = 2,
  SR_STATUS_INVALID_ARGUMENT = 3,
  SR_STATUS_INVALID_RANGE = 4,
  SR_STATUS_EDGE_DEGENERACY = 5,
  SR_STATUS_POLE_PROXIMITY = 6,
  SR_STATUS_RECURSION_POLE = 7,
  SR_STATUS_OVERFLOW = 8,
  SR_STATUS_NO_CONVERGENCE = 9,
  SR_STATUS_CONTOUR_THROUGH_ZERO = 10,
  SR_STATUS_NOT_COMMENSURATE = 11,
  SR_STATUS_DEGENERATE_EDGE = 12,
  SR_STATUS_HOMOGENEOUS_CELL = 13,
  SR_STATUS_BAND_MISMATCH = 14,
  SR_STATUS_DOMAIN_ERROR = 15,
  SR_STATUS_OUT_OF_BOUNDS = 16,
  SR_STATUS_PANIC = 99,
} SrStatus;

/**
 * Opaque list of bands.
 */
typedef struct SrBandList SrBandList;

/**
 * Opaque unit cell.
 */
typedef struct SrCell SrCell;

/**
 * Opaque list of resonances sorted by real part.
 */
typedef struct SrResonanceList SrResonanceList;

typedef struct SrDerived {
  double d;
  double rho;
  double tau_b;
  double tau_g;
} SrDerived;

typedef struct SrComplex {
  double re;
  double im;
} SrComplex;

typedef struct SrMonodromy {
  struct SrComplex alpha;
  struct SrComplex beta;
  struct SrComplex gamma;
  struct SrComplex delta;
} SrMonodromy;

typedef struct SrBand {
  /**
   * 1-based.
   */
  size_t index;
  double lo;
  double hi;
  enum SrEdgeType lo_type;
  enum SrEdgeType hi_type;
} SrBand;

typedef struct SrResonance {
  struct SrComplex lambda;
  /**
   * `|d Q_{2k} - 1|` at `lambda`.
   */
  double residual;
  /**
   * 1-based band index, or 0 for an edge or gap resonance.
   */
  size_t band_index;
} SrResonance;

typedef struct SrFixedPoints {
  struct SrComplex z1;
  struct SrComplex z2;
  enum SrFixedPointKind kind;
  double discriminant;
} SrFixedPoints;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a cell. `*out` receives a handle to free with `sr_cell_free`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum SrStatus sr_cell_new(double b1, double b2, double x2, struct SrCell **out);

/**
 * # Safety
 * `cell` must be null or a handle from `sr_cell_new` not yet freed.
 */
void sr_cell_free(struct SrCell *cell);

/**
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_cell_derived(const struct SrCell *cell, struct SrDerived *out);

/**
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_cell_is_commensurate(const struct SrCell *cell, bool *out);

/**
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_lyapunov(const struct SrCell *cell,
                          struct SrComplex lambda,
                          struct SrComplex *out);

/**
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_monodromy(const struct SrCell *cell,
                           struct SrComplex lambda,
                           struct SrMonodromy *out);

/**
 * `M^k` by the Chebyshev identity.
 *
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_transfer_power(const struct SrCell *cell,
                                struct SrComplex lambda,
                                size_t k,
                                struct SrMonodromy *out);

/**
 * `r_k` from the monodromy matrix.
 *
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_reflection_k(const struct SrCell *cell,
                              struct SrComplex lambda,
                              size_t k,
                              struct SrComplex *out);

/**
 * `r_k` from the interface recursion.
 *
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_reflection_via_q(const struct SrCell *cell,
                                  struct SrComplex lambda,
                                  size_t k,
                                  struct SrComplex *out);

/**
 * `|t_k|^2` at a real frequency.
 *
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_transmission_sq(const struct SrCell *cell, double lambda, size_t k, double *out);

/**
 * Reflection coefficient of the half-infinite medium for `Im lambda >= 0`.
 * `on_band` may be null.
 *
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes; `on_band`
 * must be null or valid for writes.
 */
enum SrStatus sr_reflection_half_infinite(const struct SrCell *cell,
                                          struct SrComplex lambda,
                                          struct SrComplex *out,
                                          bool *on_band);

/**
 * Bands in `[0, lambda_max]`. Free with `sr_band_list_free`.
 *
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_find_bands(const struct SrCell *cell, double lambda_max, struct SrBandList **out);

/**
 * Number of bands, 0 for a null list.
 *
 * # Safety
 * `list` must be null or a live handle.
 */
size_t sr_band_list_len(const struct SrBandList *list);

/**
 * # Safety
 * `list` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_band_list_get(const struct SrBandList *list, size_t i, struct SrBand *out);

/**
 * # Safety
 * `list` must be null or a handle from `sr_find_bands` not yet freed.
 */
void sr_band_list_free(struct SrBandList *list);

/**
 * Resonances of the `k`-cell slab with `re_min <= Re <= re_max` and
 * `Im >= im_min`. Free with `sr_resonance_list_free`.
 *
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_find_resonances(const struct SrCell *cell,
                                 size_t k,
                                 double re_min,
                                 double re_max,
                                 double im_min,
                                 struct SrResonanceList **out);

/**
 * Number of resonances, 0 for a null list.
 *
 * # Safety
 * `list` must be null or a live handle.
 */
size_t sr_resonance_list_len(const struct SrResonanceList *list);

/**
 * # Safety
 * `list` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_resonance_list_get(const struct SrResonanceList *list,
                                    size_t i,
                                    struct SrResonance *out);

/**
 * # Safety
 * `list` must be null or a handle from `sr_find_resonances` not yet freed.
 */
void sr_resonance_list_free(struct SrResonanceList *list);

/**
 * Zero count of the resonance function below `band`, by the argument
 * principle.
 *
 * # Safety
 * `cell` must be a live handle; `band` must be readable; `out` must be
 * valid for writes.
 */
enum SrStatus sr_audit_count(const struct SrCell *cell,
                             size_t k,
                             const struct SrBand *band,
                             double margin,
                             double im_floor,
                             size_t *out);

/**
 * Fixed points of the cell-adding map of a commensurate cell.
 *
 * # Safety
 * `cell` must be a live handle; `out` must be valid for writes.
 */
enum SrStatus sr_fixed_points(const struct SrCell *cell, double lambda, struct SrFixedPoints *out);

/**
 * Message for the last failed call on this thread, empty after a success.
 * Valid until the next call on the same thread.
 */
const char *sr_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SLABRES_H */
