#ifndef LEMPERT_H
#define LEMPERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum LempertStatus {
  LEMPERT_STATUS_OK = 0,
  LEMPERT_STATUS_NULL_POINTER = 1,
  LEMPERT_STATUS_INVALID_UTF8 = 2,
  LEMPERT_STATUS_PARSE = 3,
  LEMPERT_STATUS_DOMAIN = 4,
  LEMPERT_STATUS_DEGENERATE = 5,
  LEMPERT_STATUS_INFEASIBLE = 6,
  LEMPERT_STATUS_NOT_BALANCED = 7,
  LEMPERT_STATUS_NO_LEFT_INVERSE = 8,
  LEMPERT_STATUS_POLE = 9,
  LEMPERT_STATUS_INVALID_ARGUMENT = 10,
  LEMPERT_STATUS_BUFFER_TOO_SMALL = 11,
  LEMPERT_STATUS_CHECK_FAILED = 12,
  LEMPERT_STATUS_INTERNAL = 13,
  LEMPERT_STATUS_PANIC = 14,
} LempertStatus;

typedef enum LempertDomain {
  LEMPERT_DOMAIN_DISC = 0,
  LEMPERT_DOMAIN_BIDISC = 1,
  LEMPERT_DOMAIN_SYM_BIDISC = 2,
} LempertDomain;

// Opaque datum handle.
typedef struct LempertDatum LempertDatum;

// Opaque handle to a certified complex geodesic.
typedef struct LempertGeodesic LempertGeodesic;

typedef struct LempertComplex {
  double re;
  double im;
} LempertComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// is valid until the next call into this library on the same thread.
const char *lempert_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be NULL or a pointer obtained from this library and not yet freed.
void lempert_string_free(char *s);

// Poincaré distance between two points of the disc.
//
// # Safety
// `out` must be NULL or valid for writes.
enum LempertStatus lempert_poincare_distance(struct LempertComplex z1,
                                             struct LempertComplex z2,
                                             double *out);

// Poincaré metric `|v| / (1 - |z|²)`.
//
// # Safety
// `out` must be NULL or valid for writes.
enum LempertStatus lempert_poincare_metric(struct LempertComplex z,
                                           struct LempertComplex v,
                                           double *out);

// Evaluates `e^{iθ}(z - a)/(1 - āz)`.
//
// # Safety
// `out` must be NULL or valid for writes.
enum LempertStatus lempert_moebius_apply(double theta,
                                         struct LempertComplex a,
                                         struct LempertComplex z,
                                         struct LempertComplex *out);

// Whether `(s, p)` lies in the symmetrized bidisc.
bool lempert_in_g(struct LempertComplex s, struct LempertComplex p);

// `(z + w, zw)`; writes two complex numbers to `out`.
//
// # Safety
// `out` must be NULL or valid for writing two elements.
enum LempertStatus lempert_symmetrize(struct LempertComplex z,
                                      struct LempertComplex w,
                                      struct LempertComplex *out);

// `Φ_ω(s, p) = (2ωp - s)/(2 - ωs)` with `ω = e^{iθ}`.
//
// # Safety
// `out` must be NULL or valid for writes.
enum LempertStatus lempert_phi(double theta,
                               struct LempertComplex s,
                               struct LempertComplex p,
                               struct LempertComplex *out);

// Parses a JSON datum into a new handle.
//
// # Safety
// `json` must be NULL or a NUL-terminated string; `out` must be NULL or valid for writes.
enum LempertStatus lempert_datum_from_json(const char *json, struct LempertDatum **out);

// Serializes a datum; release the result with [`lempert_string_free`].
//
// # Safety
// `datum` must be NULL or a live handle; `out` must be NULL or valid for writes.
enum LempertStatus lempert_datum_to_json(const struct LempertDatum *datum, char **out);

// # Safety
// `datum` must be NULL or a live handle; `out` must be NULL or valid for writes.
enum LempertStatus lempert_datum_domain(const struct LempertDatum *datum, enum LempertDomain *out);

// # Safety
// `datum` must be NULL or a handle from [`lempert_datum_from_json`] not yet freed.
void lempert_datum_free(struct LempertDatum *datum);

// Carathéodory value on the bidisc; bit `j - 1` of `extremal_mask` is set
// when the coordinate `F^j` is extremal.
//
// # Safety
// `datum` must be NULL or a live handle; outputs must be NULL or valid for writes.
enum LempertStatus lempert_car_bidisc(const struct LempertDatum *datum,
                                      double *value,
                                      uint32_t *extremal_mask);

// Carathéodory value on the symmetrized bidisc with its argmax angles.
//
// Up to `capacity` angles are written to `argmax`; `count` receives the
// total, and [`LempertStatus::BufferTooSmall`] is returned if it exceeds
// `capacity`. `flat` is set when every angle is extremal.
//
// # Safety
// `datum` must be NULL or a live handle; `argmax` must be valid for
// `capacity` writes (or NULL with `capacity == 0`); other outputs must be
// NULL or valid for writes.
enum LempertStatus lempert_car_g(const struct LempertDatum *datum,
                                 uint32_t grid_size,
                                 bool refine,
                                 double *value,
                                 double *argmax,
                                 uintptr_t capacity,
                                 uintptr_t *count,
                                 bool *flat);

// Carathéodory and Kobayashi values of a JSON datum as a JSON report
// `{"domain","car","kob","extremal","flat"}`.
//
// # Safety
// `json` must be NULL or a NUL-terminated string; `out` must be NULL or valid for writes.
enum LempertStatus lempert_dist_json(const char *json, char **out);

// Runs a named verification suite with the given seed and default
// tolerances; the JSON report is written to `out` even when the suite fails
// ([`LempertStatus::CheckFailed`]).
//
// # Safety
// `suite` must be NULL or a NUL-terminated string; `out` must be NULL or valid for writes.
enum LempertStatus lempert_check_suite(const char *suite, uint64_t seed, char **out);

// Geodesic `{(ζ, m(ζ))}` of a balanced bidisc datum, with left inverse `F¹`.
//
// # Safety
// `datum` must be NULL or a live handle; `out` must be NULL or valid for writes.
enum LempertStatus lempert_geodesic_balanced(const struct LempertDatum *datum,
                                             struct LempertGeodesic **out);

// Geodesic `ζ ↦ (ζ + m(ζ), ζ·m(ζ))` of the symmetrized bidisc for
// `m(z) = e^{iθ}(z - a)/(1 - āz)`.
//
// # Safety
// `out` must be NULL or valid for writes.
enum LempertStatus lempert_geodesic_symmetrized(double theta,
                                                struct LempertComplex a,
                                                struct LempertGeodesic **out);

// Writes `k(ζ)` (two complex numbers) to `out`.
//
// # Safety
// `g` must be NULL or a live handle; `out` must be NULL or valid for writing two elements.
enum LempertStatus lempert_geodesic_eval(const struct LempertGeodesic *g,
                                         struct LempertComplex zeta,
                                         struct LempertComplex *out);

// Applies the left inverse `C` to a point given by two complex numbers.
//
// # Safety
// `g` must be NULL or a live handle; `point` must be NULL or valid for
// reading two elements; `out` must be NULL or valid for writes.
enum LempertStatus lempert_geodesic_left_inverse(const struct LempertGeodesic *g,
                                                 const struct LempertComplex *point,
                                                 struct LempertComplex *out);

// Grid residual `sup |C(k(ζ)) - ζ|`, or NaN for a NULL handle.
//
// # Safety
// `g` must be NULL or a live handle.
double lempert_geodesic_residual(const struct LempertGeodesic *g);

// Angle of `ω` in the left inverse `μ ∘ Φ_ω`; NaN for bidisc geodesics.
//
// # Safety
// `g` must be NULL or a live handle.
double lempert_geodesic_omega_angle(const struct LempertGeodesic *g);

// # Safety
// `g` must be NULL or a handle from this library not yet freed.
void lempert_geodesic_free(struct LempertGeodesic *g);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEMPERT_H */
