#ifndef REPHULL_H
#define REPHULL_H

/* Generated by cbindgen from rephull-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible call.
typedef enum RephullStatus {
  REPHULL_STATUS_OK = 0,
  REPHULL_STATUS_NULL_POINTER = 1,
  REPHULL_STATUS_INVALID_ARGUMENT = 2,
  REPHULL_STATUS_NOT_CONVEX = 3,
  REPHULL_STATUS_CAP_EXCEEDED = 4,
  REPHULL_STATUS_HYPOTHESES_NOT_MET = 5,
  REPHULL_STATUS_BUFFER_TOO_SMALL = 6,
} RephullStatus;

// Opaque alphabet handle.
typedef struct RephullAlphabet RephullAlphabet;

// Opaque base handle.
typedef struct RephullBase RephullBase;

// Opaque point-cloud handle.
typedef struct RephullCloud RephullCloud;

// Opaque polygon handle.
typedef struct RephullPolygon RephullPolygon;

// Convexity verdict of the gap criterion. `witness_gap_index` is −1 when
// there is no witness gap (single-digit alphabets).
typedef struct RephullConvexityReport {
  uint8_t is_convex;
  double max_gap;
  double threshold;
  int64_t witness_gap_index;
} RephullConvexityReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates the base q = p·e^(2πi/n). Requires n ≥ 1 and p > 1.
//
// # Safety
// `out` must be a valid pointer. The returned handle must be released with
// [`rephull_base_free`].
enum RephullStatus rephull_base_new(uint32_t n, double p, struct RephullBase **out);

// # Safety
// `base` must come from [`rephull_base_new`] and not be freed twice.
void rephull_base_free(struct RephullBase *base);

// Creates an alphabet from `len` strictly increasing finite digits.
//
// # Safety
// `digits` must point to `len` readable doubles; `out` must be valid.
enum RephullStatus rephull_alphabet_new(const double *digits,
                                        size_t len,
                                        struct RephullAlphabet **out);

// # Safety
// `alphabet` must come from [`rephull_alphabet_new`] and not be freed twice.
void rephull_alphabet_free(struct RephullAlphabet *alphabet);

// Builds the base polygon (hull of the 2^n binary power sums).
//
// # Safety
// `base` must be a live handle; `out` must be valid.
enum RephullStatus rephull_base_polygon(const struct RephullBase *base,
                                        struct RephullPolygon **out);

// Builds the hull of the representable set for the alphabet.
//
// # Safety
// `base` and `alphabet` must be live handles; `out` must be valid.
enum RephullStatus rephull_lambda_hull(const struct RephullBase *base,
                                       const struct RephullAlphabet *alphabet,
                                       struct RephullPolygon **out);

// Convex hull of `npoints` points given as interleaved (re, im) pairs.
//
// # Safety
// `xy` must point to `2·npoints` readable doubles; `out` must be valid.
enum RephullStatus rephull_convex_hull(const double *xy,
                                       size_t npoints,
                                       struct RephullPolygon **out);

// The hull of `polygon ∪ (polygon + t)` for t = (tre, tim).
//
// # Safety
// `polygon` must be a live handle; `out` must be valid.
enum RephullStatus rephull_translate_hull(const struct RephullPolygon *polygon,
                                          double tre,
                                          double tim,
                                          struct RephullPolygon **out);

// Number of listed vertices (degenerate vertices included).
//
// # Safety
// `polygon` must be a live handle.
size_t rephull_polygon_len(const struct RephullPolygon *polygon);

// Number of extremal (non-degenerate) vertices.
//
// # Safety
// `polygon` must be a live handle.
size_t rephull_polygon_extremal_count(const struct RephullPolygon *polygon);

// Copies the vertices as interleaved (re, im) pairs into `xy_out`, which
// must hold at least `2·rephull_polygon_len(polygon)` doubles.
//
// # Safety
// `polygon` must be a live handle and `xy_out` writable for `cap` doubles.
enum RephullStatus rephull_polygon_vertices(const struct RephullPolygon *polygon,
                                            double *xy_out,
                                            size_t cap);

// Point-in-polygon test; writes 1 or 0 into `inside`. Fails with
// `NotConvex` on non-convex polygons.
//
// # Safety
// `polygon` must be a live handle and `inside` writable.
enum RephullStatus rephull_polygon_contains(const struct RephullPolygon *polygon,
                                            double re,
                                            double im,
                                            uint8_t *inside);

// # Safety
// `polygon` must come from this library and not be freed twice.
void rephull_polygon_free(struct RephullPolygon *polygon);

// Evaluates the gap criterion for convexity of the representable set.
//
// # Safety
// All pointers must be valid.
enum RephullStatus rephull_check_convex(const struct RephullBase *base,
                                        const struct RephullAlphabet *alphabet,
                                        struct RephullConvexityReport *out);

// Generates the depth-d cloud of truncated expansions. `dedup` thins
// coincident points.
//
// # Safety
// All pointers must be valid; the handle must be freed with
// [`rephull_cloud_free`].
enum RephullStatus rephull_cloud_new(const struct RephullBase *base,
                                     const struct RephullAlphabet *alphabet,
                                     uint32_t depth,
                                     uint8_t dedup,
                                     struct RephullCloud **out);

// # Safety
// `cloud` must be a live handle.
size_t rephull_cloud_len(const struct RephullCloud *cloud);

// Copies cloud points as interleaved (re, im) pairs.
//
// # Safety
// `cloud` must be a live handle and `xy_out` writable for `cap` doubles.
enum RephullStatus rephull_cloud_points(const struct RephullCloud *cloud,
                                        double *xy_out,
                                        size_t cap);

// # Safety
// `cloud` must come from [`rephull_cloud_new`] and not be freed twice.
void rephull_cloud_free(struct RephullCloud *cloud);

// Static description of a status code.
const char *rephull_status_message(enum RephullStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REPHULL_H */
