#ifndef PARLINES_H
#define PARLINES_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 How the offset polynomial is obtained.
 */
typedef enum PlMethod {
  /*
   Substitution into the general polynomial.
   */
  PL_METHOD_CLOSED_FORM = 0,
  /*
   Gröbner elimination of the foot point.
   */
  PL_METHOD_ELIMINATION = 1,
} PlMethod;

/*
 Kind of a singular point.
 */
typedef enum PlPointTag {
  PL_POINT_TAG_VIRTUAL = 0,
  PL_POINT_TAG_ON_CURVE = 1,
  PL_POINT_TAG_SPLIT = 2,
} PlPointTag;

/*
 Position of the offset relative to the critical offset.
 */
typedef enum PlRegime {
  PL_REGIME_SUBCRITICAL = 0,
  PL_REGIME_CRITICAL = 1,
  PL_REGIME_SUPERCRITICAL = 2,
} PlRegime;

/*
 Result codes.
 */
typedef enum PlStatus {
  PL_STATUS_OK = 0,
  /*
   A required pointer argument was NULL.
   */
  PL_STATUS_NULL_ARGUMENT = 1,
  /*
   Invalid parameters or unparsable input.
   */
  PL_STATUS_INVALID_ARGUMENT = 2,
  /*
   A Gröbner computation hit its pair or degree limit.
   */
  PL_STATUS_RESOURCE_LIMIT = 3,
  /*
   Elimination, root isolation or Newton refinement failed.
   */
  PL_STATUS_NUMERICAL = 4,
  /*
   File or serialization failure.
   */
  PL_STATUS_IO = 5,
  /*
   An index was out of range or a buffer too small.
   */
  PL_STATUS_OUT_OF_RANGE = 6,
  /*
   A bug in the library (a caught panic).
   */
  PL_STATUS_INTERNAL = 7,
} PlStatus;

/*
 A parabola, ellipse or hyperbola with exact parameters.
 */
typedef struct PlConic PlConic;

/*
 A layered quadrilateral mesh.
 */
typedef struct PlMesh PlMesh;

/*
 An offset polynomial g(x, y) together with its conic and offset.
 */
typedef struct PlOffsetCurve PlOffsetCurve;

/*
 Singular points of the offset curve.
 */
typedef struct PlSingularReport PlSingularReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the most recent failure on this thread (empty after a success).
 The pointer stays valid until the next library call on the same thread; do not free it.
 */
const char *pl_last_error(void);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and must not be used afterwards.
 */
void pl_string_free(char *s);

/*
 Library version as a static NUL-terminated string.
 */
const char *pl_version(void);

/*
 Creates a conic. `kind` is `"parabola"`, `"ellipse"` or `"hyperbola"`; the parabola needs `p`,
 the others `a` and `b` (unused parameters may be NULL).

 # Safety
 String arguments must be NULL or NUL-terminated; `out` must be writable.
 */
enum PlStatus pl_conic_new(const char *kind,
                           const char *p,
                           const char *a,
                           const char *b,
                           struct PlConic **out);

/*
 # Safety
 `conic` must be NULL or a handle from [`pl_conic_new`] not yet freed.
 */
void pl_conic_free(struct PlConic *conic);

/*
 Critical offset as an exact rational string, e.g. `"2/3"`.

 # Safety
 `conic` must be a live handle; `out` must be writable.
 */
enum PlStatus pl_conic_r_crit(const struct PlConic *conic, char **out);

/*
 Regime of the offset `r` for this conic.

 # Safety
 `conic` must be a live handle; `r` NUL-terminated; `out` writable.
 */
enum PlStatus pl_conic_regime(const struct PlConic *conic, const char *r, enum PlRegime *out);

/*
 Computes the offset polynomial at distance `r`.

 # Safety
 `conic` must be a live handle; `r` NUL-terminated; `out` writable.
 */
enum PlStatus pl_offset_poly(const struct PlConic *conic,
                             const char *r,
                             enum PlMethod method,
                             struct PlOffsetCurve **out);

/*
 # Safety
 `curve` must be NULL or a handle from [`pl_offset_poly`] not yet freed.
 */
void pl_offset_free(struct PlOffsetCurve *curve);

/*
 The polynomial in human-readable form, e.g. `"331776 x^6 - ..."`.

 # Safety
 `curve` must be a live handle; `out` writable.
 */
enum PlStatus pl_offset_to_string(const struct PlOffsetCurve *curve, char **out);

/*
 The polynomial in the JSON form `{"vars":[...],"terms":[{"exp":[...],"num":"..","den":".."}]}`.

 # Safety
 `curve` must be a live handle; `out` writable.
 */
enum PlStatus pl_offset_to_json(const struct PlOffsetCurve *curve, char **out);

/*
 Number of terms and total degree of g.

 # Safety
 `curve` must be a live handle; the out-pointers writable.
 */
enum PlStatus pl_offset_shape(const struct PlOffsetCurve *curve, size_t *terms, uint32_t *degree);

/*
 Evaluates g(x, y) in floating point.

 # Safety
 `curve` must be a live handle; `out` writable.
 */
enum PlStatus pl_offset_eval(const struct PlOffsetCurve *curve, double x, double y, double *out);

/*
 Singular points of the offset curve at distance `r`; `use_elimination` selects the Gröbner
 route instead of the closed forms.

 # Safety
 `conic` must be a live handle; `r` NUL-terminated; `out` writable.
 */
enum PlStatus pl_singular_points(const struct PlConic *conic,
                                 const char *r,
                                 bool use_elimination,
                                 struct PlSingularReport **out);

/*
 # Safety
 `report` must be NULL or a handle from [`pl_singular_points`] not yet freed.
 */
void pl_singular_free(struct PlSingularReport *report);

/*
 Number of real singular points, number of complex ones and the regime.

 # Safety
 `report` must be a live handle; the out-pointers writable.
 */
enum PlStatus pl_singular_summary(const struct PlSingularReport *report,
                                  size_t *real_count,
                                  size_t *complex_count,
                                  enum PlRegime *regime_out);

/*
 Coordinates and tag of the `index`-th real singular point.

 # Safety
 `report` must be a live handle; the out-pointers writable.
 */
enum PlStatus pl_singular_point(const struct PlSingularReport *report,
                                size_t index,
                                double *x,
                                double *y,
                                enum PlPointTag *tag);

/*
 The full report as JSON.

 # Safety
 `report` must be a live handle; `out` writable.
 */
enum PlStatus pl_singular_to_json(const struct PlSingularReport *report, char **out);

/*
 Builds the layered mesh around the ellipse `(a, b)` (rational strings) with decimal offsets
 (ascending) and y stations (descending).

 # Safety
 `a`, `b` NUL-terminated; `offsets` and `stations` point to the given number of doubles;
 `out` writable.
 */
enum PlStatus pl_mesh_new(const char *a,
                          const char *b,
                          const double *offsets,
                          size_t n_offsets,
                          const double *stations,
                          size_t n_stations,
                          struct PlMesh **out);

/*
 # Safety
 `mesh` must be NULL or a handle from [`pl_mesh_new`] not yet freed.
 */
void pl_mesh_free(struct PlMesh *mesh);

/*
 Node matrix dimensions and element counts.

 # Safety
 `mesh` must be a live handle; the out-pointers writable.
 */
enum PlStatus pl_mesh_dims(const struct PlMesh *mesh,
                           size_t *rows,
                           size_t *cols,
                           size_t *n_quad4,
                           size_t *n_quad9);

/*
 Copies node coordinates, row-major, as `x0, y0, x1, y1, ...` (`2 * rows * cols` doubles).

 # Safety
 `mesh` must be a live handle; `buf` must hold `len` doubles.
 */
enum PlStatus pl_mesh_nodes(const struct PlMesh *mesh, double *buf, size_t len);

/*
 Copies the four-node elements (`4 * n_quad4` zero-based node indices).

 # Safety
 `mesh` must be a live handle; `buf` must hold `len` values.
 */
enum PlStatus pl_mesh_quad4(const struct PlMesh *mesh, size_t *buf, size_t len);

/*
 Copies the nine-node elements (`9 * n_quad9` zero-based node indices).

 # Safety
 `mesh` must be a live handle; `buf` must hold `len` values.
 */
enum PlStatus pl_mesh_quad9(const struct PlMesh *mesh, size_t *buf, size_t len);

/*
 The mesh in its JSON exchange form.

 # Safety
 `mesh` must be a live handle; `out` writable.
 */
enum PlStatus pl_mesh_to_json(const struct PlMesh *mesh, char **out);

/*
 Re-derives a published instance (`"1"`..`"9"`, `"appendixA"`, `"appendixB"`, `"mesh"`).
 `pass` receives the overall verdict and `report_json` the per-check report.

 # Safety
 `id` NUL-terminated; the out-pointers writable.
 */
enum PlStatus pl_verify_paper(const char *id, bool *pass, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARLINES_H */
