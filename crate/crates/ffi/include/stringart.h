#ifndef STRINGART_H
#define STRINGART_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum StringartStatus {
  STRINGART_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  STRINGART_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  STRINGART_STATUS_INVALID_UTF8 = 2,
  /**
   * An expression or rational could not be parsed.
   */
  STRINGART_STATUS_PARSE_ERROR = 3,
  /**
   * The arguments were well-formed but not acceptable (e.g. `d <= 0`).
   */
  STRINGART_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The computation could not be carried out for these inputs.
   */
  STRINGART_STATUS_MATH_ERROR = 5,
  /**
   * An internal error; the library state is unaffected.
   */
  STRINGART_STATUS_PANIC = 6,
} StringartStatus;

/**
 * Built-in families for [`stringart_envelope`].
 */
typedef enum StringartFamily {
  STRINGART_FAMILY_CROSS = 0,
  STRINGART_FAMILY_DIAGONAL = 1,
  STRINGART_FAMILY_CORNER = 2,
  /**
   * Constrained ladder family; `d` is the ladder length.
   */
  STRINGART_FAMILY_LADDER = 3,
} StringartFamily;

typedef enum StringartConicClass {
  STRINGART_CONIC_CLASS_CIRCLE = 0,
  STRINGART_CONIC_CLASS_ELLIPSE = 1,
  STRINGART_CONIC_CLASS_PARABOLA = 2,
  STRINGART_CONIC_CLASS_HYPERBOLA = 3,
  STRINGART_CONIC_CLASS_TWO_INTERSECTING_LINES = 4,
  STRINGART_CONIC_CLASS_TWO_PARALLEL_LINES = 5,
  STRINGART_CONIC_CLASS_COINCIDENT_LINES = 6,
  STRINGART_CONIC_CLASS_SINGLE_POINT = 7,
  STRINGART_CONIC_CLASS_EMPTY_SET = 8,
} StringartConicClass;

typedef enum StringartScene {
  STRINGART_SCENE_SQUARE4 = 0,
  STRINGART_SCENE_CROSS = 1,
  STRINGART_SCENE_DIAGONAL = 2,
  STRINGART_SCENE_CORNER = 3,
  STRINGART_SCENE_EMPTY = 4,
} StringartScene;

/**
 * Opaque normalized plane curve `P(x, y) = 0`.
 */
typedef struct StringartCurve StringartCurve;

/**
 * Opaque polynomial with exact rational coefficients.
 */
typedef struct StringartPolynomial StringartPolynomial;

/**
 * Opaque outcome of a proof.
 */
typedef struct StringartProof StringartProof;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null after a
 * success. The pointer stays valid until the next call on this thread.
 */
const char *stringart_last_error(void);

/**
 * Library version as a static string.
 */
const char *stringart_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void stringart_string_free(char *s);

/**
 * Parses a polynomial or an equation `lhs = rhs` (stored as `lhs - rhs`).
 *
 * # Safety
 * `expr` is a NUL-terminated string; `out` is writable.
 */
enum StringartStatus stringart_poly_parse(const char *expr, struct StringartPolynomial **out);

/**
 * # Safety
 * `p` is null or a live polynomial handle.
 */
void stringart_poly_free(struct StringartPolynomial *p);

/**
 * Canonical text of the polynomial.
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
enum StringartStatus stringart_poly_to_string(const struct StringartPolynomial *p, char **out);

/**
 * Exact value at `(x, y)`; the polynomial may not involve other variables.
 *
 * # Safety
 * `p` is a live handle; `x`, `y` are NUL-terminated; `out` is writable.
 */
enum StringartStatus stringart_poly_eval(const struct StringartPolynomial *p,
                                         const char *x,
                                         const char *y,
                                         char **out);

/**
 * Curve `p = 0`, normalized to its primitive square-free part.
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
enum StringartStatus stringart_curve_new(const struct StringartPolynomial *p,
                                         struct StringartCurve **out);

/**
 * # Safety
 * `c` is null or a live curve handle.
 */
void stringart_curve_free(struct StringartCurve *c);

/**
 * The curve as an equation, e.g. `x^2+20*y+100 = 0`.
 *
 * # Safety
 * `c` is a live handle; `out` is writable.
 */
enum StringartStatus stringart_curve_to_string(const struct StringartCurve *c, char **out);

/**
 * Total degree of the curve.
 *
 * # Safety
 * `c` is a live handle; `out` is writable.
 */
enum StringartStatus stringart_curve_degree(const struct StringartCurve *c, uint32_t *out);

/**
 * Envelope of a built-in family with constant `d`.
 *
 * # Safety
 * `d` is NUL-terminated; `out` is writable.
 */
enum StringartStatus stringart_envelope(enum StringartFamily family,
                                        const char *d,
                                        struct StringartCurve **out);

/**
 * Envelope of the custom family `poly = 0`, linear in x and y, with
 * parameter `param`.
 *
 * # Safety
 * `param` is NUL-terminated; `poly` is a live handle; `out` is writable.
 */
enum StringartStatus stringart_envelope_custom(const char *param,
                                               const struct StringartPolynomial *poly,
                                               struct StringartCurve **out);

/**
 * Affine class of a degree-2 curve.
 *
 * # Safety
 * `c` is a live handle; `out` is writable.
 */
enum StringartStatus stringart_classify(const struct StringartCurve *c,
                                        enum StringartConicClass *out);

/**
 * Tangency of the diagonal strings to their parabola via the discriminant.
 *
 * # Safety
 * `d` is NUL-terminated; `out` is writable.
 */
enum StringartStatus stringart_prove_discriminant(const char *d, struct StringartProof **out);

/**
 * The identity `x_C - d = x_C''` for the diagonal intersections.
 *
 * # Safety
 * `d` is NUL-terminated; `out` is writable.
 */
enum StringartStatus stringart_prove_calculus(const char *d, struct StringartProof **out);

/**
 * Every member of the family touches `curve`.
 *
 * # Safety
 * `curve` is a live handle; `d` is NUL-terminated; `out` is writable.
 */
enum StringartStatus stringart_prove_tangency(const struct StringartCurve *curve,
                                              enum StringartFamily family,
                                              const char *d,
                                              struct StringartProof **out);

/**
 * The focus reflected in every member lies on the directrix. `focus` is
 * `"x,y"` and `directrix` is `"a,b,c"` for `a*x + b*y + c = 0`.
 *
 * # Safety
 * String arguments are NUL-terminated; `out` is writable.
 */
enum StringartStatus stringart_prove_reflection(enum StringartFamily family,
                                                const char *d,
                                                const char *focus,
                                                const char *directrix,
                                                struct StringartProof **out);

/**
 * # Safety
 * `p` is null or a live proof handle.
 */
void stringart_proof_free(struct StringartProof *p);

/**
 * Whether the witness polynomial is identically zero.
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
enum StringartStatus stringart_proof_success(const struct StringartProof *p, bool *out);

/**
 * The witness polynomial as text (`"0"` when the proof holds).
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
enum StringartStatus stringart_proof_witness(const struct StringartProof *p, char **out);

/**
 * SVG of a built-in scene with its envelopes, default viewbox and the
 * given grid resolution (at least 8).
 *
 * # Safety
 * `d` is NUL-terminated; `out` is writable.
 */
enum StringartStatus stringart_render_scene(enum StringartScene scene,
                                            const char *d,
                                            uint32_t grid,
                                            char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRINGART_H */
