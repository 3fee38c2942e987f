#ifndef CENTROIDKIT_H
#define CENTROIDKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C API call.
 */
typedef enum CkStatus {
  /**
   * The call succeeded.
   */
  CkOk = 0,
  /**
   * A required pointer argument was null.
   */
  CkNullArgument = 1,
  /**
   * An input string was not valid UTF-8.
   */
  CkBadUtf8 = 2,
  /**
   * The JSON did not describe a valid algebra.
   */
  CkParseError = 3,
  /**
   * The computation itself reported an error.
   */
  CkMathError = 4,
} CkStatus;

/**
 * Opaque handle to a Lie algebra with rational structure constants.
 */
typedef struct CkAlgebra CkAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Never null; empty
 * when no error has occurred. Valid until the next ck_ call here.
 */
const char *ck_last_error(void);

/**
 * Parses an algebra JSON document into a new handle. On success writes
 * the handle to `out` and returns CkOk; the handle must be freed with
 * ck_algebra_free.
 *
 * # Safety
 * `json` must be NUL-terminated and `out` must be a valid pointer.
 */
enum CkStatus ck_algebra_parse(const char *json, struct CkAlgebra **out);

/**
 * Releases a handle returned by ck_algebra_parse. Null is a no-op.
 *
 * # Safety
 * `a` must be null or a pointer from ck_algebra_parse, freed once.
 */
void ck_algebra_free(struct CkAlgebra *a);

/**
 * Dimension of the algebra, or 0 for a null handle.
 */
uintptr_t ck_algebra_dim(const struct CkAlgebra *a);

/**
 * Writes the centroid dimension to `out`.
 */
enum CkStatus ck_algebra_centroid_dim(const struct CkAlgebra *a, uintptr_t *out);

/**
 * Writes the centre dimension to `out`.
 */
enum CkStatus ck_algebra_centre_dim(const struct CkAlgebra *a, uintptr_t *out);

/**
 * Writes the dimension of the derived subalgebra to `out`.
 */
enum CkStatus ck_algebra_derived_dim(const struct CkAlgebra *a, uintptr_t *out);

/**
 * Writes the dimensions of Der(L) and of the inner derivations.
 */
enum CkStatus ck_algebra_derivation_dims(const struct CkAlgebra *a,
                                         uintptr_t *der,
                                         uintptr_t *inner);

/**
 * Writes dim Z^2, dim B^2, and dim H^2 with trivial coefficients.
 */
enum CkStatus ck_algebra_h2(const struct CkAlgebra *a, uintptr_t *z2, uintptr_t *b2, uintptr_t *h2);

/**
 * Writes 1 to `out` when the algebra equals its derived subalgebra.
 */
enum CkStatus ck_algebra_is_perfect(const struct CkAlgebra *a, bool *out);

/**
 * Serializes the algebra back to canonical JSON. The string must be
 * released with ck_string_free.
 */
enum CkStatus ck_algebra_to_json(const struct CkAlgebra *a, char **out);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library, freed once.
 */
void ck_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CENTROIDKIT_H */
