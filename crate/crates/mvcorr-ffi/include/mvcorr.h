#ifndef MVCORR_H
#define MVCORR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MvcorrErrorCode {
  MvcorrErrorCode_Ok = 0,
  MvcorrErrorCode_NullArgument = 1,
  MvcorrErrorCode_InvalidUtf8 = 2,
  MvcorrErrorCode_Algebra = 3,
  MvcorrErrorCode_Parse = 4,
  MvcorrErrorCode_UnknownValue = 5,
  MvcorrErrorCode_Unsupported = 6,
  MvcorrErrorCode_Oracle = 7,
  MvcorrErrorCode_Panic = 8,
} MvcorrErrorCode;

typedef enum MvcorrAlbaStatus {
  MvcorrAlbaStatus_Success = 0,
  MvcorrAlbaStatus_Failure = 1,
  MvcorrAlbaStatus_NonTermination = 2,
} MvcorrAlbaStatus;

/**
 * The outcome of one ALBA run.
 */
typedef struct MvcorrAlbaResult MvcorrAlbaResult;

/**
 * A loaded finite Heyting algebra.
 */
typedef struct MvcorrAlgebra MvcorrAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Free it with
 * [`mvcorr_string_free`].
 */
char *mvcorr_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library that was not freed yet.
 */
void mvcorr_string_free(char *s);

/**
 * Loads a built-in algebra such as `bool2` or `paper-P`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum MvcorrErrorCode mvcorr_algebra_builtin(const char *name, struct MvcorrAlgebra **out);

/**
 * Loads an algebra from the text of an algebra file.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum MvcorrErrorCode mvcorr_algebra_load_json(const char *json, struct MvcorrAlgebra **out);

/**
 * # Safety
 * `alg` must be null or a handle from this library that was not freed yet.
 */
void mvcorr_algebra_free(struct MvcorrAlgebra *alg);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
uintptr_t mvcorr_algebra_size(const struct MvcorrAlgebra *alg);

/**
 * Hex SHA-256 of the operation tables, or null for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
char *mvcorr_algebra_fingerprint(const struct MvcorrAlgebra *alg);

/**
 * Classifies a formula or inequality and writes the classification report as JSON.
 *
 * # Safety
 * `alg` must be a live handle, `formula` a nul-terminated string and `out_json` a valid pointer.
 */
enum MvcorrErrorCode mvcorr_classify(const struct MvcorrAlgebra *alg,
                                     const char *formula,
                                     char **out_json);

/**
 * Runs ALBA on a formula or inequality at the named value.
 *
 * # Safety
 * `alg` must be a live handle, `formula` and `value` nul-terminated strings and `out` a valid pointer.
 */
enum MvcorrErrorCode mvcorr_alba_run(const struct MvcorrAlgebra *alg,
                                     const char *formula,
                                     const char *value,
                                     struct MvcorrAlbaResult **out);

/**
 * # Safety
 * `res` must be a live result handle.
 */
enum MvcorrAlbaStatus mvcorr_alba_status(const struct MvcorrAlbaResult *res);

/**
 * Display text of the correspondent, such as `a <= R(x,x)`, or null unless the run succeeded.
 *
 * # Safety
 * `res` must be null or a live result handle.
 */
char *mvcorr_alba_correspondent(const struct MvcorrAlbaResult *res);

/**
 * The run report as JSON: status, systems, trace and correspondent.
 *
 * # Safety
 * `res` must be null or a live result handle.
 */
char *mvcorr_alba_json(const struct MvcorrAlbaResult *res);

/**
 * # Safety
 * `res` must be null or a result handle that was not freed yet.
 */
void mvcorr_alba_free(struct MvcorrAlbaResult *res);

/**
 * Writes the display text of the Sahlqvist-van Benthem correspondent of a
 * classical Sahlqvist formula.
 *
 * # Safety
 * `alg` must be a live handle, `formula` a nul-terminated string and `out_text` a valid pointer.
 */
enum MvcorrErrorCode mvcorr_svb(const struct MvcorrAlgebra *alg,
                                const char *formula,
                                char **out_text);

/**
 * Checks on every frame with `sizes[0..n_sizes]` states that the input is
 * `value`-valid at a state exactly when `value <= fo` there, with the state
 * bound to `x`. `fo` is first-order text or a library name such as `reflexivity`.
 *
 * # Safety
 * `alg` must be a live handle, the strings nul-terminated, `sizes` valid for
 * `n_sizes` reads and `out_pass` a valid pointer.
 */
enum MvcorrErrorCode mvcorr_verify(const struct MvcorrAlgebra *alg,
                                   const char *formula,
                                   const char *value,
                                   const char *fo,
                                   const uintptr_t *sizes,
                                   uintptr_t n_sizes,
                                   bool *out_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MVCORR_H */
