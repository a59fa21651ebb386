/* Generated by cbindgen from src/lib.rs; do not edit. */

#ifndef SPECTRA_CERT_H
#define SPECTRA_CERT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Certificate kinds accepted by [`spectra_certify`].
 */
typedef enum SpectraKind {
  SPECTRA_KIND_INERTIA = 0,
  SPECTRA_KIND_PSD = 1,
  SPECTRA_KIND_PD_FACTOR = 2,
  SPECTRA_KIND_GAP = 3,
  SPECTRA_KIND_SPECTRUM = 4,
  SPECTRA_KIND_MU = 5,
  SPECTRA_KIND_ORACLE_CHECK = 6,
} SpectraKind;

/**
 * Pivot selection rule of the congruence diagonalization.
 */
typedef enum SpectraPivot {
  /**
   * Largest diagonal magnitude, ties to the lowest index.
   */
  SPECTRA_PIVOT_MAX = 0,
  /**
   * First nonzero diagonal entry.
   */
  SPECTRA_PIVOT_FIRST = 1,
} SpectraPivot;

/**
 * Result code of every fallible function.
 */
typedef enum SpectraStatus {
  SPECTRA_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SPECTRA_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  SPECTRA_STATUS_INVALID_UTF8 = 2,
  /**
   * The matrix text or a rational literal could not be parsed.
   */
  SPECTRA_STATUS_PARSE_ERROR = 3,
  /**
   * The matrix is not symmetric (Hermitian in Hermitian mode).
   */
  SPECTRA_STATUS_SYMMETRY_ERROR = 4,
  /**
   * A positive-definite certificate was requested for a matrix that is not.
   */
  SPECTRA_STATUS_NOT_POSITIVE_DEFINITE = 5,
  /**
   * The precision was missing or not positive.
   */
  SPECTRA_STATUS_INVALID_PRECISION = 6,
  /**
   * The matrix exceeds the characteristic-polynomial size limit.
   */
  SPECTRA_STATUS_SIZE_LIMIT_EXCEEDED = 7,
  /**
   * A certificate failed verification.
   */
  SPECTRA_STATUS_VERIFICATION_FAILED = 8,
  /**
   * An enum argument was out of range.
   */
  SPECTRA_STATUS_INVALID_ARGUMENT = 9,
  /**
   * Any other mathematical precondition failed.
   */
  SPECTRA_STATUS_DOMAIN_ERROR = 10,
  /**
   * An internal error; please report it.
   */
  SPECTRA_STATUS_INTERNAL = 11,
} SpectraStatus;

/**
 * Opaque handle to a parsed symmetric or Hermitian matrix.
 */
typedef struct SpectraMatrix SpectraMatrix;

/**
 * Counts of positive, negative and zero eigenvalues.
 */
typedef struct SpectraInertia {
  size_t n_plus;
  size_t n_minus;
  size_t n_zero;
} SpectraInertia;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a matrix in the text format (`rows cols` header, then rows of
 * rationals; Gaussian rationals such as `1/2-3i` when `hermitian` is true).
 *
 * On success `*out` receives a handle that must be released with
 * [`spectra_matrix_free`].
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum SpectraStatus spectra_matrix_parse(const char *text,
                                        bool hermitian,
                                        struct SpectraMatrix **out);

/**
 * Releases a matrix handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle from [`spectra_matrix_parse`] not yet freed.
 */
void spectra_matrix_free(struct SpectraMatrix *m);

/**
 * Dimension of the matrix, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t spectra_matrix_dim(const struct SpectraMatrix *m);

/**
 * Whether the matrix was parsed in Hermitian mode.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
bool spectra_matrix_is_hermitian(const struct SpectraMatrix *m);

/**
 * Computes the inertia with the given pivot rule (a [`SpectraPivot`] value).
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum SpectraStatus spectra_inertia(const struct SpectraMatrix *m,
                                   int pivot,
                                   struct SpectraInertia *out);

/**
 * Decides positive semidefiniteness.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum SpectraStatus spectra_is_psd(const struct SpectraMatrix *m, bool *out);

/**
 * Counts eigenvalues strictly below `t` and equal to `t`, where `t` is a
 * rational literal such as `"-3/4"`.
 *
 * # Safety
 * `m` must be a live handle, `t` a nul-terminated string and `below`,
 * `equal` valid pointers.
 */
enum SpectraStatus spectra_count_below(const struct SpectraMatrix *m,
                                       const char *t,
                                       size_t *below,
                                       size_t *equal);

/**
 * Produces a certificate document (JSON, the same bytes the command-line
 * tool prints). `kind` is a [`SpectraKind`] value and `pivot` a
 * [`SpectraPivot`] value. `eps` is a positive rational literal, required for
 * [`SpectraKind::Spectrum`] and [`SpectraKind::Mu`] and ignored otherwise
 * (it may be null then).
 *
 * On success `*out_json` receives a string to release with
 * [`spectra_string_free`].
 *
 * # Safety
 * `m` must be a live handle, `eps` null or a nul-terminated string and
 * `out_json` a valid pointer.
 */
enum SpectraStatus spectra_certify(const struct SpectraMatrix *m,
                                   int kind,
                                   const char *eps,
                                   int pivot,
                                   char **out_json);

/**
 * Verifies a certificate document. Strict mode (the default, `lenient`
 * false) also checks the digest, the canonical encoding and that a fresh
 * recomputation reproduces the document.
 *
 * Returns [`SpectraStatus::Ok`] if the document verifies and
 * [`SpectraStatus::VerificationFailed`] if not. If `out_report` is not null
 * it receives the JSON verification report on success (release with
 * [`spectra_string_free`]) and null otherwise.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out_report` null or valid.
 */
enum SpectraStatus spectra_verify(const char *json, bool lenient, char **out_report);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void spectra_string_free(char *s);

/**
 * Message describing the most recent failure on the calling thread, or null
 * if the last call succeeded. Valid until the next call into this library on
 * the same thread; do not free.
 */
const char *spectra_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *spectra_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRA_CERT_H */
