#ifndef MODEGEN_H
#define MODEGEN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MgStatus {
  MG_STATUS_OK = 0,
  MG_STATUS_NULL_POINTER = 1,
  MG_STATUS_INVALID_UTF8 = 2,
  MG_STATUS_WRONG_KIND = 3,
  MG_STATUS_PARSE = 4,
  MG_STATUS_IO = 5,
  MG_STATUS_DIMENSION_MISMATCH = 6,
  MG_STATUS_ALGEBRA_MISMATCH = 7,
  MG_STATUS_FIELD_MISMATCH = 8,
  MG_STATUS_NOT_SUBMODULE = 9,
  MG_STATUS_NOT_HOMOMORPHISM = 10,
  MG_STATUS_UNDECIDED = 11,
  MG_STATUS_NO_LIFT = 12,
  MG_STATUS_VECTOR_MISMATCH = 13,
  MG_STATUS_FIELD_TOO_SMALL = 14,
  MG_STATUS_VERIFICATION_FAILED = 15,
  MG_STATUS_TOO_LARGE = 16,
  MG_STATUS_INVALID_INPUT = 17,
  MG_STATUS_OTHER = 18,
  MG_STATUS_PANIC = 19,
} MgStatus;

/**
 * Opaque handle to a parsed document.
 */
typedef struct MgDocument MgDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or null.
 * The pointer stays valid until the next call into the library on the same thread.
 */
const char *mg_last_error(void);

/**
 * Parses one JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out_doc` a valid pointer.
 */
enum MgStatus mg_document_parse(const char *json, struct MgDocument **out_doc);

/**
 * Reads and parses a document file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out_doc` a valid pointer.
 */
enum MgStatus mg_document_read(const char *path, struct MgDocument **out_doc);

/**
 * # Safety
 * `doc` must come from this library and not have been freed. Null is ignored.
 */
void mg_document_free(struct MgDocument *doc);

/**
 * Canonical single-line text of the document; free with [`mg_string_free`].
 *
 * # Safety
 * `d` must be a live document and `out_json` a valid pointer.
 */
enum MgStatus mg_document_print(const struct MgDocument *d, char **out_json);

/**
 * # Safety
 * `s` must come from this library. Null is ignored.
 */
void mg_string_free(char *s);

/**
 * The document kind, e.g. `"certificate"`. Static storage; never null for a live document.
 *
 * # Safety
 * `d` must be a live document or null.
 */
const char *mg_document_kind(const struct MgDocument *d);

/**
 * Re-checks every invariant of the document, ladders and certificates included.
 *
 * # Safety
 * `d` must be a live document and `out_valid` a valid pointer.
 */
enum MgStatus mg_document_validate(const struct MgDocument *d, bool *out_valid);

/**
 * `[M, N]`, the dimension of the homomorphism space.
 *
 * # Safety
 * `m`, `n` must be live representation documents and `out_dim` a valid pointer.
 */
enum MgStatus mg_hom_dim(const struct MgDocument *m, const struct MgDocument *n, size_t *out_dim);

/**
 * `[N, N] - [M, M]`.
 *
 * # Safety
 * `m`, `n` must be live representation documents and `out_codim` a valid pointer.
 */
enum MgStatus mg_codim(const struct MgDocument *m, const struct MgDocument *n, int64_t *out_codim);

/**
 * Isomorphism test; `Undecided` is reported as a status, not as `false`.
 *
 * # Safety
 * `m`, `n` must be live representation documents and `out_iso` a valid pointer.
 */
enum MgStatus mg_is_isomorphic(const struct MgDocument *m,
                               const struct MgDocument *n,
                               uint64_t seed,
                               bool *out_iso);

/**
 * Whether an invertible upper-triangular intertwiner exists between two triangular representations.
 *
 * # Safety
 * `a`, `b` must be live representation documents and `out_iso` a valid pointer.
 */
enum MgStatus mg_series_isomorphic(const struct MgDocument *a,
                                   const struct MgDocument *b,
                                   bool *out_iso);

/**
 * Pushes a submodule of `M` through a certificate, returning the certificate for `M' <=deg N'`.
 *
 * # Safety
 * `cert` and `sub` must be live documents and `out_doc` a valid pointer.
 */
enum MgStatus mg_push_submodule(const struct MgDocument *cert,
                                const struct MgDocument *sub,
                                struct MgDocument **out_doc);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODEGEN_H */
