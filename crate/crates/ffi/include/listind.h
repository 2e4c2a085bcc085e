#ifndef LISTIND_H
#define LISTIND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every exported function.
 */
typedef enum ListindStatus {
  LISTIND_STATUS_OK = 0,
  LISTIND_STATUS_NULL_POINTER = 1,
  LISTIND_STATUS_INVALID_UTF8 = 2,
  LISTIND_STATUS_PARSE = 3,
  LISTIND_STATUS_OUT_OF_RANGE = 4,
  LISTIND_STATUS_EVALUATION = 5,
  LISTIND_STATUS_PANIC = 6,
} ListindStatus;

/**
 * Transfinite list of length below ω^ω.
 */
typedef struct ListindList ListindList;

/**
 * Ordinal below ω^ω.
 */
typedef struct ListindOrdinal ListindOrdinal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *listind_last_error(void);

/**
 * Releases a string returned through an out-pointer. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be freed twice.
 */
void listind_string_free(char *s);

/**
 * Parses Cantor normal form or an ordinal expression, e.g. `w^2*3+w+1`.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum ListindStatus listind_ordinal_parse(const char *src, struct ListindOrdinal **out);

/**
 * # Safety
 * `o` must be NULL or a handle from this library that was not freed.
 */
void listind_ordinal_free(struct ListindOrdinal *o);

/**
 * `a + b`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ListindStatus listind_ordinal_add(const struct ListindOrdinal *a,
                                       const struct ListindOrdinal *b,
                                       struct ListindOrdinal **out);

/**
 * `a · b`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ListindStatus listind_ordinal_mul(const struct ListindOrdinal *a,
                                       const struct ListindOrdinal *b,
                                       struct ListindOrdinal **out);

/**
 * The unique `c` with `b + c = a`; `OUT_OF_RANGE` when `b > a`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ListindStatus listind_ordinal_sub_left(const struct ListindOrdinal *a,
                                            const struct ListindOrdinal *b,
                                            struct ListindOrdinal **out);

/**
 * Writes -1, 0 or 1.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ListindStatus listind_ordinal_compare(const struct ListindOrdinal *a,
                                           const struct ListindOrdinal *b,
                                           int32_t *out);

/**
 * Cantor normal form text; free with `listind_string_free`.
 *
 * # Safety
 * `o` must be live; `out` must be writable.
 */
enum ListindStatus listind_ordinal_to_string(const struct ListindOrdinal *o, char **out);

/**
 * Parses list literal syntax, e.g. `rep(N(0),[1]~N(4)).[2]`.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum ListindStatus listind_list_parse(const char *src, struct ListindList **out);

/**
 * # Safety
 * `l` must be NULL or a handle from this library that was not freed.
 */
void listind_list_free(struct ListindList *l);

/**
 * `a ⌢ b`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ListindStatus listind_list_concat(const struct ListindList *a,
                                       const struct ListindList *b,
                                       struct ListindList **out);

/**
 * Length as an ordinal handle.
 *
 * # Safety
 * `l` must be live; `out` must be writable.
 */
enum ListindStatus listind_list_length(const struct ListindList *l, struct ListindOrdinal **out);

/**
 * Entry at position `xi`; `OUT_OF_RANGE` when `xi` is not below the length.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ListindStatus listind_list_at(const struct ListindList *l,
                                   const struct ListindOrdinal *xi,
                                   uint64_t *out);

/**
 * `l ↑ beta`; `OUT_OF_RANGE` when `beta` exceeds the length.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ListindStatus listind_list_suffix(const struct ListindList *l,
                                       const struct ListindOrdinal *beta,
                                       struct ListindList **out);

/**
 * Equality of the denoted sequences.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum ListindStatus listind_list_equal(const struct ListindList *a,
                                      const struct ListindList *b,
                                      bool *out);

/**
 * Canonical literal text; free with `listind_string_free`.
 *
 * # Safety
 * `l` must be live; `out` must be writable.
 */
enum ListindStatus listind_list_to_string(const struct ListindList *l, char **out);

/**
 * Truth value of a formula in a model (`m1:<step>` or `m2`) under an
 * assignment such as `X=N(0); y=3`. `assignment` may be NULL for none.
 *
 * # Safety
 * Strings must be NUL-terminated; `out` must be writable.
 */
enum ListindStatus listind_eval(const char *model,
                                const char *formula,
                                const char *assignment,
                                bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LISTIND_H */
