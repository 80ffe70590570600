#ifndef PATHEND_H
#define PATHEND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PathendClass {
  PATHEND_CLASS_END = 0,
  PATHEND_CLASS_W_END = 1,
  PATHEND_CLASS_S_END = 2,
  PATHEND_CLASS_SW_END = 3,
  PATHEND_CLASS_AUT = 4,
} PathendClass;

typedef enum PathendFamilyName {
  PATHEND_FAMILY_NAME_A_PRIME = 0,
  PATHEND_FAMILY_NAME_A_DOUBLE_PRIME = 1,
  PATHEND_FAMILY_NAME_A = 2,
  PATHEND_FAMILY_NAME_B = 3,
  PATHEND_FAMILY_NAME_SW_GENS = 4,
} PathendFamilyName;

/**
 * Result code of every fallible call.
 */
typedef enum PathendStatus {
  PATHEND_STATUS_OK = 0,
  PATHEND_STATUS_NULL_POINTER = 1,
  PATHEND_STATUS_INVALID_ARGUMENT = 2,
  PATHEND_STATUS_PARSE = 3,
  PATHEND_STATUS_OUT_OF_RANGE = 4,
  PATHEND_STATUS_SIZE_MISMATCH = 5,
  PATHEND_STATUS_CAP_EXCEEDED = 6,
  PATHEND_STATUS_NOT_IN_CLASS = 7,
  PATHEND_STATUS_NOT_REGULAR = 8,
  PATHEND_STATUS_UNSUPPORTED = 9,
  PATHEND_STATUS_INTERNAL = 10,
} PathendStatus;

/**
 * Opaque generator family.
 */
typedef struct PathendFamily PathendFamily;

/**
 * Opaque sorted set of transformations.
 */
typedef struct PathendMonoidSet PathendMonoidSet;

/**
 * Opaque transformation of `{1,…,n}`.
 */
typedef struct PathendTransformation PathendTransformation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *pathend_last_error(void);

/**
 * Static description of a status code.
 */
const char *pathend_status_message(enum PathendStatus status);

/**
 * Frees a string returned by this library. Null is ignored.
 */
void pathend_string_free(char *s);

/**
 * Parses `"2,1,2,3"`-style text.
 */
enum PathendStatus pathend_transformation_parse(const char *text,
                                                struct PathendTransformation **out);

/**
 * Builds a transformation from `n` one-based images.
 */
enum PathendStatus pathend_transformation_from_images(const size_t *images,
                                                      size_t n,
                                                      struct PathendTransformation **out);

/**
 * Releases a transformation. Null is ignored.
 */
void pathend_transformation_free(struct PathendTransformation *t);

/**
 * Number of vertices, or 0 for a null handle.
 */
size_t pathend_transformation_n(const struct PathendTransformation *t);

/**
 * Image of the one-based vertex `x`.
 */
enum PathendStatus pathend_transformation_apply(const struct PathendTransformation *t,
                                                size_t x,
                                                size_t *out);

enum PathendStatus pathend_transformation_to_string(const struct PathendTransformation *t,
                                                    char **out);

/**
 * Left-to-right product: `x ↦ (x a) b`.
 */
enum PathendStatus pathend_transformation_compose(const struct PathendTransformation *a,
                                                  const struct PathendTransformation *b,
                                                  struct PathendTransformation **out);

enum PathendStatus pathend_transformation_is_in_class(const struct PathendTransformation *t,
                                                      enum PathendClass class_,
                                                      bool *out);

enum PathendStatus pathend_transformation_inversion_count(const struct PathendTransformation *t,
                                                          size_t *out);

/**
 * Whether `t` is regular in `class` (`End` or `wEnd`).
 */
enum PathendStatus pathend_transformation_is_regular(const struct PathendTransformation *t,
                                                     enum PathendClass class_,
                                                     bool *out);

/**
 * An endomorphism `β` with `t β t = t`; `PATHEND_STATUS_NOT_REGULAR` if none exists.
 */
enum PathendStatus pathend_transformation_pseudo_inverse(const struct PathendTransformation *t,
                                                         struct PathendTransformation **out);

/**
 * Materializes a class; subject to the enumeration cap.
 */
enum PathendStatus pathend_enumerate(enum PathendClass class_,
                                     size_t n,
                                     struct PathendMonoidSet **out);

void pathend_set_free(struct PathendMonoidSet *set);

/**
 * Number of elements, or 0 for a null handle.
 */
size_t pathend_set_len(const struct PathendMonoidSet *set);

/**
 * A copy of element `index` (zero-based, lexicographic order).
 */
enum PathendStatus pathend_set_get(const struct PathendMonoidSet *set,
                                   size_t index,
                                   struct PathendTransformation **out);

enum PathendStatus pathend_set_contains(const struct PathendMonoidSet *set,
                                        const struct PathendTransformation *t,
                                        bool *out);

/**
 * `|End P_n|` or `|wEnd P_n|` as a decimal string.
 */
enum PathendStatus pathend_count_dp(enum PathendClass class_, size_t n, char **out);

/**
 * `|wEnd P_n|` from the closed formula, as a decimal string.
 */
enum PathendStatus pathend_wend_count(size_t n, char **out);

/**
 * Rank of `End`, `wEnd` or `swEnd` of `P_n`.
 */
enum PathendStatus pathend_rank_formula(enum PathendClass class_, size_t n, size_t *out);

/**
 * Whether every structural check passes for `P_n`.
 */
enum PathendStatus pathend_verify_structure(size_t n, bool *out);

enum PathendStatus pathend_family(enum PathendFamilyName name,
                                  size_t n,
                                  struct PathendFamily **out);

void pathend_family_free(struct PathendFamily *fam);

size_t pathend_family_len(const struct PathendFamily *fam);

/**
 * A copy of member `index`.
 */
enum PathendStatus pathend_family_get(const struct PathendFamily *fam,
                                      size_t index,
                                      struct PathendTransformation **out);

/**
 * Label of member `index`, such as `"alpha_2"`; owned by the family, null if out of range.
 */
const char *pathend_family_label(const struct PathendFamily *fam, size_t index);

/**
 * Whether the family generates the whole class.
 */
enum PathendStatus pathend_family_generates(const struct PathendFamily *fam,
                                            enum PathendClass class_,
                                            bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATHEND_H */
