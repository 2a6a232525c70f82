#ifndef DCC_H
#define DCC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_MALFORMED = 2,
  DC_STATUS_INVALID_UTF8 = 3,
  DC_STATUS_NOT_AN_ARC = 4,
  DC_STATUS_SEGMENT_OUT_OF_RANGE = 5,
  DC_STATUS_INVALID_T_STRUCTURE = 6,
  DC_STATUS_ZERO_MORPHISM = 7,
  DC_STATUS_DOMAIN = 8,
  DC_STATUS_PANIC = 9,
  /**
   * Well-formed JSON describing an invalid value.
   */
  DC_STATUS_INVALID_VALUE = 10,
} DcStatus;

typedef enum DcPointKind {
  DC_POINT_KIND_MARKED = 0,
  DC_POINT_KIND_ACC = 1,
} DcPointKind;

/**
 * Opaque validated t-structure.
 */
typedef struct DcTStructure DcTStructure;

/**
 * `index` is ignored for accumulation points.
 */
typedef struct DcPoint {
  enum DcPointKind kind;
  uint32_t segment;
  int64_t index;
} DcPoint;

typedef struct DcArc {
  struct DcPoint a;
  struct DcPoint b;
} DcArc;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *dc_last_error(void);

/**
 * Release a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void dc_string_free(char *s);

/**
 * `dim Hom(x, y)`.
 *
 * # Safety
 * Pointers must be valid for reads or writes of their types.
 */
enum DcStatus dc_hom_dim(const struct DcArc *x, const struct DcArc *y, uint8_t *out);

/**
 * `dim Ext¹(x, y)`.
 *
 * # Safety
 * Pointers must be valid for reads or writes of their types.
 */
enum DcStatus dc_ext1_dim(const struct DcArc *x, const struct DcArc *y, uint8_t *out);

/**
 * `Σⁿx`, normalised.
 *
 * # Safety
 * Pointers must be valid for reads or writes of their types.
 */
enum DcStatus dc_suspend(const struct DcArc *x, int64_t n, struct DcArc *out);

/**
 * Parse and validate a decorated partition given as JSON.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum DcStatus dc_tstructure_from_json(const char *json, struct DcTStructure **out);

/**
 * # Safety
 * `t` must come from this library and not have been freed. Null is ignored.
 */
void dc_tstructure_free(struct DcTStructure *t);

/**
 * JSON of a t-structure; free with [`dc_string_free`].
 *
 * # Safety
 * Pointers must be valid.
 */
enum DcStatus dc_tstructure_to_json(const struct DcTStructure *t, char **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum DcStatus dc_tstructure_n(const struct DcTStructure *t, uint32_t *out);

/**
 * Whether `x` lies in `Σᵖ` of the aisle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum DcStatus dc_aisle_member(const struct DcTStructure *t,
                              const struct DcArc *x,
                              int64_t shift,
                              bool *out);

/**
 * Whether `x` lies in `Σᵖ` of the coaisle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum DcStatus dc_coaisle_member(const struct DcTStructure *t,
                                const struct DcArc *x,
                                int64_t shift,
                                bool *out);

/**
 * New handle for the largest aisle inside the coaisle of `t`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum DcStatus dc_largest_aisle(const struct DcTStructure *t, struct DcTStructure **out);

/**
 * Completion membership of `x`. `block` receives the certifying block id,
 * or 0 when `member` is false.
 *
 * # Safety
 * Pointers must be valid.
 */
enum DcStatus dc_completion_member(const struct DcTStructure *t,
                                   const struct DcArc *x,
                                   bool *member,
                                   uint32_t *block);

/**
 * Hom dimension between arcs of the completion.
 *
 * # Safety
 * Pointers must be valid.
 */
enum DcStatus dc_hom_completed_dim(const struct DcArc *x, const struct DcArc *y, uint8_t *out);

/**
 * Kreweras complement of a partition given as JSON; the result is JSON to be
 * freed with [`dc_string_free`].
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum DcStatus dc_kreweras_json(const char *json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DCC_H */
