#ifndef ENDOTRIV_H
#define ENDOTRIV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum EtStatus {
  ET_STATUS_OK = 0,
  ET_STATUS_NULL_POINTER = 1,
  ET_STATUS_INVALID_UTF8 = 2,
  ET_STATUS_PARSE = 3,
  ET_STATUS_INVALID_ARGUMENT = 4,
  ET_STATUS_SCALE = 5,
  ET_STATUS_NOT_SEMIDIHEDRAL = 6,
  ET_STATUS_ROUTE_DISAGREEMENT = 7,
  ET_STATUS_UNDECIDED = 8,
  ET_STATUS_INTERNAL = 9,
  ET_STATUS_PANIC = 10,
} EtStatus;

/**
 * Opaque permutation group.
 */
typedef struct EtGroup EtGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Valid until
 * the next call into the library on the same thread.
 */
const char *et_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *et_version(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 * `s` must come from this library and not be freed twice.
 */
void et_string_free(char *s);

/**
 * Parses `.grp` text into a new group handle.
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum EtStatus et_group_from_grp_text(const char *text, struct EtGroup **out);

/**
 * Builds a group from `n_gens` image arrays of length `degree`, stored
 * consecutively in `images` (0-based points).
 * `images` must point to `degree * n_gens` values; `out` must be writable.
 */
enum EtStatus et_group_from_images(size_t degree,
                                   const uint32_t *images,
                                   size_t n_gens,
                                   struct EtGroup **out);

/**
 * Releases a group handle. NULL is ignored.
 * `g` must come from this library and not be freed twice.
 */
void et_group_free(struct EtGroup *g);

/**
 * Number of points acted on, or 0 for NULL.
 * `g` must be NULL or a live handle.
 */
size_t et_group_degree(const struct EtGroup *g);

/**
 * Group order as a decimal string.
 * `g` must be a live handle; `out` must be writable.
 */
enum EtStatus et_group_order(const struct EtGroup *g, char **out);

/**
 * Runs the full analysis and returns the JSON report. `green_cap` of 0
 * selects the default induction cap.
 * `g` must be a live handle; `out` must be writable.
 */
enum EtStatus et_analyze_json(const struct EtGroup *g,
                              uint32_t field_exp,
                              bool skip_green,
                              size_t green_cap,
                              char **out);

/**
 * `K_G°` data for a Sylow 2-subgroup, as JSON.
 * `g` must be a live handle; `out` must be writable.
 */
enum EtStatus et_kgc_json(const struct EtGroup *g, char **out);

/**
 * Runs the 3.M10 reproduction. `all_pass` receives whether every check
 * agreed; `out` (optional) receives the JSON record.
 * `all_pass` must be writable; `out` must be NULL or writable.
 */
enum EtStatus et_reproduce_3m10_json(bool *all_pass, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENDOTRIV_H */
