#ifndef HOMRES_H
#define HOMRES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HomresStatus {
  HOMRES_STATUS_OK = 0,
  /**
   * A null pointer, invalid UTF-8 or a buffer that is too small.
   */
  HOMRES_STATUS_INVALID_ARGUMENT = 1,
  HOMRES_STATUS_MALFORMED = 2,
  HOMRES_STATUS_UNKNOWN_NAME = 3,
  /**
   * An algebra, module or morphism failed validation.
   */
  HOMRES_STATUS_INVALID = 4,
  HOMRES_STATUS_HYPOTHESIS = 5,
  /**
   * Any other failed certificate or computation.
   */
  HOMRES_STATUS_FAILED = 6,
  HOMRES_STATUS_PANIC = 7,
} HomresStatus;

/**
 * A loaded workspace.
 */
typedef struct HomresWorkspace HomresWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null.
 */
const char *homres_last_error(void);

/**
 * Parses and validates a workspace from JSON text.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum HomresStatus homres_workspace_from_json(const char *json, struct HomresWorkspace **out);

/**
 * The built-in fixture workspace.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HomresStatus homres_workspace_fixtures(struct HomresWorkspace **out);

/**
 * # Safety
 * `ws` must come from this library and not be used afterwards; null is
 * ignored.
 */
void homres_workspace_free(struct HomresWorkspace *ws);

/**
 * The canonical JSON of a workspace; free with [`homres_string_free`].
 *
 * # Safety
 * `ws` must be a live workspace and `out` a valid pointer.
 */
enum HomresStatus homres_workspace_to_json(const struct HomresWorkspace *ws, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards; null is
 * ignored.
 */
void homres_string_free(char *s);

/**
 * `dim Hom(source, target)`; module arguments accept `A+B` sums.
 *
 * # Safety
 * Pointers must be valid; strings nul-terminated.
 */
enum HomresStatus homres_hom_dim(const struct HomresWorkspace *ws,
                                 const char *source,
                                 const char *target,
                                 size_t *out);

/**
 * `dim Ext^i(source, target)` for `i = 0..=upto`, written to `dims`,
 * which must hold `upto + 1` entries.
 *
 * # Safety
 * Pointers must be valid; `dims` must point to `len` writable entries.
 */
enum HomresStatus homres_ext_dims(const struct HomresWorkspace *ws,
                                  const char *source,
                                  const char *target,
                                  size_t upto,
                                  size_t *dims,
                                  size_t len);

/**
 * Whether `module` lies in the subcategory (a workspace name or
 * `add(A, B)`).
 *
 * # Safety
 * Pointers must be valid; strings nul-terminated.
 */
enum HomresStatus homres_in_add(const struct HomresWorkspace *ws,
                                const char *subcategory,
                                const char *module,
                                bool *out);

/**
 * Whether a named sequence is exact at every interior position.
 *
 * # Safety
 * Pointers must be valid; strings nul-terminated.
 */
enum HomresStatus homres_is_exact(const struct HomresWorkspace *ws,
                                  const char *sequence,
                                  bool *out);

/**
 * The Gorenstein dimension of `module` relative to a self-orthogonal
 * subcategory, or -1 when the bounds within `bound` do not agree.
 *
 * # Safety
 * Pointers must be valid; strings nul-terminated.
 */
enum HomresStatus homres_gdim(const struct HomresWorkspace *ws,
                              const char *subcategory,
                              const char *module,
                              size_t bound,
                              int64_t *out);

/**
 * Runs the command line with `argv[0..argc]` (without the program name).
 * The report is written to `report` (free with [`homres_string_free`])
 * and the exit code to `code`. Files named by `--out` and `--dot` are not
 * written.
 *
 * # Safety
 * `argv` must point to `argc` nul-terminated strings; out-pointers valid.
 */
enum HomresStatus homres_cli_run(const char *const *argv,
                                 size_t argc,
                                 char **report,
                                 uint8_t *code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMRES_H */
