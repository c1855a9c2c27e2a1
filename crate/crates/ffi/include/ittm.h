#ifndef ITTM_H
#define ITTM_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum IttmStatus {
  IttmStatus_Ok = 0,
  IttmStatus_NullPointer = 1,
  IttmStatus_InvalidUtf8 = 2,
  IttmStatus_Validation = 3,
  IttmStatus_Internal = 4,
} IttmStatus;

/**
 * An assembled program behind an opaque handle.
 */
typedef struct IttmProgram IttmProgram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer previously returned through one of this
 * library's out-parameters, not yet freed.
 */
void ittm_string_free(char *s);

/**
 * Parse an ordinal literal and return its canonical form.
 *
 * # Safety
 * `literal` must be a valid NUL-terminated string; `out` must be a valid
 * pointer to receive the result.
 */
enum IttmStatus ittm_ordinal_normalize(const char *literal, char **out);

/**
 * Compare two ordinal literals: -1, 0 or 1 through `out`.
 *
 * # Safety
 * All pointers must be valid as in `ittm_ordinal_normalize`.
 */
enum IttmStatus ittm_ordinal_compare(const char *a, const char *b, int32_t *out);

/**
 * Ordinal sum of two literals.
 *
 * # Safety
 * Pointer contracts as in `ittm_ordinal_normalize`.
 */
enum IttmStatus ittm_ordinal_add(const char *a, const char *b, char **out);

/**
 * Ordinal product of two literals.
 *
 * # Safety
 * Pointer contracts as in `ittm_ordinal_normalize`.
 */
enum IttmStatus ittm_ordinal_mul(const char *a, const char *b, char **out);

/**
 * Rank of the pair (a, b) in the Goedel order.
 *
 * # Safety
 * Pointer contracts as in `ittm_ordinal_normalize`.
 */
enum IttmStatus ittm_godel_pair(const char *a, const char *b, char **out);

/**
 * Invert the Goedel pairing: both coordinates through out-pointers.
 *
 * # Safety
 * Pointer contracts as in `ittm_ordinal_normalize`.
 */
enum IttmStatus ittm_godel_unpair(const char *rank, char **out_left, char **out_right);

/**
 * Assemble program source text into an opaque handle.
 *
 * # Safety
 * `source` must be a valid NUL-terminated string; `out` a valid pointer.
 */
enum IttmStatus ittm_program_assemble(const char *source, struct IttmProgram **out);

/**
 * Build a catalog program, e.g. name "move_right" with args [3].
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `args` must point to
 * `args_len` values (or be null when `args_len` is 0); `out` must be a
 * valid pointer.
 */
enum IttmStatus ittm_program_from_catalog(const char *name,
                                          const int64_t *args,
                                          size_t args_len,
                                          struct IttmProgram **out);

/**
 * Release a program handle.
 *
 * # Safety
 * `prog` must be null or a handle from this library, not yet freed.
 */
void ittm_program_free(struct IttmProgram *prog);

/**
 * The canonical transition-table serialization of a program.
 *
 * # Safety
 * `prog` must be a live handle; `out` a valid pointer.
 */
enum IttmStatus ittm_program_table(const struct IttmProgram *prog, char **out);

/**
 * Run a program and return the outcome record as JSON.
 *
 * `input_spec` follows the CLI grammar (`empty`, `ones:...`,
 * `canonical:<ordinal>`); `param` may be null; `convention` is
 * "distinguished" or "liminf".
 *
 * # Safety
 * `prog` must be a live handle; string arguments must be valid
 * NUL-terminated strings (or null where documented); `out_json` must be a
 * valid pointer.
 */
enum IttmStatus ittm_run(const struct IttmProgram *prog,
                         const char *alpha,
                         const char *input_spec,
                         const char *param,
                         uint64_t budget_steps,
                         uint64_t budget_jumps,
                         const char *convention,
                         char **out_json);

/**
 * Validate an alpha-code given as JSON; the verdict record comes back as
 * JSON.
 *
 * # Safety
 * `code_json` must be a valid NUL-terminated string; `out_json` a valid
 * pointer.
 */
enum IttmStatus ittm_validate_code(const char *code_json, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ITTM_H */
