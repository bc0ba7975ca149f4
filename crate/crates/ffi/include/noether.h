#ifndef NOETHER_H
#define NOETHER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  NOETHER_STATUS_OK = 0,
  NOETHER_STATUS_NULL_POINTER = 1,
  NOETHER_STATUS_INVALID_UTF8 = 2,
  NOETHER_STATUS_PARSE_ERROR = 3,
  NOETHER_STATUS_ORDER_OVERFLOW = 4,
  NOETHER_STATUS_ORDER_MISMATCH = 5,
  NOETHER_STATUS_MISSING_ASSIGNMENT = 6,
  NOETHER_STATUS_UNKNOWN_SYMMETRY = 7,
  NOETHER_STATUS_NOT_IN_SPAN = 8,
  NOETHER_STATUS_INVALID_ARGUMENT = 9,
  NOETHER_STATUS_PANIC = 10,
} NoetherStatus;

typedef enum {
  NOETHER_COORD_X = 0,
  NOETHER_COORD_Y = 1,
  NOETHER_COORD_T = 2,
} NoetherCoord;

/**
 * Opaque handle to a canonical polynomial expression.
 */
typedef struct NoetherExpr NoetherExpr;

/**
 * Opaque handle to the verification report of one symmetry.
 */
typedef struct NoetherReport NoetherReport;

/**
 * Message of the last failed call on this thread, or NULL.
 *
 * The pointer stays valid until the next call into this library on the same thread.
 */
const char *noether_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void noether_string_free(char *s);

/**
 * Parses `text` with the default order bound.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
NoetherStatus noether_expr_parse(const char *text, NoetherExpr **out);

/**
 * # Safety
 * `e` must be NULL or a handle from this library that has not been freed.
 */
void noether_expr_free(NoetherExpr *e);

/**
 * Canonical text of `e`, or NULL when `e` is NULL. Free with `noether_string_free`.
 *
 * # Safety
 * `e` must be NULL or a live handle.
 */
char *noether_expr_to_string(const NoetherExpr *e);

/**
 * # Safety
 * `e` must be NULL or a live handle.
 */
bool noether_expr_is_zero(const NoetherExpr *e);

/**
 * # Safety
 * `a` and `b` must be NULL or live handles.
 */
bool noether_expr_equal(const NoetherExpr *a, const NoetherExpr *b);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
NoetherStatus noether_expr_add(const NoetherExpr *a, const NoetherExpr *b, NoetherExpr **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
NoetherStatus noether_expr_sub(const NoetherExpr *a, const NoetherExpr *b, NoetherExpr **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
NoetherStatus noether_expr_mul(const NoetherExpr *a, const NoetherExpr *b, NoetherExpr **out);

/**
 * Total derivative of `e` in the given coordinate.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
NoetherStatus noether_expr_total_derivative(const NoetherExpr *e,
                                            NoetherCoord coord,
                                            NoetherExpr **out);

/**
 * Euler-Lagrange expression of a Lagrangian of order at most 2.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
NoetherStatus noether_expr_euler_operator(const NoetherExpr *e, NoetherExpr **out);

/**
 * Eliminates `u_xx` using the critical equation.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
NoetherStatus noether_expr_on_shell_reduce(const NoetherExpr *e, NoetherExpr **out);

/**
 * The builtin first-order Lagrangian.
 *
 * # Safety
 * `out` must be writable.
 */
NoetherStatus noether_lagrangian(NoetherExpr **out);

/**
 * `Δ_H u + u^3`.
 *
 * # Safety
 * `out` must be writable.
 */
NoetherStatus noether_equation(NoetherExpr **out);

/**
 * Verifies one catalog symmetry (`T`, `R`, `Xt`, `Yt`, `Z`, `V1`, `V2`, `V3`).
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
NoetherStatus noether_verify_symmetry(const char *name, NoetherReport **out);

/**
 * # Safety
 * `r` must be NULL or a report handle that has not been freed.
 */
void noether_report_free(NoetherReport *r);

/**
 * True when the defect and the on-shell residual of the constructed flux are zero.
 *
 * # Safety
 * `r` must be NULL or a live report handle.
 */
bool noether_report_engine_passed(const NoetherReport *r);

/**
 * True when the tabulated flux is present, conserved and equivalent to the constructed one.
 *
 * # Safety
 * `r` must be NULL or a live report handle.
 */
bool noether_report_paper_passed(const NoetherReport *r);

/**
 * # Safety
 * `r` must be a live report handle; `out` must be writable.
 */
NoetherStatus noether_report_defect(const NoetherReport *r, NoetherExpr **out);

/**
 * # Safety
 * `r` must be a live report handle; `out` must be writable.
 */
NoetherStatus noether_report_constructed_residual(const NoetherReport *r, NoetherExpr **out);

/**
 * Component `index` (0, 1 or 2) of the constructed flux.
 *
 * # Safety
 * `r` must be a live report handle; `out` must be writable.
 */
NoetherStatus noether_report_flux_component(const NoetherReport *r,
                                            size_t index,
                                            NoetherExpr **out);

/**
 * Machine-format report of the defect and constructed tiers for all catalog symmetries.
 *
 * `passed` receives whether every record passed.
 *
 * # Safety
 * `out` and `passed` must be writable.
 */
NoetherStatus noether_verify_all_machine(char **out, bool *passed);

/**
 * Number of entries where the computed bracket table differs from the published one.
 *
 * # Safety
 * `mismatches` must be writable.
 */
NoetherStatus noether_bracket_table_mismatches(size_t *mismatches);

#endif  /* NOETHER_H */
