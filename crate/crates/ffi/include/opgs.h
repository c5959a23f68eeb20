#ifndef OPGS_H
#define OPGS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OpgsStatus {
  OPGS_STATUS_OK = 0,
  OPGS_STATUS_NULL_ARGUMENT = 1,
  OPGS_STATUS_INVALID_UTF8 = 2,
  OPGS_STATUS_SYNTAX = 3,
  OPGS_STATUS_UNKNOWN_SYSTEM = 4,
  OPGS_STATUS_INVALID_CONFIG = 5,
  OPGS_STATUS_BUDGET_EXCEEDED = 6,
  OPGS_STATUS_INCONSISTENT = 7,
  OPGS_STATUS_PANIC = 8,
} OpgsStatus;

typedef enum OpgsOrder {
  OPGS_ORDER_PD = 0,
  OPGS_ORDER_UPD = 1,
  OPGS_ORDER_DLEX = 2,
} OpgsOrder;

// A rewriting system built from a catalog entry or a system file.
typedef struct OpgsSystem OpgsSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Loads a catalog system (`DRB`, `ID0`, `uDRB`, `DRB'`, ...).  `lambda` is
// a decimal integer or fraction such as `"1/2"`; null means 1.
//
// # Safety
// String arguments are null or NUL-terminated; `out` is writable.
enum OpgsStatus opgs_system_from_catalog(const char *name,
                                         const char *lambda_text,
                                         bool unital,
                                         struct OpgsSystem **out);

// Parses a system in the text format accepted by `opgs --system FILE`.
//
// # Safety
// String arguments are null or NUL-terminated; `out` is writable.
enum OpgsStatus opgs_system_from_text(const char *source,
                                      const char *lambda_text,
                                      bool unital,
                                      struct OpgsSystem **out);

// # Safety
// `sys` is null or a handle not yet freed.
void opgs_system_free(struct OpgsSystem *sys);

// Name of the system.
//
// # Safety
// `sys` is a live handle; `out` is writable.
enum OpgsStatus opgs_system_name(const struct OpgsSystem *sys, char **out);

// Normal form of `expr`.  `alphabet` is a comma- or `<`-separated list of
// generators in increasing order; null infers it from `expr`.
//
// # Safety
// `sys` is a live handle; strings are null or NUL-terminated; `out` is writable.
enum OpgsStatus opgs_normal_form(const struct OpgsSystem *sys,
                                 const char *expr,
                                 const char *alphabet_spec,
                                 size_t budget,
                                 char **out);

// Checks all compositions among instances with arguments of weight
// `<= bound` over the first `generators` of x, y, z.  Writes the verdict to
// `passed` and, when `report` is non-null, the JSON report.
//
// # Safety
// `sys` is a live handle; `passed` is writable; `report` is null or writable.
enum OpgsStatus opgs_gs_check(const struct OpgsSystem *sys,
                              size_t bound,
                              uint32_t generators,
                              bool *passed,
                              char **report);

// Compares two words under the [`OpgsOrder`] given by `order`; writes
// -1, 0 or 1.
//
// # Safety
// Strings are null or NUL-terminated; `out` is writable.
enum OpgsStatus opgs_compare(const char *u,
                             const char *v,
                             const char *alphabet_spec,
                             int32_t order,
                             int32_t *out);

// Number of irreducible words of each weight `0..=bound` over `generators`
// generators.  Writes `min(bound + 1, capacity)` counts to `counts` and
// `bound + 1` to `written`.
//
// # Safety
// `sys` is a live handle; `counts` has room for `capacity` values; `written` is writable.
enum OpgsStatus opgs_basis_counts(const struct OpgsSystem *sys,
                                  uint32_t generators,
                                  size_t bound,
                                  uint64_t *counts,
                                  size_t capacity,
                                  size_t *written);

// Message for the last non-OK status on this thread, or null.  The
// pointer stays valid until the next call into this library on the thread.
const char *opgs_last_error_message(void);

// # Safety
// `s` is null or a string returned by this library, not yet freed.
void opgs_string_free(char *s);

// Library version, static.
const char *opgs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPGS_H */
