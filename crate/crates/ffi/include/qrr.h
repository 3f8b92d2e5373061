#ifndef QRR_H
#define QRR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QrrStatus {
  QRR_STATUS_OK = 0,
  /**
   * The checked difference has a nonzero coefficient.
   */
  QRR_STATUS_NONZERO = 1,
  QRR_STATUS_NULL_POINTER = 2,
  QRR_STATUS_INVALID_UTF8 = 3,
  QRR_STATUS_PARSE = 4,
  QRR_STATUS_EVAL = 5,
  QRR_STATUS_UNKNOWN_ID = 6,
  QRR_STATUS_ORDER_TOO_LOW = 7,
  QRR_STATUS_DATA = 8,
  QRR_STATUS_IO = 9,
  QRR_STATUS_OUT_OF_RANGE = 10,
  QRR_STATUS_PANIC = 11,
} QrrStatus;

/**
 * Result of comparing two expressions.
 */
typedef struct QrrOutcome QrrOutcome;

/**
 * A loaded identity catalogue.
 */
typedef struct QrrRegistry QrrRegistry;

/**
 * Nonzero terms of an evaluated expression on the `1/5` lattice.
 */
typedef struct QrrSeries QrrSeries;

/**
 * Library version as a static NUL-terminated string.
 */
const char *qrr_version(void);

/**
 * Message for the last failed call on this thread; empty if none.
 */
const char *qrr_last_error(void);

/**
 * Loads the built-in catalogue.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum QrrStatus qrr_registry_builtin(struct QrrRegistry **out);

/**
 * Loads a catalogue from a TOML file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum QrrStatus qrr_registry_load(const char *path, struct QrrRegistry **out);

/**
 * # Safety
 * `reg` must come from a `qrr_registry_*` constructor, or be null.
 */
void qrr_registry_free(struct QrrRegistry *reg);

/**
 * Number of entries; 0 for a null handle.
 *
 * # Safety
 * `reg` must be a live handle or null.
 */
size_t qrr_registry_len(const struct QrrRegistry *reg);

/**
 * Id of entry `index`, or null when out of range. Owned by `reg`.
 *
 * # Safety
 * `reg` must be a live handle or null.
 */
const char *qrr_registry_id(const struct QrrRegistry *reg, size_t index);

/**
 * Verifies entry `id` at `order` (fifths of q). Returns `Ok` for ZERO,
 * `Nonzero` otherwise; in both cases `*out` receives an outcome handle.
 *
 * # Safety
 * `reg` must be a live handle, `id` NUL-terminated, `out` writable.
 */
enum QrrStatus qrr_registry_verify(const struct QrrRegistry *reg,
                                   const char *id,
                                   int64_t order,
                                   struct QrrOutcome **out);

/**
 * Evaluates `expr` exactly below `q^(order/5)`. `reg` supplies `$NAME`
 * definitions and may be null.
 *
 * # Safety
 * `expr` must be NUL-terminated, `reg` live or null, `out` writable.
 */
enum QrrStatus qrr_expand(const struct QrrRegistry *reg,
                          const char *expr,
                          int64_t order,
                          struct QrrSeries **out);

/**
 * # Safety
 * `s` must come from `qrr_expand`, or be null.
 */
void qrr_series_free(struct QrrSeries *s);

/**
 * Number of nonzero terms.
 *
 * # Safety
 * `s` must be a live handle or null.
 */
size_t qrr_series_len(const struct QrrSeries *s);

/**
 * Exponent `num/den` and decimal coefficient of term `index`.
 * The coefficient string is owned by `s`.
 *
 * # Safety
 * `s` must be live; the out-pointers must be writable.
 */
enum QrrStatus qrr_series_term(const struct QrrSeries *s,
                               size_t index,
                               int64_t *num,
                               int64_t *den,
                               const char **coefficient);

/**
 * The series is exact below `q^(num/den)`.
 *
 * # Safety
 * `s` must be live; the out-pointers must be writable.
 */
enum QrrStatus qrr_series_bound(const struct QrrSeries *s, int64_t *num, int64_t *den);

/**
 * Compares two expressions below `q^(order/5)`; `reg` may be null.
 *
 * # Safety
 * Strings must be NUL-terminated, `reg` live or null, `out` writable.
 */
enum QrrStatus qrr_verify(const struct QrrRegistry *reg,
                          const char *lhs,
                          const char *rhs,
                          int64_t order,
                          struct QrrOutcome **out);

/**
 * # Safety
 * `o` must come from a verify call, or be null.
 */
void qrr_outcome_free(struct QrrOutcome *o);

/**
 * # Safety
 * `o` must be a live handle or null.
 */
bool qrr_outcome_is_zero(const struct QrrOutcome *o);

/**
 * Every coefficient below `q^(num/den)` was compared.
 *
 * # Safety
 * `o` must be live; the out-pointers must be writable.
 */
enum QrrStatus qrr_outcome_checked_below(const struct QrrOutcome *o, int64_t *num, int64_t *den);

/**
 * First nonzero term of the difference. Returns `OutOfRange` for a ZERO
 * outcome. The coefficient string is owned by `o`.
 *
 * # Safety
 * `o` must be live; the out-pointers must be writable.
 */
enum QrrStatus qrr_outcome_first_nonzero(const struct QrrOutcome *o,
                                         int64_t *num,
                                         int64_t *den,
                                         const char **coefficient);

/**
 * Checks a built-in partition relation for `n = 1..=max_n`. Returns `Ok`
 * when it holds at every judged `n`, `Nonzero` otherwise.
 *
 * # Safety
 * `id` must be NUL-terminated.
 */
enum QrrStatus qrr_partition_theorem(const char *id, uint64_t max_n);

#endif  /* QRR_H */
