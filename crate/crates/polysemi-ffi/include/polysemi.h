/* C interface of the polysemi n-ary semigroup library. */

#ifndef POLYSEMI_H
#define POLYSEMI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes; aligned with the CLI exit codes.
typedef enum PolysemiStatus {
  // Success; for predicates: the property holds.
  POLYSEMI_STATUS_OK = 0,
  // The queried property does not hold (not an error).
  POLYSEMI_STATUS_PROPERTY_FAILS = 1,
  // Malformed input, parse failure or violated precondition.
  POLYSEMI_STATUS_INVALID_INPUT = 2,
  // The request exceeds the supported envelope.
  POLYSEMI_STATUS_CAPACITY = 3,
  // A structural guarantee failed; report this as a bug.
  POLYSEMI_STATUS_THEOREM_VIOLATION = 4,
  // A required pointer argument was null.
  POLYSEMI_STATUS_NULL_POINTER = 5,
} PolysemiStatus;

// Opaque handle to an immutable n-ary operation table.
typedef struct PolysemiOp PolysemiOp;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread. The pointer
// stays valid until the next failing call on the same thread.
const char *polysemi_last_error(void);

// Sets the worker count used by heavy scans (mirrors the CLI `--jobs`).
void polysemi_set_jobs(size_t jobs);

// Parses an operation table in the `optab` text format.
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be a valid
// pointer. On success `*out` owns a handle to free with
// [`polysemi_op_free`].
enum PolysemiStatus polysemi_op_parse(const char *text, struct PolysemiOp **out);

// Builds an operation from a flat table, first argument most significant.
//
// # Safety
// `table` must point to `len` readable entries; `out` must be valid.
enum PolysemiStatus polysemi_op_from_table(size_t size,
                                           size_t arity,
                                           const uint32_t *table,
                                           size_t len,
                                           struct PolysemiOp **out);

// Releases a handle returned by this library. Null is ignored.
//
// # Safety
// `op` must have been produced by this library and not freed before.
void polysemi_op_free(struct PolysemiOp *op);

// Carrier size of the operation; 0 for a null handle.
//
// # Safety
// `op` must be a live handle or null.
size_t polysemi_op_size(const struct PolysemiOp *op);

// Arity of the operation; 0 for a null handle.
//
// # Safety
// `op` must be a live handle or null.
size_t polysemi_op_arity(const struct PolysemiOp *op);

// Evaluates the operation on `args`.
//
// # Safety
// `op` must be a live handle; `args` must hold `len` entries; `out` must
// be a valid pointer.
enum PolysemiStatus polysemi_op_eval(const struct PolysemiOp *op,
                                     const uint32_t *args,
                                     size_t len,
                                     uint32_t *out);

// Whether the operation is associative.
//
// # Safety
// `op` must be a live handle; `holds` must be a valid pointer.
enum PolysemiStatus polysemi_op_is_associative(const struct PolysemiOp *op, bool *holds);

// Whether the operation is idempotent.
//
// # Safety
// `op` must be a live handle; `holds` must be a valid pointer.
enum PolysemiStatus polysemi_op_is_idempotent(const struct PolysemiOp *op, bool *holds);

// Whether the value always lies among the arguments on tuples with at
// least `k` equal components.
//
// # Safety
// `op` must be a live handle; `holds` must be a valid pointer.
enum PolysemiStatus polysemi_op_is_quasitrivial_dk(const struct PolysemiOp *op,
                                                   size_t k,
                                                   bool *holds);

// Whether the value always lies among the arguments on tuples with at
// most `k` distinct values.
//
// # Safety
// `op` must be a live handle; `holds` must be a valid pointer.
enum PolysemiStatus polysemi_op_is_quasitrivial_sk(const struct PolysemiOp *op,
                                                   size_t k,
                                                   bool *holds);

// Writes the neutral elements (ascending) into `buf` and their number
// into `written`. Fails with `Capacity` when `cap` is too small; the
// required count is still stored in `written`.
//
// # Safety
// `op` must be a live handle; `buf` must hold `cap` writable entries;
// `written` must be a valid pointer.
enum PolysemiStatus polysemi_op_neutral_elements(const struct PolysemiOp *op,
                                                 uint32_t *buf,
                                                 size_t cap,
                                                 size_t *written);

// Reduces an operation that is quasitrivial on its one-off family to a
// binary one (neutral-element route preferred). On success `*out` owns a
// new handle.
//
// # Safety
// `op` must be a live handle; `out` must be a valid pointer.
enum PolysemiStatus polysemi_op_reduce_any(const struct PolysemiOp *op, struct PolysemiOp **out);

// Extends a binary operation to the requested arity. On success `*out`
// owns a new handle.
//
// # Safety
// `op` must be a live handle; `out` must be a valid pointer.
enum PolysemiStatus polysemi_op_extend(const struct PolysemiOp *op,
                                       size_t arity,
                                       struct PolysemiOp **out);

// The structure report of the operation as text, or null on failure (see
// [`polysemi_last_error`]). Free with [`polysemi_string_free`].
//
// # Safety
// `op` must be a live handle.
char *polysemi_op_classify_text(const struct PolysemiOp *op);

// The operation in the `optab` text format. Free with
// [`polysemi_string_free`].
//
// # Safety
// `op` must be a live handle.
char *polysemi_op_serialize(const struct PolysemiOp *op);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must have been returned by this library and not freed before.
void polysemi_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYSEMI_H */
