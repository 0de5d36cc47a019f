#ifndef BRAIDFORGE_H
#define BRAIDFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

// Result codes.
typedef enum BfStatus {
  BF_STATUS_OK = 0,
  BF_STATUS_NULL_POINTER = 1,
  BF_STATUS_INVALID_ARGUMENT = 2,
  BF_STATUS_PARSE = 3,
  BF_STATUS_DEGREE = 4,
  BF_STATUS_INTERNAL = 5,
} BfStatus;

// Derived RTT relations for one sign case.
typedef struct BfDerivation BfDerivation;

// Truncated dual of the (-,+,-) bialgebra.
typedef struct BfDualContext BfDualContext;

// Message for the most recent failure on this thread, or NULL. The caller
// owns the returned string.
char *bf_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void bf_string_free(char *s);

// Library version; static storage, do not free.
const char *bf_version(void);

// Exact constant Yang-Baxter check for a case such as `"+-+"`.
//
// # Safety
// `sign_case` must be a NUL-terminated string and `out` writable.
enum BfStatus bf_constant_ybe_holds(const char *sign_case, bool *out);

// Derives the RTT relations of one sign case.
//
// # Safety
// `sign_case` must be a NUL-terminated string and `out` writable.
enum BfStatus bf_derivation_new(const char *sign_case, struct BfDerivation **out);

// Dimension of the degree-2 relation space.
//
// # Safety
// `d` must be a live handle and `out` writable.
enum BfStatus bf_derivation_dimension(const struct BfDerivation *d, size_t *out);

// Relations as JSON in `"original"`, `"tilde"` or `"hat"` generators. The
// caller owns `*out`.
//
// # Safety
// `d` must be a live handle, `basis` NUL-terminated and `out` writable.
enum BfStatus bf_derivation_relations_json(const struct BfDerivation *d,
                                           const char *basis,
                                           char **out);

// Releases a derivation. NULL is ignored.
//
// # Safety
// `d` must come from [`bf_derivation_new`] and not be freed twice.
void bf_derivation_free(struct BfDerivation *d);

// Builds the dual context truncated at `max_degree` (at most 5).
//
// # Safety
// `out` must be writable.
enum BfStatus bf_dual_context_new(size_t max_degree, struct BfDualContext **out);

// Number of normal words of degree `degree`.
//
// # Safety
// `ctx` must be a live handle and `out` writable.
enum BfStatus bf_dual_basis_size(const struct BfDualContext *ctx, size_t degree, size_t *out);

// Checks an identity such as `"[K,P] = 2P"` on every normal word of the
// truncation; `*holds` is true when all instances hold.
//
// # Safety
// `ctx` must be a live handle, `identity` NUL-terminated and `holds`
// writable.
enum BfStatus bf_dual_check_identity(const struct BfDualContext *ctx,
                                     const char *identity,
                                     bool *holds);

// Releases a dual context. NULL is ignored.
//
// # Safety
// `ctx` must come from [`bf_dual_context_new`] and not be freed twice.
void bf_dual_context_free(struct BfDualContext *ctx);

#endif  /* BRAIDFORGE_H */
