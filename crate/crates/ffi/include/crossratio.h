#ifndef CROSSRATIO_H
#define CROSSRATIO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Entries of `η_5(π)`, row-major.
#define CR_ETA5_LEN 225

// Result codes.
typedef enum CrStatus {
  CR_STATUS_OK = 0,
  // A verification ran and did not pass.
  CR_STATUS_VERIFICATION_FAILED = 1,
  CR_STATUS_NULL_POINTER = 2,
  CR_STATUS_INVALID_UTF8 = 3,
  CR_STATUS_INVALID_INPUT = 4,
  CR_STATUS_INTERNAL = 5,
} CrStatus;

// Opaque handle to a sub-Möbius structure.
typedef struct CrStructure CrStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next `cr_*` call on the same thread.
const char *cr_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void cr_string_free(char *s);

// Parses a structure file (`"kind": "semi-metric"` or `"sub-moebius"`).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum CrStatus cr_structure_from_json(const char *json, struct CrStructure **out);

// The Möbius structure of the extended real line.
//
// # Safety
// `out` must be writable.
enum CrStatus cr_structure_extended_line(struct CrStructure **out);

// A random sub-Möbius structure on five points `p1..p5`.
//
// # Safety
// `out` must be writable.
enum CrStatus cr_structure_random(uint64_t seed, struct CrStructure **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `s` must come from a `cr_structure_*` constructor and not have been freed.
void cr_structure_free(struct CrStructure *s);

// Number of points, or 0 for the extended line.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum CrStatus cr_structure_point_count(const struct CrStructure *s, size_t *out);

// The structure as a JSON structure file. Fails for the extended line.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum CrStatus cr_structure_to_json(const struct CrStructure *s, char **out);

// Checks the sub-Möbius axioms. `pass` and `report_json` may be NULL.
//
// # Safety
// `s` must be a live handle; non-NULL out-parameters must be writable.
enum CrStatus cr_check_axioms(const struct CrStructure *s, bool *pass, char **report_json);

// Runs the Möbius criterion: exhaustive on at most seven points, otherwise
// `samples` seeded tuples. Returns `VerificationFailed` when the structure
// is not Möbius; the report is written either way.
//
// # Safety
// `s` must be a live handle; non-NULL out-parameters must be writable.
enum CrStatus cr_verify(const struct CrStructure *s,
                        size_t samples,
                        uint64_t seed,
                        double tolerance,
                        bool *is_moebius,
                        char **report_json);

// Character of `η_5` and its decomposition, as JSON.
//
// # Safety
// `out` must be writable.
enum CrStatus cr_decompose_report(char **out);

// The ten characteristic functions and their orbit, as JSON.
//
// # Safety
// `out` must be writable.
enum CrStatus cr_charfns_report(char **out);

// Symmetry set versus the `χ^32` component, as JSON.
//
// # Safety
// `out` must be writable.
enum CrStatus cr_symset_report(char **out);

// Sign of a permutation in one-line notation, e.g. `"15342"`.
//
// # Safety
// `one_line` must be a NUL-terminated string; `out` must be writable.
enum CrStatus cr_permutation_sign(const char *one_line, int8_t *out);

// Writes the `15 × 15` matrix `η_5(π)` row-major into `out`, which must
// hold [`CR_ETA5_LEN`] entries.
//
// # Safety
// `one_line` must be a NUL-terminated string; `out` must point to
// `CR_ETA5_LEN` writable bytes.
enum CrStatus cr_eta5(const char *one_line, int8_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROSSRATIO_H */
