#ifndef PICF_H
#define PICF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a call.
typedef enum PicfStatus {
  PICF_STATUS_OK = 0,
  PICF_STATUS_INVALID_INPUT = 1,
  PICF_STATUS_VERIFICATION_FAILURE = 2,
  PICF_STATUS_NULL_POINTER = 3,
  PICF_STATUS_INVALID_UTF8 = 4,
  PICF_STATUS_PANIC = 5,
} PicfStatus;

// A periodic continued fraction with a pre-period.
typedef struct PicfPcf PicfPcf;

// A sorted list of variety points.
typedef struct PicfPointSet PicfPointSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *picf_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library, freed once.
void picf_string_free(char *s);

// Builds `[pre; (period)]`. Both slices must be non-empty.
//
// # Safety
// `pre`/`period` must point to `pre_len`/`period_len` readable values and
// `out` must be writable.
enum PicfStatus picf_pcf_new(const int64_t *pre,
                             size_t pre_len,
                             const int64_t *period,
                             size_t period_len,
                             struct PicfPcf **out);

// The regular continued fraction of `sqrt(m)`.
//
// # Safety
// `out` must be writable.
enum PicfStatus picf_sqrt_rcf(uint64_t m, struct PicfPcf **out);

// # Safety
// `p` must be null or a handle from this library, freed once.
void picf_pcf_free(struct PicfPcf *p);

// Writes the notation `[b; (a1, .., al)]`.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PicfStatus picf_pcf_to_string(const struct PicfPcf *p, char **out);

// Whether the expansion passes the convergence certificate.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PicfStatus picf_pcf_converges(const struct PicfPcf *p, bool *out);

// The exact value, e.g. `-sqrt(2)` or `1/2 + 3/2*sqrt(5)`.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PicfStatus picf_pcf_value(const struct PicfPcf *p, char **out);

// Every non-degenerate integer point of the `(1, l)` variety of `sqrt(m)`.
//
// # Safety
// `out` must be writable.
enum PicfStatus picf_points_enumerate(uint64_t m, size_t l, struct PicfPointSet **out);

// Number of points; zero for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t picf_points_len(const struct PicfPointSet *s);

// The expansion of point `index` as a new handle.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum PicfStatus picf_points_get(const struct PicfPointSet *s, size_t index, struct PicfPcf **out);

// # Safety
// `s` must be null or a handle from this library, freed once.
void picf_points_free(struct PicfPointSet *s);

// The fundamental solution of `x^2 - m y^2 = +-1`; `x` and `y` are
// decimal strings.
//
// # Safety
// All out-pointers must be writable.
enum PicfStatus picf_fundamental_solution(uint64_t m, char **x, char **y, int8_t *norm);

// Runs the command-line front end on `argv` (without a program name) and
// returns its document and exit code. The status is `Ok` whenever the
// command ran, whatever its exit code.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; `exit_code` and
// `out` must be writable.
enum PicfStatus picf_run(const char *const *argv, size_t argc, int32_t *exit_code, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PICF_H */
