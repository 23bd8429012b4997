#ifndef GRIDTAU_H
#define GRIDTAU_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum GridtauStatus {
  GRIDTAU_STATUS_OK = 0,
  // A required pointer argument was null.
  GRIDTAU_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  GRIDTAU_STATUS_INVALID_UTF8 = 2,
  // The input could not be parsed or exceeds the size limit.
  GRIDTAU_STATUS_INVALID_INPUT = 3,
  // Internal consistency failure.
  GRIDTAU_STATUS_INTERNAL = 4,
  // A panic was caught at the boundary.
  GRIDTAU_STATUS_PANIC = 5,
} GridtauStatus;

// Opaque report handle.
typedef struct GridtauReport GridtauReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Computes the report for a braid word such as `"2: 1 1 1"`.
// `max_grid = 0` selects the default limit.
//
// # Safety
// `word` must be a NUL-terminated string and `out` a valid pointer.
enum GridtauStatus gridtau_compute_braid(const char *word,
                                         uint32_t max_grid,
                                         struct GridtauReport **out);

// Computes the report for a quasipositive word such as `"2: (|1) (|1)"`.
//
// # Safety
// As for [`gridtau_compute_braid`].
enum GridtauStatus gridtau_compute_quasipositive(const char *word,
                                                 uint32_t max_grid,
                                                 struct GridtauReport **out);

// Computes the report for a grid given in the grid file format.
//
// # Safety
// As for [`gridtau_compute_braid`].
enum GridtauStatus gridtau_compute_grid(const char *text,
                                        uint32_t max_grid,
                                        struct GridtauReport **out);

// Computes the report for a built-in fixture such as `"trefoil5"`.
//
// # Safety
// As for [`gridtau_compute_braid`].
enum GridtauStatus gridtau_compute_fixture(const char *name,
                                           uint32_t max_grid,
                                           struct GridtauReport **out);

// Releases a report. Null is ignored.
//
// # Safety
// `report` must come from a `gridtau_compute_*` call and not be freed twice.
void gridtau_report_free(struct GridtauReport *report);

// Twice τ_top.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum GridtauStatus gridtau_report_tau_top_doubled(const struct GridtauReport *report, int64_t *out);

// Twice τ_bot.
//
// # Safety
// As for [`gridtau_report_tau_top_doubled`].
enum GridtauStatus gridtau_report_tau_bot_doubled(const struct GridtauReport *report, int64_t *out);

// Number of link components.
//
// # Safety
// As for [`gridtau_report_tau_top_doubled`].
enum GridtauStatus gridtau_report_components(const struct GridtauReport *report, uint32_t *out);

// Size of the grid the report was computed on.
//
// # Safety
// As for [`gridtau_report_tau_top_doubled`].
enum GridtauStatus gridtau_report_grid_size(const struct GridtauReport *report, uint32_t *out);

// 1 if every check in the report passed, else 0.
//
// # Safety
// As for [`gridtau_report_tau_top_doubled`].
enum GridtauStatus gridtau_report_all_passed(const struct GridtauReport *report, int32_t *out);

// The report as JSON. Returns null on a null handle.
//
// # Safety
// `report` must be a live handle or null.
char *gridtau_report_json(const struct GridtauReport *report);

// Grid file text for a braid word.
//
// # Safety
// `word` must be a NUL-terminated string and `out` a valid pointer.
enum GridtauStatus gridtau_convert_braid(const char *word, char **out);

// Grid file text for a quasipositive word.
//
// # Safety
// As for [`gridtau_convert_braid`].
enum GridtauStatus gridtau_convert_quasipositive(const char *word, char **out);

// Message for the last failure on this thread, or null. Release with
// [`gridtau_string_free`].
char *gridtau_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void gridtau_string_free(char *s);

// Library version, statically allocated.
const char *gridtau_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRIDTAU_H */
