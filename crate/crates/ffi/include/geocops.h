#ifndef GEOCOPS_H
#define GEOCOPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GcOutcome {
  GC_OUTCOME_RUNNING = 0,
  GC_OUTCOME_CAUGHT = 1,
  GC_OUTCOME_WITHIN_EPSILON = 2,
  GC_OUTCOME_MAX_STEPS = 3,
} GcOutcome;

typedef enum GcSpaceKind {
  GC_SPACE_KIND_BALL = 0,
  GC_SPACE_KIND_SPHERE = 1,
  GC_SPACE_KIND_HEMISPHERE = 2,
  GC_SPACE_KIND_TORUS = 3,
  GC_SPACE_KIND_ELL_TWO_BOX = 4,
} GcSpaceKind;

typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_INVALID_ARGUMENT = 1,
  GC_STATUS_ILLEGAL_MOVE = 2,
  GC_STATUS_STRATEGY_MISUSE = 3,
  GC_STATUS_AMBIGUOUS_LIFT = 4,
  GC_STATUS_UNDEFINED_RAY = 5,
  GC_STATUS_SEARCH_FAILURE = 6,
  GC_STATUS_INTERNAL_INVARIANT = 7,
  GC_STATUS_CONFIG = 8,
  GC_STATUS_PARSE = 9,
  GC_STATUS_IO = 10,
  GC_STATUS_NULL_POINTER = 11,
  GC_STATUS_BUFFER_TOO_SMALL = 12,
  GC_STATUS_PANIC = 13,
} GcStatus;

/**
 * Opaque game handle.
 */
typedef struct GcGame GcGame;

/**
 * Snapshot of a game in progress.
 */
typedef struct GcStatusReport {
  enum GcOutcome outcome;
  uint64_t steps;
  /**
   * Running value: the infimum of cop-robber distances so far.
   */
  double value;
  /**
   * Index of the capturing cop, or -1.
   */
  int64_t capturing_cop;
} GcStatusReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *gc_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *gc_version(void);

/**
 * Parses a run configuration and sets up a game.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string and `out` a writable
 * pointer. The handle written to `out` must be released with
 * [`gc_game_free`].
 */
enum GcStatus gc_game_new(const char *config_json, struct GcGame **out);

/**
 * Releases a game. NULL is ignored.
 *
 * # Safety
 * `game` must come from [`gc_game_new`] and not have been freed.
 */
void gc_game_free(struct GcGame *game);

/**
 * Plays one step. `advanced` (may be NULL) is set to false when the game
 * was already over.
 *
 * # Safety
 * `game` must be a live handle from [`gc_game_new`].
 */
enum GcStatus gc_game_step(struct GcGame *game, bool *advanced);

/**
 * Plays to the end (capture, epsilon or step limit) and records the
 * outcome. `outcome` may be NULL.
 *
 * # Safety
 * `game` must be a live handle; `outcome` writable or NULL.
 */
enum GcStatus gc_game_finish(struct GcGame *game, enum GcOutcome *outcome);

/**
 * Current step count, value and outcome. The outcome stays
 * `GC_OUTCOME_RUNNING` until [`gc_game_finish`] is called.
 *
 * # Safety
 * `game` must be a live handle and `report` writable.
 */
enum GcStatus gc_game_status(const struct GcGame *game, struct GcStatusReport *report);

/**
 * Number of cops in the game, or 0 for a NULL handle.
 *
 * # Safety
 * `game` must be a live handle or NULL.
 */
size_t gc_game_cop_count(const struct GcGame *game);

/**
 * Copies the robber's coordinates into `buf`. `needed` (may be NULL)
 * receives the coordinate count even when the buffer is too small.
 *
 * # Safety
 * `game` must be a live handle and `buf` must hold `len` doubles.
 */
enum GcStatus gc_game_robber(const struct GcGame *game, double *buf, size_t len, size_t *needed);

/**
 * Copies cop `index`'s coordinates into `buf`, as for [`gc_game_robber`].
 *
 * # Safety
 * `game` must be a live handle and `buf` must hold `len` doubles.
 */
enum GcStatus gc_game_cop(const struct GcGame *game,
                          size_t index,
                          double *buf,
                          size_t len,
                          size_t *needed);

/**
 * Trace of the game so far as JSON, or NULL on error. Free with
 * [`gc_string_free`].
 *
 * # Safety
 * `game` must be a live handle.
 */
char *gc_game_trace_json(const struct GcGame *game);

/**
 * Plays a whole configuration and writes the trace JSON to `trace_out`
 * (free with [`gc_string_free`]).
 *
 * # Safety
 * `config_json` must be NUL-terminated and `trace_out` writable.
 */
enum GcStatus gc_simulate(const char *config_json, char **trace_out);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void gc_string_free(char *s);

/**
 * Intrinsic distance between two points of a space given by raw
 * coordinates (n+1 for spheres and hemispheres, n otherwise).
 *
 * # Safety
 * `a` and `b` must each hold `len` doubles and `out` must be writable.
 */
enum GcStatus gc_distance(enum GcSpaceKind kind,
                          size_t dim,
                          const double *a,
                          const double *b,
                          size_t len,
                          double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GEOCOPS_H */
