#ifndef FINSPACE_H
#define FINSPACE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FsStatus {
  FS_OK = 0,
  FS_NULL_ARGUMENT = 1,
  FS_PARSE_ERROR = 2,
  FS_INVALID_ARGUMENT = 3,
  FS_NOT_CONTINUOUS = 4,
  FS_BUDGET_EXCEEDED = 5,
  FS_NOT_FOUND = 6,
  FS_UNKNOWN_SUITE = 7,
  FS_PANIC = 8,
} FsStatus;

typedef enum FsFormat {
  FS_FORMAT_TEXT = 0,
  FS_FORMAT_RECORDS = 1,
} FsFormat;

typedef struct FsMap FsMap;

typedef struct FsModel FsModel;

typedef struct FsReport FsReport;

typedef struct FsSpace FsSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *fs_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void fs_string_free(char *s);

/**
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum FsStatus fs_model_parse(const char *text, struct FsModel **out);

/**
 * # Safety
 * `m` must come from [`fs_model_parse`] and not have been freed.
 */
void fs_model_free(struct FsModel *m);

/**
 * Canonical text of the model. Free the result with [`fs_string_free`].
 *
 * # Safety
 * `m` must be a live model; `out` must be writable.
 */
enum FsStatus fs_model_to_dsl(const struct FsModel *m, char **out);

/**
 * # Safety
 * `m` must be a live model, `name` nul-terminated, `out` writable.
 */
enum FsStatus fs_model_space(const struct FsModel *m, const char *name, struct FsSpace **out);

/**
 * # Safety
 * `m` must be a live model, `name` nul-terminated, `out` writable.
 */
enum FsStatus fs_model_map(const struct FsModel *m, const char *name, struct FsMap **out);

/**
 * A space on `n` points from `len` open sets, each a bit mask over the
 * points (bit `i` set when point `i` belongs). Needs `n <= 32`.
 *
 * # Safety
 * `opens` must point to `len` readable masks (or be null with `len == 0`);
 * `out` must be writable.
 */
enum FsStatus fs_space_from_opens(size_t n,
                                  const uint32_t *opens,
                                  size_t len,
                                  struct FsSpace **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum FsStatus fs_space_sierpinski(struct FsSpace **out);

/**
 * # Safety
 * `x` must come from this library and not have been freed.
 */
void fs_space_free(struct FsSpace *x);

/**
 * # Safety
 * `x` must be a live space; `out` writable.
 */
enum FsStatus fs_space_points(const struct FsSpace *x, size_t *out);

/**
 * Whether `p` specializes to `q`: every open containing `p` contains `q`.
 *
 * # Safety
 * `x` must be a live space; `out` writable.
 */
enum FsStatus fs_space_leq(const struct FsSpace *x, size_t p, size_t q, bool *out);

/**
 * # Safety
 * `x` must be a live space; `out` writable.
 */
enum FsStatus fs_space_is_t0(const struct FsSpace *x, bool *out);

/**
 * Graphviz text of the specialization order. Free with [`fs_string_free`].
 *
 * # Safety
 * `x` must be a live space; `out` writable.
 */
enum FsStatus fs_space_export_dot(const struct FsSpace *x, char **out);

/**
 * A continuous map given by its table; fails with `FsNotContinuous` naming
 * the offending open otherwise.
 *
 * # Safety
 * `dom` and `cod` must be live spaces; `table` must point to `len`
 * readable entries; `out` must be writable.
 */
enum FsStatus fs_map_new(const struct FsSpace *dom,
                         const struct FsSpace *cod,
                         const size_t *table,
                         size_t len,
                         struct FsMap **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed.
 */
void fs_map_free(struct FsMap *f);

/**
 * # Safety
 * `f` must be a live map; `out` writable.
 */
enum FsStatus fs_map_is_embedding(const struct FsMap *f, bool *out);

/**
 * Whether every map `dom f -> a` extends along `f`, and whether the
 * extension is always unique.
 *
 * # Safety
 * `a` and `f` must be live; `injective` and `orthogonal` writable.
 */
enum FsStatus fs_injective_along(const struct FsSpace *a,
                                 const struct FsMap *f,
                                 bool *injective,
                                 bool *orthogonal);

/**
 * Pushout of `f` and `g` (common domain): the apex and the two legs.
 *
 * # Safety
 * `f` and `g` must be live maps; all out-pointers writable.
 */
enum FsStatus fs_pushout(const struct FsMap *f,
                         const struct FsMap *g,
                         struct FsSpace **apex,
                         struct FsMap **left,
                         struct FsMap **right);

/**
 * Number of continuous maps `a^n -> a`.
 *
 * # Safety
 * `a` must be a live space; `out` writable.
 */
enum FsStatus fs_monad_size(const struct FsSpace *a, size_t n, size_t *out);

/**
 * Runs a named suite. A negative `n_max` selects the suite default.
 *
 * # Safety
 * `name` must be nul-terminated; `out` writable.
 */
enum FsStatus fs_run_suite(const char *name, int64_t n_max, struct FsReport **out);

/**
 * # Safety
 * `r` must be a live report; the out-pointers writable.
 */
enum FsStatus fs_report_counts(const struct FsReport *r,
                               size_t *pass,
                               size_t *fail,
                               size_t *skipped);

/**
 * The report rendered as text or line records. Free with
 * [`fs_string_free`].
 *
 * # Safety
 * `r` must be a live report; `out` writable.
 */
enum FsStatus fs_report_render(const struct FsReport *r, enum FsFormat format, char **out);

/**
 * # Safety
 * `r` must come from this library and not have been freed.
 */
void fs_report_free(struct FsReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FINSPACE_H */
