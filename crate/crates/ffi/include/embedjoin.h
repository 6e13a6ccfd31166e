#ifndef EMBEDJOIN_H
#define EMBEDJOIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  EJ_MODE_AUTO = 0,
  EJ_MODE_BASIC = 1,
  EJ_MODE_PLUS = 2,
} EjMode;

typedef enum {
  EJ_STATUS_OK = 0,
  EJ_STATUS_NULL_POINTER = 1,
  EJ_STATUS_INVALID_ARGUMENT = 2,
  EJ_STATUS_IO = 3,
  EJ_STATUS_DATA = 4,
  EJ_STATUS_PANIC = 5,
} EjStatus;

/**
 * Opaque corpus handle.
 */
typedef struct EjCorpus EjCorpus;

/**
 * Opaque join result handle.
 */
typedef struct EjResult EjResult;

/**
 * Join parameters. A zero numeric field selects the library default.
 */
typedef struct {
  size_t reps;
  size_t tables;
  size_t bits;
  size_t delta;
  size_t match_threshold;
  /**
   * Embedding length; 0 picks it from the length statistics.
   */
  size_t truncation;
  EjMode mode;
  bool grouping;
  uint64_t seed;
} EjJoinParams;

typedef struct {
  size_t a;
  size_t b;
  size_t distance;
} EjPair;

typedef struct {
  size_t candidates_raw;
  size_t candidates_deduped;
  size_t pairs_verified;
  size_t pairs_output;
  uint64_t time_embed_ms;
  uint64_t time_filter_ms;
  uint64_t time_verify_ms;
} EjMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *ej_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ej_version(void);

/**
 * Builds a corpus from `n` NUL-terminated lines.
 *
 * # Safety
 * `lines` must point to `n` valid C strings; `out` must be writable.
 */
EjStatus ej_corpus_from_lines(const char *const *lines, size_t n, EjCorpus **out);

/**
 * Parses a newline-separated buffer, one string per line.
 *
 * # Safety
 * `data` must point to `len` readable bytes; `out` must be writable.
 */
EjStatus ej_corpus_parse(const uint8_t *data, size_t len, EjCorpus **out);

/**
 * Loads a corpus file, one string per line.
 *
 * # Safety
 * `path` must be a valid C string; `out` must be writable.
 */
EjStatus ej_corpus_load(const char *path, EjCorpus **out);

/**
 * Number of strings in the corpus; 0 for null.
 *
 * # Safety
 * `corpus` must be null or a live handle.
 */
size_t ej_corpus_len(const EjCorpus *corpus);

/**
 * # Safety
 * `corpus` must be null or a handle not yet freed.
 */
void ej_corpus_free(EjCorpus *corpus);

/**
 * All-defaults parameters.
 */
EjJoinParams ej_join_params_default(void);

/**
 * Similarity self-join with threshold `k`. `params` may be null for the
 * defaults.
 *
 * # Safety
 * `corpus` must be a live handle, `params` null or valid, `out` writable.
 */
EjStatus ej_join(const EjCorpus *corpus, size_t k, const EjJoinParams *params, EjResult **out);

/**
 * Exact self-join with threshold `k`.
 *
 * # Safety
 * `corpus` must be a live handle, `out` writable.
 */
EjStatus ej_oracle_join(const EjCorpus *corpus, size_t k, EjResult **out);

/**
 * Number of output pairs; 0 for null.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
size_t ej_result_len(const EjResult *result);

/**
 * Pair `index` in ascending `(a, b)` order.
 *
 * # Safety
 * `result` must be a live handle, `out` writable.
 */
EjStatus ej_result_pair(const EjResult *result, size_t index, EjPair *out);

/**
 * # Safety
 * `result` must be a live handle, `out` writable.
 */
EjStatus ej_result_metrics(const EjResult *result, EjMetrics *out);

/**
 * # Safety
 * `result` must be null or a handle not yet freed.
 */
void ej_result_free(EjResult *result);

/**
 * Levenshtein distance of two byte strings.
 *
 * # Safety
 * `x` and `y` must point to `x_len` and `y_len` readable bytes.
 */
EjStatus ej_edit_distance(const uint8_t *x,
                          size_t x_len,
                          const uint8_t *y,
                          size_t y_len,
                          size_t *out);

/**
 * Sets `*within` to whether the distance is at most `k`, and `*out` to the
 * distance when it is.
 *
 * # Safety
 * `x` and `y` must point to `x_len` and `y_len` readable bytes; `within`
 * and `out` must be writable.
 */
EjStatus ej_banded_edit_distance(const uint8_t *x,
                                 size_t x_len,
                                 const uint8_t *y,
                                 size_t y_len,
                                 size_t k,
                                 bool *within,
                                 size_t *out);

/**
 * Probability that at least `t` of `z` independent functions collide when
 * each collides with probability `p`. NaN for invalid arguments.
 */
double ej_match_probability(double p, size_t z, size_t t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EMBEDJOIN_H */
