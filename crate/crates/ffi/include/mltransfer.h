#ifndef MLTRANSFER_H
#define MLTRANSFER_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MltStatus {
  MLT_STATUS_OK = 0,
  MLT_STATUS_NULL_ARGUMENT = 1,
  MLT_STATUS_INVALID_UTF8 = 2,
  MLT_STATUS_DICTIONARY_ERROR = 3,
  /**
   * At least one sentence failed; the output holds the rest.
   */
  MLT_STATUS_TRANSLATION_ERROR = 4,
  MLT_STATUS_CORPUS_ERROR = 5,
  MLT_STATUS_GRADE_ERROR = 6,
  MLT_STATUS_PANIC = 7,
} MltStatus;

/**
 * Loaded dictionaries. Immutable once built; may be shared across threads.
 */
typedef struct MltEngine MltEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Engine over the built-in dictionaries. Never returns NULL.
 */
struct MltEngine *mlt_engine_new_builtin(void);

/**
 * Loads `categories.tsv`, `lexicon.tsv`, `patterns.tsv` and `rewrites.tsv`
 * from directory `dir`.
 *
 * # Safety
 * `dir` must be NULL or a NUL-terminated string; `out` must be NULL or
 * point to writable storage for one pointer.
 */
enum MltStatus mlt_engine_open(const char *dir, struct MltEngine **out);

/**
 * # Safety
 * `engine` must be NULL or a pointer from this library not yet freed.
 */
void mlt_engine_free(struct MltEngine *engine);

/**
 * Translates `text`. `out_text` receives the English; `out_trace`, if not
 * NULL, receives the decision trace. Both are set even when the status is
 * `TranslationError`.
 *
 * # Safety
 * `engine` must be a live engine, `text` a NUL-terminated string,
 * `out_text` writable, `out_trace` NULL or writable.
 */
enum MltStatus mlt_translate(const struct MltEngine *engine,
                             const char *text,
                             char **out_text,
                             char **out_trace);

/**
 * Runs a corpus given as file contents. `out_report` receives the report
 * text and `out_pass_rate`, if not NULL, the pass rate.
 *
 * # Safety
 * `engine` must be a live engine, `corpus` a NUL-terminated string,
 * `out_report` writable, `out_pass_rate` NULL or writable.
 */
enum MltStatus mlt_eval_corpus(const struct MltEngine *engine,
                               const char *corpus,
                               char **out_report,
                               double *out_pass_rate);

/**
 * Scores grade records given as file contents.
 *
 * # Safety
 * `records` must be a NUL-terminated string, `out_report` writable,
 * `out_pass_rate` NULL or writable.
 */
enum MltStatus mlt_score_grades(const char *records, char **out_report, double *out_pass_rate);

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into this library on the same thread.
 */
const char *mlt_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void mlt_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *mlt_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MLTRANSFER_H */
