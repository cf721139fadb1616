#ifndef ONTOLINT_H
#define ONTOLINT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OntolintStatus {
  ONTOLINT_STATUS_OK = 0,
  ONTOLINT_STATUS_NULL_POINTER = 1,
  ONTOLINT_STATUS_INVALID_UTF8 = 2,
  ONTOLINT_STATUS_PARSE_ERROR = 3,
  ONTOLINT_STATUS_UNSUPPORTED = 4,
  ONTOLINT_STATUS_INVALID_ARGUMENT = 5,
  /**
   * The statistic is undefined for the given data.
   */
  ONTOLINT_STATUS_UNDEFINED = 6,
  ONTOLINT_STATUS_PANIC = 7,
} OntolintStatus;

typedef enum OntolintFormat {
  ONTOLINT_FORMAT_N_TRIPLES = 0,
  ONTOLINT_FORMAT_TURTLE = 1,
  ONTOLINT_FORMAT_RDF_XML = 2,
  ONTOLINT_FORMAT_OWL_FUNCTIONAL = 3,
  ONTOLINT_FORMAT_OWL_XML = 4,
  ONTOLINT_FORMAT_UNKNOWN = 5,
} OntolintFormat;

typedef enum OntolintMetric {
  ONTOLINT_METRIC_NOMINAL = 0,
  ONTOLINT_METRIC_ORDINAL = 1,
} OntolintMetric;

/**
 * Opaque parsed graph.
 */
typedef struct OntolintGraph OntolintGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into the library on this thread.
 */
const char *ontolint_last_error(void);

/**
 * Detects the serialization of `len` bytes at `data`.
 *
 * # Safety
 * `data` must point at `len` readable bytes; `out` must be writable.
 */
enum OntolintStatus ontolint_sniff(const uint8_t *data, size_t len, enum OntolintFormat *out);

/**
 * Parses N-Triples or Turtle (gzip accepted) into a new graph handle.
 *
 * # Safety
 * `data` must point at `len` readable bytes; `out` must be writable.
 */
enum OntolintStatus ontolint_graph_parse(const uint8_t *data,
                                         size_t len,
                                         enum OntolintFormat format,
                                         struct OntolintGraph **out);

/**
 * Number of distinct triples; 0 for NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle from [`ontolint_graph_parse`].
 */
size_t ontolint_graph_len(const struct OntolintGraph *graph);

/**
 * Canonical sorted N-Triples serialization as a new string.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum OntolintStatus ontolint_graph_to_ntriples(const struct OntolintGraph *graph, char **out);

/**
 * # Safety
 * `graph` must be NULL or a handle not yet freed.
 */
void ontolint_graph_free(struct OntolintGraph *graph);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void ontolint_string_free(char *s);

/**
 * Fleiss' kappa over a row-major `items` x `categories` count matrix.
 *
 * # Safety
 * `counts` must point at `items * categories` values; `out` must be writable.
 */
enum OntolintStatus ontolint_fleiss_kappa(const size_t *counts,
                                          size_t items,
                                          size_t categories,
                                          double *out);

/**
 * Krippendorff's alpha over a row-major `units` x `raters` matrix of
 * integer ratings, NaN marking a missing rating.
 *
 * # Safety
 * `ratings` must point at `units * raters` values; `out` must be writable.
 */
enum OntolintStatus ontolint_krippendorff_alpha(const double *ratings,
                                                size_t units,
                                                size_t raters,
                                                enum OntolintMetric metric,
                                                double *out);

/**
 * Splits a compact identifier into new prefix and local-id strings.
 * `separator` receives ':' or '_'.
 *
 * # Safety
 * `text` must be a NUL-terminated string; the out pointers must be writable.
 */
enum OntolintStatus ontolint_parse_curie(const char *text,
                                         char **prefix,
                                         char **local_id,
                                         char *separator);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ONTOLINT_H */
