/* C interface to the powfree library.
 *
 * Objects are opaque handles created by pf_* functions and released with the
 * matching *_destroy call. Every fallible call returns a pf_status; the
 * message for the most recent failure on a context is available from
 * pf_context_last_error. Strings returned through char** are heap allocated
 * and must be released with pf_string_free. Strings returned as const char*
 * are owned by the handle they came from.
 */
#ifndef POWFREE_POWFREE_H
#define POWFREE_POWFREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POWFREE_BUILDING_LIBRARY)
#    define PF_API __declspec(dllexport)
#  else
#    define PF_API __declspec(dllimport)
#  endif
#else
#  define PF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pf_status {
  PF_OK = 0,
  PF_ERR_INVALID_ARGUMENT = 1,
  PF_ERR_BUDGET_EXCEEDED = 2,
  PF_ERR_NO_WITNESS = 3,
  PF_ERR_LEMMA_VIOLATION = 4,
  PF_ERR_IO = 5,
  PF_ERR_CORRUPT = 6,
  PF_ERR_INTERNAL = 7
} pf_status;

typedef enum pf_format { PF_FORMAT_JSON = 0, PF_FORMAT_CSV = 1 } pf_format;

typedef enum pf_method {
  PF_METHOD_AUTO = -1,
  PF_METHOD_NAIVE = 0,
  PF_METHOD_INCREMENTAL = 1,
  PF_METHOD_CANONICAL = 2
} pf_method;

typedef struct pf_threshold {
  uint64_t num;
  uint64_t den;
  int strict;
} pf_threshold;

typedef struct pf_witness {
  size_t start;
  size_t period;
  size_t length;
  uint64_t exponent_num;
  uint64_t exponent_den;
} pf_witness;

typedef struct pf_context pf_context;
typedef struct pf_series pf_series;
typedef struct pf_certificate pf_certificate;
typedef struct pf_audit pf_audit;

PF_API const char* pf_version(void);
PF_API const char* pf_status_name(pf_status status);
PF_API void pf_string_free(char* s);

/* Contexts hold run settings and the last error message. Not thread safe;
 * use one context per thread. */
PF_API pf_context* pf_context_create(void);
PF_API void pf_context_destroy(pf_context* ctx);
PF_API const char* pf_context_last_error(const pf_context* ctx);
/* 0 means hardware concurrency. */
PF_API void pf_context_set_workers(pf_context* ctx, unsigned workers);
/* Largest k^L accepted by the naive engine and by audits. */
PF_API void pf_context_set_budget(pf_context* ctx, uint64_t budget);
/* Empty or NULL disables the count cache. */
PF_API pf_status pf_context_set_cache_path(pf_context* ctx, const char* path);
/* Warnings from the last call, e.g. corrupt cache lines that were skipped. */
PF_API size_t pf_context_diagnostic_count(const pf_context* ctx);
PF_API const char* pf_context_diagnostic(const pf_context* ctx, size_t i);
/* Adds generated_at to JSON output when nonzero (the default). */
PF_API void pf_context_set_timestamp(pf_context* ctx, int enabled);

/* "p/q", "p" or either with a trailing "+". */
PF_API pf_status pf_threshold_parse(pf_context* ctx, const char* text, int strict,
                                    pf_threshold* out);

/* *violated is set to 1 and *witness filled when letters[0..length) contains a
 * forbidden power; letters must lie in [1, k]. */
PF_API pf_status pf_find_violation(pf_context* ctx, const uint16_t* letters, size_t length,
                                   uint32_t k, pf_threshold threshold, int* violated,
                                   pf_witness* witness);

/* Same for a word in CLI notation (a..z, or comma-separated integers); the
 * formatted verdict goes to *report when report is not NULL. */
PF_API pf_status pf_check_text(pf_context* ctx, const char* word, pf_threshold threshold,
                               pf_format format, int* violated, pf_witness* witness,
                               char** report);

typedef struct pf_count_request {
  uint32_t k;
  pf_threshold threshold;
  size_t max_length;
  pf_method method;
  /* Negative for the unrestricted language. */
  int64_t tail_max;
} pf_count_request;

/* Counts free words of every length up to max_length. With a cache path set,
 * a long enough cached series is reused and new series are stored. */
PF_API pf_status pf_count(pf_context* ctx, const pf_count_request* request, pf_series** out);
PF_API void pf_series_destroy(pf_series* series);
/* Number of entries, max_length + 1. */
PF_API size_t pf_series_size(const pf_series* series);
/* Decimal text of C_i, or NULL when i is out of range. */
PF_API const char* pf_series_count(const pf_series* series, size_t i);
PF_API pf_method pf_series_method(const pf_series* series);
/* Nonzero when the series came from the cache. */
PF_API int pf_series_from_cache(const pf_series* series);
PF_API pf_status pf_series_format(pf_context* ctx, const pf_series* series, pf_format format,
                                  char** out);

/* Counts n/(n-1) (strict: n/(n-1)+) free words to max_length with the
 * canonical engine and certifies C_{i+1} >= x C_i for a rational witness x.
 * PF_ERR_NO_WITNESS when no x > 1 satisfies the growth condition,
 * PF_ERR_LEMMA_VIOLATION if a ratio check fails. */
PF_API pf_status pf_certify(pf_context* ctx, uint32_t k, uint32_t n, int strict,
                            size_t max_length, pf_certificate** out);
PF_API void pf_certificate_destroy(pf_certificate* cert);
PF_API double pf_certificate_witness(const pf_certificate* cert);
PF_API size_t pf_certificate_verified_up_to(const pf_certificate* cert);
PF_API pf_status pf_certificate_format(pf_context* ctx, const pf_certificate* cert,
                                       pf_format format, char** out);

/* Exhaustive F_j audit for prefix length i. */
PF_API pf_status pf_audit_run(pf_context* ctx, uint32_t k, uint32_t n, int strict, size_t i,
                              pf_audit** out);
PF_API void pf_audit_destroy(pf_audit* audit);
PF_API int pf_audit_all_pass(const pf_audit* audit);
PF_API int pf_audit_suffix_determined(const pf_audit* audit);
PF_API size_t pf_audit_row_count(const pf_audit* audit);
PF_API pf_status pf_audit_format(pf_context* ctx, const pf_audit* audit, pf_format format,
                                 char** out);

typedef struct pf_report_request {
  uint32_t n_min;
  uint32_t n_max;
  const uint32_t* ks;
  size_t k_count;
  /* 0 skips enumeration; certified and ratio columns are then empty. */
  size_t max_length;
  uint64_t tail_max;
} pf_report_request;

PF_API pf_status pf_report(pf_context* ctx, const pf_report_request* request, pf_format format,
                           char** out);

/* Lists the series stored in the context's cache. Corrupt lines are skipped;
 * their count goes to *skipped when it is not NULL. */
PF_API pf_status pf_cache_list(pf_context* ctx, pf_format format, char** out, size_t* skipped);

#ifdef __cplusplus
}
#endif

#endif /* POWFREE_POWFREE_H */
