/* C interface to the branched oper verification library. */
#ifndef BOP_H
#define BOP_H

#include <stddef.h>

#if defined(_WIN32)
#define BOP_API __declspec(dllexport)
#else
#define BOP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  BOP_OK = 0,
  BOP_ERR_USAGE = 1,    /* bad argument or unknown mutation id */
  BOP_ERR_PARSE = 2,    /* malformed pair file or expression */
  BOP_ERR_INPUT = 3,    /* well-formed input outside the supported domain */
  BOP_ERR_INTERNAL = 4
} bop_status;

typedef enum { BOP_CHECK_PASS = 0, BOP_CHECK_FAIL = 1, BOP_CHECK_INFO = 2 } bop_check_status;

typedef struct bop_report bop_report;
typedef struct bop_pair bop_pair;

typedef struct {
  int order;          /* series truncation, 0 for the default */
  const char* mutate; /* check id to fault-inject, or NULL */
} bop_options;

/* Message and error kind of the last failed call on this thread. */
BOP_API const char* bop_last_error(void);
BOP_API const char* bop_last_error_kind(void);

BOP_API bop_status bop_run_canon(const bop_options* opt, bop_report** out);
BOP_API bop_status bop_run_branch(int n, const bop_options* opt, bop_report** out);
BOP_API bop_status bop_run_pair_check(const char* path, const bop_options* opt, bop_report** out);
/* emit_path may be NULL; otherwise the built pair is written there. */
BOP_API bop_status bop_run_roundtrip(const char* sigma, const char* emit_path, const bop_options* opt, bop_report** out);

BOP_API int bop_report_passed(const bop_report* r);
BOP_API const char* bop_report_text(const bop_report* r);
BOP_API const char* bop_report_json(const bop_report* r);
BOP_API size_t bop_report_count(const bop_report* r);
/* Returned strings live as long as the report. */
BOP_API bop_status bop_report_check(const bop_report* r, size_t i, const char** id, const char** anchor,
                            bop_check_status* status, const char** witness);
BOP_API void bop_report_free(bop_report* r);

/* perturb is a rational constant ("0" gives the built pair); may be NULL. */
BOP_API bop_status bop_pair_from_sigma(const char* sigma, const char* perturb, bop_pair** out);
BOP_API bop_status bop_pair_load(const char* path, bop_pair** out);
BOP_API const char* bop_pair_text(const bop_pair* p);
BOP_API int bop_pair_is_oper(const bop_pair* p);
BOP_API void bop_pair_free(bop_pair* p);

#ifdef __cplusplus
}
#endif

#endif
