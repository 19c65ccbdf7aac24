#ifndef LEIBNIZ_H
#define LEIBNIZ_H

/* C interface to the Leibniz algebra toolkit. All handles are opaque; every
 * function returns an lz_status and reports details via lz_last_error(),
 * which is per thread and valid until the next call on that thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LZ_API __declspec(dllexport)
#else
#define LZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lz_status {
  LZ_OK = 0,
  LZ_ERR_PARSE,
  LZ_ERR_DENOMINATOR_VANISHES,
  LZ_ERR_NON_INVERTIBLE_DENOMINATOR,
  LZ_ERR_NON_REAL_VALUE,
  LZ_ERR_DIMENSION_MISMATCH,
  LZ_ERR_SCHEMA,
  LZ_ERR_UNKNOWN_ALGEBRA,
  LZ_ERR_UNBOUND_PARAMETER,
  LZ_ERR_REFUSED_SIZE,
  LZ_ERR_IO,
  LZ_ERR_USAGE,
  LZ_ERR_INTERNAL
} lz_status;

typedef enum lz_format { LZ_FORMAT_JSON = 0, LZ_FORMAT_TEXT = 1 } lz_format;

typedef struct lz_session lz_session;
typedef struct lz_report lz_report;
typedef struct lz_expr lz_expr;

/* Options shared by the commands; NULL strings mean "not given". */
typedef struct lz_options {
  const char *bindings;  /* "mu=2" or "mu=2,mu_b=0" */
  const char *op;        /* "rota-baxter", "nijenhuis", "reynolds", "averaging" */
  const char *weight;    /* Rota-Baxter weight expression, default "0" */
  const char *samples;   /* parameter samples, "0,1,2,5" or "mu=0,1,2" */
  uint32_t field;        /* prime, default 2 */
  uint64_t budget;       /* max matrices per sweep, default 2^20 */
  unsigned workers;      /* worker threads, default 1 */
  size_t cap;            /* uncovered matrices listed per run, 0 = all */
  int symbolic_weight;   /* also verify Rota-Baxter families at symbolic weight */
  size_t round_trips;    /* chart round trips per family, default 100 */
  uint64_t seed;         /* random seed for property checks */
} lz_options;

LZ_API void lz_options_init(lz_options *opts);

LZ_API const char *lz_status_name(lz_status status);
LZ_API const char *lz_last_error(void);

/* data_dir NULL: $LEIBNIZ_DATA_DIR, else the built-in data directory. */
LZ_API lz_status lz_session_open(const char *data_dir, lz_session **out);
LZ_API void lz_session_close(lz_session *session);
LZ_API const char *lz_session_data_dir(const lz_session *session);

/* Expressions. */
LZ_API lz_status lz_expr_parse(const char *text, lz_expr **out);
LZ_API void lz_expr_free(lz_expr *expr);
LZ_API lz_status lz_expr_to_string(const lz_expr *expr, char **out);
LZ_API lz_status lz_expr_substitute(const lz_expr *expr, const char *bindings, lz_expr **out);
LZ_API lz_status lz_expr_reduce_mod_p(const lz_expr *expr, uint32_t p, uint32_t *out);
LZ_API lz_status lz_expr_equal(const lz_expr *a, const lz_expr *b, int *out);
LZ_API void lz_string_free(char *s);

/* Commands. Each produces a report; name arguments may be NULL where noted. */
LZ_API lz_status lz_catalog_list(lz_session *s, lz_report **out);
LZ_API lz_status lz_catalog_show(lz_session *s, const char *name, lz_report **out);
/* name NULL: whole catalog. */
LZ_API lz_status lz_check_leibniz(lz_session *s, const char *name, const lz_options *opts,
                                  lz_report **out);
/* name NULL: whole catalog. */
LZ_API lz_status lz_lcs(lz_session *s, const char *name, const lz_options *opts,
                        lz_report **out);
LZ_API lz_status lz_equations(lz_session *s, const char *name, const lz_options *opts,
                              lz_report **out);
/* path NULL: every shipped family file (of opts->op when given). */
LZ_API lz_status lz_verify(lz_session *s, const char *path, const lz_options *opts,
                           lz_report **out);
LZ_API lz_status lz_dim_report(lz_session *s, const lz_options *opts, lz_report **out);
LZ_API lz_status lz_enumerate(lz_session *s, const char *name, const lz_options *opts,
                              lz_report **out);
LZ_API lz_status lz_coverage(lz_session *s, const lz_options *opts, lz_report **out);
/* name NULL: every real catalog table. */
LZ_API lz_status lz_dual_path(lz_session *s, const char *name, const lz_options *opts,
                              lz_report **out);
LZ_API lz_status lz_compat(lz_session *s, const char *a, const char *b,
                           const lz_options *opts, lz_report **out);
LZ_API lz_status lz_compat_scan(lz_session *s, const lz_options *opts, lz_report **out);

/* Reports. */
LZ_API int lz_report_passed(const lz_report *r);
LZ_API lz_status lz_report_render(const lz_report *r, lz_format format, char **out);
/* Atomic: temporary file in the target directory, then rename. */
LZ_API lz_status lz_report_write(const lz_report *r, lz_format format, const char *path);
LZ_API void lz_report_free(lz_report *r);

#ifdef __cplusplus
}
#endif

#endif
