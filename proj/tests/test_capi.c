/* Exercises the public header from C. */

#include "leibniz/leibniz.h"

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                                       \
  do {                                                                                     \
    if (!(cond)) {                                                                         \
      fprintf(stderr, "%s:%d: expected %s (last error: %s)\n", __FILE__, __LINE__, #cond, \
              lz_last_error());                                                            \
      ++failures;                                                                          \
    }                                                                                      \
  } while (0)

static void expressions(void) {
  lz_expr *e = NULL, *bound = NULL, *one = NULL;
  char *s = NULL;
  uint32_t v = 0;
  int eq = 0;

  EXPECT(lz_expr_parse("(1+mu)/(1-mu)", &e) == LZ_OK);
  EXPECT(lz_expr_substitute(e, "mu=0", &bound) == LZ_OK);
  EXPECT(lz_expr_parse("1", &one) == LZ_OK);
  EXPECT(lz_expr_equal(bound, one, &eq) == LZ_OK && eq == 1);
  lz_expr_free(bound);
  bound = NULL;
  EXPECT(lz_expr_substitute(e, "mu=1", &bound) == LZ_ERR_DENOMINATOR_VANISHES);
  EXPECT(bound == NULL);
  EXPECT(lz_expr_to_string(e, &s) == LZ_OK && strstr(s, "mu") != NULL);
  lz_string_free(s);
  lz_expr_free(e);
  lz_expr_free(one);

  EXPECT(lz_expr_parse("1/2", &e) == LZ_OK);
  EXPECT(lz_expr_reduce_mod_p(e, 5, &v) == LZ_OK && v == 3);
  EXPECT(lz_expr_reduce_mod_p(e, 2, &v) == LZ_ERR_NON_INVERTIBLE_DENOMINATOR);
  lz_expr_free(e);

  e = NULL;
  EXPECT(lz_expr_parse("1+*2", &e) == LZ_ERR_PARSE);
  EXPECT(e == NULL);
  EXPECT(strstr(lz_last_error(), "byte") != NULL);
  EXPECT(strcmp(lz_status_name(LZ_ERR_REFUSED_SIZE), "RefusedSize") == 0);
}

static void commands(void) {
  lz_session *s = NULL;
  lz_report *r = NULL;
  lz_options opts;
  char *text = NULL;

  EXPECT(lz_session_open(LEIBNIZ_TEST_DATA_DIR, &s) == LZ_OK);
  if (!s)
    return;

  EXPECT(lz_catalog_list(s, &r) == LZ_OK);
  EXPECT(lz_report_render(r, LZ_FORMAT_JSON, &text) == LZ_OK);
  EXPECT(strstr(text, "\"count\": 21") != NULL);
  lz_string_free(text);
  lz_report_free(r);

  lz_options_init(&opts);
  opts.op = "nijenhuis";
  r = NULL;
  EXPECT(lz_equations(s, "L99", &opts, &r) == LZ_ERR_UNKNOWN_ALGEBRA);
  EXPECT(r == NULL);
  EXPECT(strstr(lz_last_error(), "unknown algebra") != NULL);

  EXPECT(lz_lcs(s, "L1", &opts, &r) == LZ_OK);
  EXPECT(lz_report_passed(r) == 1);
  EXPECT(lz_report_render(r, LZ_FORMAT_TEXT, &text) == LZ_OK);
  EXPECT(strcmp(text, "L1: [4, 3, 2, 1, 0]\n") == 0);
  lz_string_free(text);
  EXPECT(lz_report_write(r, LZ_FORMAT_TEXT, "/nonexistent-dir/x/report.txt") == LZ_ERR_IO);
  EXPECT(strstr(lz_last_error(), "/nonexistent-dir/x/report.txt") != NULL);
  lz_report_free(r);

  opts.op = "rota-baxter";
  opts.field = 3;
  EXPECT(lz_enumerate(s, "L1", &opts, &r) == LZ_ERR_REFUSED_SIZE);
  opts.field = 4;
  EXPECT(lz_enumerate(s, "L1", &opts, &r) == LZ_ERR_USAGE);
  opts.field = 2;
  opts.bindings = "mu=1";
  EXPECT(lz_check_leibniz(s, "L20", &opts, &r) == LZ_ERR_USAGE);

  lz_options_init(&opts);
  r = NULL;
  EXPECT(lz_compat(s, "L1", "L3", &opts, &r) == LZ_OK);
  EXPECT(lz_report_passed(r) == 1);
  lz_report_free(r);
  EXPECT(lz_compat(s, "L1", "L2", &opts, &r) == LZ_OK);
  EXPECT(lz_report_passed(r) == 0);
  lz_report_free(r);

  EXPECT(lz_catalog_list(NULL, &r) == LZ_ERR_USAGE);
  lz_session_close(s);

  s = NULL;
  EXPECT(lz_session_open("/nonexistent-dir", &s) == LZ_ERR_IO);
  EXPECT(s == NULL);
}

int main(void) {
  expressions();
  commands();
  if (failures)
    fprintf(stderr, "%d failures\n", failures);
  else
    printf("c api: all checks passed\n");
  return failures ? 1 : 0;
}
