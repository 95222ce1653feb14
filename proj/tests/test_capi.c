#include <math.h>
#include <stdio.h>
#include <string.h>

#include "specband/specband.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void worked_pipeline(void) {
  const double c[] = {0.0, 0.0};
  const double b[] = {1.0, 1.0};
  sb_matrix* m = NULL;
  EXPECT(sb_matrix_hat_create(3, c, b, 0.0, 1.0, 0.0, 0.0, &m) == SB_OK);
  EXPECT(sb_matrix_size(m) == 3);
  EXPECT(sb_matrix_is_hat(m));

  sb_direct_result* direct = NULL;
  EXPECT(sb_direct(m, NULL, &direct) == SB_OK);
  EXPECT(sb_direct_result_pass(direct));
  double re = 0.0, im = 0.0;
  EXPECT(sb_direct_result_eigenvalue(direct, 0, &re, &im) == SB_OK);
  EXPECT(fabs(re + sqrt(3.0)) < 1e-12 && fabs(im) < 1e-12);
  EXPECT(sb_direct_result_eigenvalue(direct, 3, &re, &im) == SB_ERR_INVALID_ARGUMENT);
  double mu = 0.0;
  EXPECT(sb_direct_result_submatrix_eigenvalue(direct, 1, &mu) == SB_OK);
  EXPECT(fabs(mu - 1.0) < 1e-12);

  sb_spectral_data* data = NULL;
  EXPECT(sb_direct_result_spectral_data(direct, &data) == SB_OK);
  EXPECT(sb_spectral_data_size(data) == 3);

  sb_inverse_result* inv = NULL;
  EXPECT(sb_inverse(data, NULL, &inv) == SB_OK);
  EXPECT(sb_inverse_result_feasible(inv));
  EXPECT(sb_inverse_result_branch_count(inv) == 1);
  EXPECT(sb_inverse_result_solution_count(inv) == 1);
  double worst = 1.0;
  EXPECT(sb_inverse_result_residual(inv, 0, &worst) == SB_OK);
  EXPECT(worst < 1e-10);

  sb_matrix* back = NULL;
  EXPECT(sb_inverse_result_solution(inv, 0, &back) == SB_OK);
  char* json = NULL;
  EXPECT(sb_matrix_to_json(back, &json) == SB_OK);
  EXPECT(json != NULL && strstr(json, "\"matrix-hat\"") != NULL);

  sb_matrix* parsed = NULL;
  EXPECT(sb_matrix_parse(json, &parsed) == SB_OK);
  EXPECT(sb_matrix_size(parsed) == 3);

  sb_string_free(json);
  sb_matrix_free(parsed);
  sb_matrix_free(back);
  sb_inverse_result_free(inv);
  sb_spectral_data_free(data);
  sb_direct_result_free(direct);
  sb_matrix_free(m);
}

static void infeasible_data(void) {
  const double lre[] = {-sqrt(3.0), 0.0, sqrt(3.0)};
  const double lim[] = {0.0, 0.0, 0.0};
  const double mu[] = {-1.0, 1.0};
  sb_spectral_data* d = NULL;
  EXPECT(sb_spectral_data_create(3, lre, lim, mu, 0.0, 2.0, &d) == SB_OK);
  sb_inverse_result* r = NULL;
  EXPECT(sb_inverse(d, NULL, &r) == SB_OK);
  EXPECT(!sb_inverse_result_feasible(r));
  EXPECT(sb_inverse_result_solution_count(r) == 0);
  sb_inverse_result_free(r);
  sb_spectral_data_free(d);

  const double unsorted[] = {1.0, -1.0};
  EXPECT(sb_spectral_data_create(3, lre, lim, unsorted, 0.0, 1.0, &d) == SB_ERR_INVALID_DATA);
  EXPECT(strstr(sb_last_error(), "mu not strictly increasing") != NULL);
}

static void errors(void) {
  const double c[] = {0.0, 0.0};
  const double b[] = {1.0, 0.0};
  sb_matrix* m = NULL;
  EXPECT(sb_matrix_hat_create(3, c, b, 0.0, 1.0, 0.0, 0.0, &m) == SB_ERR_INVALID_MATRIX);
  EXPECT(m == NULL);
  EXPECT(strlen(sb_last_error()) > 0);
  EXPECT(sb_matrix_parse("{", &m) == SB_ERR_PARSE);
  EXPECT(sb_direct(NULL, NULL, NULL) == SB_ERR_INVALID_ARGUMENT);
  EXPECT(strcmp(sb_status_name(SB_ERR_INFEASIBLE), "InfeasibleBranch") == 0);

  sb_options* o = sb_options_create();
  EXPECT(sb_options_set_tol(o, -1.0) == SB_ERR_INVALID_ARGUMENT);
  EXPECT(sb_options_set_tol(o, 1e-9) == SB_OK);
  EXPECT(strlen(sb_last_error()) == 0);
  sb_options_free(o);
}

static void commands(void) {
  sb_options* o = sb_options_create();
  sb_options_set_seed(o, 5);
  sb_options_set_count(o, 4);
  sb_report* a = NULL;
  sb_report* b = NULL;
  EXPECT(sb_run("roundtrip", NULL, 0, o, &a) == SB_OK);
  EXPECT(sb_run("roundtrip", NULL, 0, o, &b) == SB_OK);
  EXPECT(sb_report_exit_code(a) == 0);
  EXPECT(strcmp(sb_report_json(a), sb_report_json(b)) == 0);
  sb_report_free(a);
  sb_report_free(b);

  sb_report* s = NULL;
  EXPECT(sb_run("selftest", NULL, 0, NULL, &s) == SB_OK);
  EXPECT(sb_report_pass(s));
  EXPECT(strstr(sb_report_text(s), "PASS") != NULL);
  sb_report_free(s);

  const char* missing[] = {"/nonexistent/file.json"};
  sb_report* e = NULL;
  EXPECT(sb_run("direct", missing, 1, NULL, &e) == SB_OK);
  EXPECT(sb_report_exit_code(e) == 1);
  EXPECT(strlen(sb_report_error(e)) > 0);
  sb_report_free(e);
  sb_options_free(o);
}

int main(void) {
  worked_pipeline();
  infeasible_data();
  errors();
  commands();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("c api: all checks passed\n");
  return 0;
}
