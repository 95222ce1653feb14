#ifndef SPECBAND_SPECBAND_H
#define SPECBAND_SPECBAND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SPECBAND_BUILDING)
#    define SB_API __declspec(dllexport)
#  else
#    define SB_API __declspec(dllimport)
#  endif
#else
#  define SB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_ERR_INVALID_ARGUMENT = 1,
  SB_ERR_PARSE = 2,
  SB_ERR_INVALID_MATRIX = 3,
  SB_ERR_INVALID_DATA = 4,
  SB_ERR_INVALID_MEASURE = 5,
  SB_ERR_NON_CONVERGENCE = 6,
  SB_ERR_ORACLE_OVERFLOW = 7,
  SB_ERR_INFEASIBLE = 8,
  SB_ERR_BREAKDOWN = 9,
  SB_ERR_VERIFICATION_FAILED = 10,
  SB_ERR_INTERNAL = 99
} sb_status;

/* Opaque handles. Every *_create / producing call hands ownership to the
   caller, released with the matching *_free. */
typedef struct sb_matrix sb_matrix;
typedef struct sb_spectral_data sb_spectral_data;
typedef struct sb_options sb_options;
typedef struct sb_direct_result sb_direct_result;
typedef struct sb_inverse_result sb_inverse_result;
typedef struct sb_report sb_report;

SB_API const char* sb_version(void);
SB_API const char* sb_status_name(sb_status status);
/* Message of the last failing call on this thread; empty string if none. */
SB_API const char* sb_last_error(void);
SB_API void sb_string_free(char* s);

/* Matrices. Diagonal arrays have n-1 entries.
   General form: couplings b[0..n-1] as separate real/imag arrays, b[n-1] is the corner.
   Subclass form: real couplings b_hat[0..n-2], complex corner b_hat_n. */
SB_API sb_status sb_matrix_general_create(size_t n, const double* c, const double* b_re, const double* b_im,
                                          double a_n_re, double a_n_im, sb_matrix** out);
SB_API sb_status sb_matrix_hat_create(size_t n, const double* c_hat, const double* b_hat, double b_n_re,
                                      double b_n_im, double a_n_re, double a_n_im, sb_matrix** out);
SB_API sb_status sb_matrix_parse(const char* json, sb_matrix** out);
SB_API sb_status sb_matrix_to_json(const sb_matrix* m, char** out);
SB_API size_t sb_matrix_size(const sb_matrix* m);
SB_API int sb_matrix_is_hat(const sb_matrix* m);
SB_API sb_status sb_matrix_canonicalize(const sb_matrix* m, sb_matrix** out);
SB_API void sb_matrix_free(sb_matrix* m);

/* Spectral data: n eigenvalues, n-1 strictly increasing mu, nonzero beta. */
SB_API sb_status sb_spectral_data_create(size_t n, const double* lambda_re, const double* lambda_im,
                                         const double* mu, double beta_re, double beta_im,
                                         sb_spectral_data** out);
SB_API sb_status sb_spectral_data_parse(const char* json, sb_spectral_data** out);
SB_API sb_status sb_spectral_data_to_json(const sb_spectral_data* d, char** out);
SB_API size_t sb_spectral_data_size(const sb_spectral_data* d);
SB_API void sb_spectral_data_free(sb_spectral_data* d);

SB_API sb_options* sb_options_create(void);
SB_API void sb_options_free(sb_options* o);
SB_API sb_status sb_options_set_tol(sb_options* o, double tol);
SB_API sb_status sb_options_set_branch(sb_options* o, uint64_t selector);
SB_API sb_status sb_options_set_all_branches(sb_options* o, int enabled);
SB_API sb_status sb_options_set_seed(sb_options* o, uint64_t seed);
SB_API sb_status sb_options_set_count(sb_options* o, size_t count);
SB_API sb_status sb_options_set_threads(sb_options* o, unsigned threads);
SB_API sb_status sb_options_set_timing(sb_options* o, int enabled);

/* Direct problem. options may be NULL. */
SB_API sb_status sb_direct(const sb_matrix* m, const sb_options* options, sb_direct_result** out);
SB_API size_t sb_direct_result_size(const sb_direct_result* r);
SB_API sb_status sb_direct_result_eigenvalue(const sb_direct_result* r, size_t j, double* re, double* im);
SB_API sb_status sb_direct_result_submatrix_eigenvalue(const sb_direct_result* r, size_t k, double* mu);
SB_API sb_status sb_direct_result_beta(const sb_direct_result* r, double* re, double* im);
SB_API int sb_direct_result_pass(const sb_direct_result* r);
SB_API sb_status sb_direct_result_spectral_data(const sb_direct_result* r, sb_spectral_data** out);
SB_API sb_status sb_direct_result_to_json(const sb_direct_result* r, char** out);
SB_API void sb_direct_result_free(sb_direct_result* r);

/* Inverse problem. Enumerates every branch unless a single selector is set
   and all_branches is off. Infeasible data yields SB_OK with feasible == 0. */
SB_API sb_status sb_inverse(const sb_spectral_data* d, const sb_options* options, sb_inverse_result** out);
SB_API int sb_inverse_result_feasible(const sb_inverse_result* r);
SB_API uint64_t sb_inverse_result_branch_count(const sb_inverse_result* r);
SB_API size_t sb_inverse_result_solution_count(const sb_inverse_result* r);
SB_API sb_status sb_inverse_result_solution(const sb_inverse_result* r, size_t i, sb_matrix** out);
SB_API sb_status sb_inverse_result_residual(const sb_inverse_result* r, size_t i, double* worst);
SB_API sb_status sb_inverse_result_to_json(const sb_inverse_result* r, char** out);
SB_API void sb_inverse_result_free(sb_inverse_result* r);

/* Commands: "direct", "inverse", "verify", "roundtrip", "selftest". inputs
   are file paths. Returns SB_OK whenever a report was produced; the
   command outcome is in the report exit code (0 pass, 1 input error,
   2 infeasible or failed checks). */
SB_API sb_status sb_run(const char* command, const char* const* inputs, size_t n_inputs,
                        const sb_options* options, sb_report** out);
SB_API int sb_report_exit_code(const sb_report* r);
SB_API int sb_report_pass(const sb_report* r);
SB_API const char* sb_report_json(const sb_report* r);
SB_API const char* sb_report_text(const sb_report* r);
SB_API const char* sb_report_error(const sb_report* r);
SB_API void sb_report_free(sb_report* r);

#ifdef __cplusplus
}
#endif

#endif
