#ifndef FPEDSS_FPEDSS_H
#define FPEDSS_FPEDSS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FPEDSS_API __declspec(dllexport)
#elif defined(__GNUC__)
#define FPEDSS_API __attribute__((visibility("default")))
#else
#define FPEDSS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fpedss_status {
  FPEDSS_OK = 0,
  FPEDSS_ERR_INVALID_ARGUMENT = 1,
  FPEDSS_ERR_CONFIG = 2,
  FPEDSS_ERR_NUMERICAL = 3,
  FPEDSS_ERR_IO = 4,
  FPEDSS_ERR_INTERNAL = 5
} fpedss_status;

typedef struct fpedss_config fpedss_config;
typedef struct fpedss_report fpedss_report;
typedef struct fpedss_solution fpedss_solution;

FPEDSS_API const char *fpedss_version(void);

/* Details of the last failed call on the calling thread. */
FPEDSS_API const char *fpedss_last_error(void);
FPEDSS_API const char *fpedss_last_error_key(void);
FPEDSS_API int fpedss_last_error_line(void);

/* Configuration. Strings returned through (buf, cap) are NUL-terminated and
 * truncated to cap; *needed (if non-NULL) receives the full length + 1. */
FPEDSS_API fpedss_status fpedss_config_parse(const char *text, fpedss_config **out);
FPEDSS_API fpedss_status fpedss_config_load(const char *path, fpedss_config **out);
FPEDSS_API fpedss_status fpedss_config_clone(const fpedss_config *config, fpedss_config **out);
FPEDSS_API fpedss_status fpedss_config_set(fpedss_config *config, const char *key,
                                           const char *value);
FPEDSS_API fpedss_status fpedss_config_get(const fpedss_config *config, const char *key,
                                           char *buf, size_t cap, size_t *needed);
FPEDSS_API fpedss_status fpedss_config_echo(const fpedss_config *config, char *buf, size_t cap,
                                            size_t *needed);
/* First line of every output file: tool version, config hash and seed. */
FPEDSS_API fpedss_status fpedss_config_header(const fpedss_config *config, char *buf, size_t cap,
                                              size_t *needed);
FPEDSS_API void fpedss_config_free(fpedss_config *config);

/* Runs the configured method (solve) or the comparison pipeline and writes
 * CSV files to the configured output_dir. `report` may be NULL. */
FPEDSS_API fpedss_status fpedss_solve(const fpedss_config *config, fpedss_report **report);
FPEDSS_API fpedss_status fpedss_compare(const fpedss_config *config, fpedss_report **report);

FPEDSS_API size_t fpedss_report_moment_count(const fpedss_report *report);
FPEDSS_API const char *fpedss_report_method(const fpedss_report *report, size_t index);
FPEDSS_API double fpedss_report_x2(const fpedss_report *report, size_t index);
FPEDSS_API double fpedss_report_x2_rel_error(const fpedss_report *report, size_t index);
FPEDSS_API size_t fpedss_report_warning_count(const fpedss_report *report);
FPEDSS_API const char *fpedss_report_warning(const fpedss_report *report, size_t index);
FPEDSS_API void fpedss_report_free(fpedss_report *report);

/* Classical zero-mode of the truncated operator. */
FPEDSS_API fpedss_status fpedss_classical_solve(double a, double b, double gamma, double ell,
                                                int num_even_states, fpedss_solution **out);
FPEDSS_API size_t fpedss_solution_size(const fpedss_solution *solution);
/* Copies min(cap, size) normalized amplitudes b_0, b_2, ... into out. */
FPEDSS_API size_t fpedss_solution_amplitudes(const fpedss_solution *solution, double *out,
                                             size_t cap);
FPEDSS_API double fpedss_solution_eigenvalue(const fpedss_solution *solution);
FPEDSS_API double fpedss_solution_second_moment(const fpedss_solution *solution);
FPEDSS_API fpedss_status fpedss_solution_pdf(const fpedss_solution *solution, const double *x,
                                             size_t count, double *out);
FPEDSS_API void fpedss_solution_free(fpedss_solution *solution);

/* Exact stationary density and its second moment by quadrature. */
FPEDSS_API fpedss_status fpedss_exact_pdf(double a, double b, double gamma, const double *x,
                                          size_t count, double *out);
FPEDSS_API fpedss_status fpedss_exact_second_moment(double a, double b, double gamma,
                                                    double *out);

#ifdef __cplusplus
}
#endif

#endif
