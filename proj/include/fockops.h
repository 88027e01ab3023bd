#ifndef FOCKOPS_H
#define FOCKOPS_H

/* C interface to the fockops library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every call returns an fk_status; on failure
 * fk_last_error() describes the problem (per thread, valid until the next
 * failing call on that thread). Exponents are passed as strings so that
 * rationals like "3/2" stay exact; "inf" is accepted where allowed. */

#include <stddef.h>
#include <stdint.h>

#if defined(FOCKOPS_BUILDING)
#define FK_API __attribute__((visibility("default")))
#else
#define FK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fk_status {
  FK_OK = 0,
  FK_ERR_INVALID_ARGUMENT = 1,
  FK_ERR_PARSE = 2,
  FK_ERR_TAIL_NOT_NEGLIGIBLE = 3,
  FK_ERR_ZERO_WEIGHT = 4,
  FK_ERR_UNSUPPORTED_EXPONENTS = 5,
  FK_ERR_REDUCES_TO_SINGLE = 6,
  FK_ERR_IDENTICAL_MAPS = 7,
  FK_ERR_NONZERO_OFFSETS = 8,
  FK_ERR_NO_CONVERGENCE = 9,
  FK_ERR_NOT_BOUNDED = 10,
  FK_ERR_DOMAIN = 11,
  FK_ERR_INTERNAL = 99
} fk_status;

typedef enum fk_verdict {
  FK_UNBOUNDED = 0,
  FK_BOUNDED_NOT_COMPACT = 1,
  FK_COMPACT = 2,
  FK_INDETERMINATE = 3
} fk_verdict;

typedef enum fk_format { FK_FORMAT_JSON = 0, FK_FORMAT_TEXT = 1 } fk_format;

typedef struct fk_complex {
  double re;
  double im;
} fk_complex;

/* phi(z) = a z + b */
typedef struct fk_affine {
  fk_complex a;
  fk_complex b;
} fk_affine;

typedef struct fk_symbol fk_symbol;
typedef struct fk_job fk_job;
typedef struct fk_report fk_report;

typedef struct fk_ess_bounds {
  double lower;
  double upper; /* +inf when unbounded above */
  double alpha;
  double limsup1;
  double limsup2;
} fk_ess_bounds;

FK_API const char* fk_version(void);
FK_API const char* fk_last_error(void);
FK_API const char* fk_verdict_name(fk_verdict v);
FK_API void fk_string_free(char* s);

/* Exp-poly symbols: sum_j Q_j(z) exp(s_j z). */
FK_API fk_status fk_symbol_create(fk_symbol** out);
/* Adds Q(z) exp(s z) with Q = coeffs[0] + coeffs[1] z + ... */
FK_API fk_status fk_symbol_add_term(fk_symbol* f, const fk_complex* coeffs, size_t n_coeffs, fk_complex s);
FK_API fk_status fk_symbol_eval(const fk_symbol* f, fk_complex z, fk_complex* out);
FK_API void fk_symbol_destroy(fk_symbol* f);

/* F^p norm by quadrature; radial_max <= 0 selects it automatically. */
FK_API fk_status fk_norm_p(const fk_symbol* f, double p, double radial_max, double* out);
FK_API fk_status fk_norm_sup(const fk_symbol* f, double* out);

/* branch (optional) receives a string to be released with fk_string_free. */
FK_API fk_status fk_classify_single(const fk_symbol* psi, fk_affine phi, const char* p, const char* q,
                                    fk_verdict* out, char** branch);
FK_API fk_status fk_classify_difference(const fk_symbol* psi1, fk_affine phi1, const fk_symbol* psi2,
                                        fk_affine phi2, const char* p, const char* q, fk_verdict* out,
                                        char** branch);
FK_API fk_status fk_classify_combination(fk_complex c1, fk_affine phi1, fk_complex c2, fk_affine phi2,
                                         const char* p, const char* q, fk_verdict* out);
FK_API fk_status fk_ess_bounds_difference(const fk_symbol* psi1, fk_affine phi1, const fk_symbol* psi2,
                                          fk_affine phi2, const char* p, const char* q, fk_ess_bounds* out);

/* Batch jobs described by a JSON config. */
FK_API fk_status fk_job_parse(const char* config_text, fk_job** out);
FK_API fk_status fk_job_set_seed(fk_job* job, uint64_t seed);
FK_API fk_status fk_job_set_radial_max(fk_job* job, double radial_max);
FK_API fk_status fk_job_run(const fk_job* job, fk_report** out);
FK_API void fk_job_destroy(fk_job* job);

FK_API fk_status fk_report_render(const fk_report* report, fk_format format, int include_timing, char** out);
FK_API int fk_report_exit_code(const fk_report* report);
FK_API void fk_report_destroy(fk_report* report);

#ifdef __cplusplus
}
#endif

#endif
