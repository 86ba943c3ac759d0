/* C interface to the sigcount library. */
#ifndef SIGCOUNT_SIGCOUNT_H
#define SIGCOUNT_SIGCOUNT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SC_API __declspec(dllexport)
#else
#define SC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_INVALID_ARGUMENT = 1,
  SC_DEGENERATE_BASIS = 2,
  SC_NOT_LATTICE_POINT = 3,
  SC_LATTICE_POINT = 4,
  SC_PRECISION_UNREACHABLE = 5,
  SC_FORMULA_MISMATCH = 6,
  SC_IM_TAU_TOO_LARGE = 7,
  SC_POSITIVE_DISCRIMINANT = 8,
  SC_ROOT_FINDING_FAILURE = 9,
  SC_BUDGET_EXCEEDED = 10,
  SC_PRECISION_TOO_LOW = 11,
  SC_NO_KERNEL = 12,
  SC_DEGREE_TOO_SMALL = 13,
  SC_CONTOUR_STUCK = 14,
  SC_WITNESS_NOT_FOUND = 15,
  SC_DOMAIN_VIOLATION = 16,
  SC_HYPOTHESIS_UNMET = 17,
  SC_CONFIG_ERROR = 18,
  SC_IO_ERROR = 19,
  SC_INTERNAL_ERROR = 99
} sc_status;

SC_API const char* sc_version(void);
SC_API const char* sc_status_name(sc_status status);
/* Message of the last failing call on this thread; "" after success. */
SC_API const char* sc_last_error(void);
/* Process exit status for a failure: 2 usage, 3 hypothesis, 4 precision, 5 budget, 1 other. */
SC_API int sc_exit_code(sc_status status);
/* Frees strings returned through char** out-parameters. */
SC_API void sc_string_free(char* s);

/* Parses a complex literal "a+bi" (decimal or rational parts). */
SC_API sc_status sc_parse_complex(const char* text, double out[2]);

/* Lattices. */
typedef struct sc_lattice sc_lattice;

typedef struct sc_lattice_info {
  double omega1[2];
  double omega2[2];
  double tau[2];
  int64_t a, b, c, d; /* (omega1, omega2) = [[a, b], [c, d]] (w1, w2) */
  int exact;          /* periods held as Gaussian rationals */
  double cell_radius;
} sc_lattice_info;

/* "w1,w2" with complex literals "a+bi" whose parts are decimal or rational. */
SC_API sc_status sc_lattice_parse(const char* spec, sc_lattice** out);
SC_API sc_status sc_lattice_from_periods(double w1_re, double w1_im, double w2_re, double w2_im,
                                         sc_lattice** out);
SC_API void sc_lattice_free(sc_lattice* lat);
SC_API sc_status sc_lattice_get_info(const sc_lattice* lat, sc_lattice_info* out);
SC_API sc_status sc_lattice_decompose(const sc_lattice* lat, double re, double im, int64_t* k, int64_t* l);
SC_API sc_status sc_lattice_reduce_to_cell(const sc_lattice* lat, double re, double im, double z0[2],
                                           int64_t* m, int64_t* n);

/* Sigma and zeta. */
typedef struct sc_sigma sc_sigma;

typedef struct sc_invariants {
  double eta1[2];
  double eta2[2];
  double g2[2];
  double g3[2];
  double e2[2]; /* E2 at the reduced tau */
  double legendre_residual; /* |eta1 omega2 - eta2 omega1 - 2 pi i| */
} sc_invariants;

/* digits in [4, 300] sets the series truncation 10^-digits. */
SC_API sc_status sc_sigma_new(const sc_lattice* lat, int digits, sc_sigma** out);
SC_API void sc_sigma_free(sc_sigma* ev);
SC_API sc_status sc_sigma_eval(const sc_sigma* ev, double re, double im, double out[2]);
SC_API sc_status sc_sigma_log(const sc_sigma* ev, double re, double im, double* log_abs, double* arg);
SC_API sc_status sc_zeta_eval(const sc_sigma* ev, double re, double im, double out[2]);
SC_API sc_status sc_sigma_invariants(const sc_sigma* ev, sc_invariants* out);

/* Growth. */
typedef struct sc_certificate {
  double delta_disc;
  double c1, c2;
  double c, r;
  double delta_sigma;
  double upper_c1, upper_c2;
} sc_certificate;

SC_API sc_status sc_growth_certificate(const sc_lattice* lat, int digits, sc_certificate* out);
SC_API double sc_phi(double y);
/* Writes y_0..y_steps into out[0..steps]; cap must be at least steps + 1. */
SC_API sc_status sc_threshold_iteration(int steps, double* out, size_t cap);

/* Zero counting of F(z) = P(z, sigma(z)) on |z| <= R. */
typedef struct sc_zero_report {
  int count;
  double radius; /* contour radius actually used */
  int perturbations;
  double winding_residual;
} sc_zero_report;

SC_API sc_status sc_count_zeros(const sc_sigma* ev, const char* poly, double R, sc_zero_report* out);
SC_API sc_status sc_besson_bound(int L, double R, double c, double* out);
/* Jensen bound on zeros in |z| <= R1 for an integer P of total degree <= T. */
SC_API sc_status sc_jensen_bound(const sc_sigma* ev, const char* poly, int T, double H, int d, double R1,
                                 double* out);

/* Bound formulas by name; see sc_bound_names. */
typedef struct sc_bound_value {
  double value;
  double log_abs;
  int sign;
} sc_bound_value;

/* Comma-separated list of formula ids; caller frees. */
SC_API sc_status sc_bound_names(char** out);
/* JSON object {"parameters":[...],"constants":[...]}; caller frees. */
SC_API sc_status sc_bound_signature(const char* id, char** out);
SC_API sc_status sc_bound_eval(const char* id, const char* const* param_names, const double* param_values,
                               size_t n_params, const char* const* const_names, const double* const_values,
                               size_t n_consts, sc_bound_value* out);

/* Auxiliary polynomial through algebraic points "X;Y", each coordinate a
 * rational or "{c_d,...,c_0}@k". masser_d <= 0 disables the degree check.
 * Output is a JSON object; caller frees. */
SC_API sc_status sc_auxpoly(const char* const* points, size_t n_points, int T, int masser_d, char** out_json);

/* Report runners. Configuration is key=value text; out_path "-" means stdout.
 * summary_json (optional) receives the summary line; caller frees. */
SC_API sc_status sc_census_run(const char* manifest_text, const char* out_path, char** summary_json);
SC_API sc_status sc_growth_suite(const sc_lattice* lat, int digits, uint64_t seed, const char* out_path,
                                 char** summary_json);
SC_API sc_status sc_zero_experiment(const char* config_text, const char* out_path, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif
