#ifndef LIBNET_FFI_H
#define LIBNET_FFI_H

/* Generated by cbindgen from the libnet-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible function.
 */
typedef enum LibnetStatus {
  /*
   Success.
   */
  LIBNET_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  LIBNET_STATUS_NULL_ARGUMENT = 1,
  /*
   A string argument was not valid UTF-8.
   */
  LIBNET_STATUS_INVALID_UTF8 = 2,
  /*
   The config file could not be read.
   */
  LIBNET_STATUS_IO = 3,
  /*
   The config failed to parse or violated an invariant.
   */
  LIBNET_STATUS_INVALID_CONFIG = 4,
  /*
   A numeric argument was outside its domain.
   */
  LIBNET_STATUS_DOMAIN = 5,
  /*
   An iterative evaluation failed to converge.
   */
  LIBNET_STATUS_NON_CONVERGENCE = 6,
  /*
   The requested computation panicked; this is a bug in the library.
   */
  LIBNET_STATUS_INTERNAL = 7,
} LibnetStatus;

/*
 Opaque scenario handle wrapping a parsed, validated configuration.
 */
typedef struct LibnetScenario LibnetScenario;

/*
 Monte Carlo estimate with a 95% confidence interval.
 */
typedef struct LibnetEstimate {
  double mean;
  double std_error;
  double ci_lo;
  double ci_hi;
  uint64_t trials;
} LibnetEstimate;

/*
 Result of the three-way validation run.
 */
typedef struct LibnetValidation {
  double closed_form;
  double quadrature;
  struct LibnetEstimate empirical;
  /*
   Relative difference between the closed form and quadrature.
   */
  double rel_cf_quad;
  double z_score;
  /*
   1 when closed form and quadrature agree to 1e-8 relative.
   */
  int32_t math_pass;
  /*
   1 when the Monte Carlo mean lies within three standard errors.
   */
  int32_t stat_pass;
} LibnetValidation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copy the most recent error message for this thread into `buffer`
 (NUL-terminated, truncated to `capacity`). Returns the full message
 length in bytes, excluding the terminator.

 # Safety
 `buffer` must point to at least `capacity` writable bytes, or be null
 (in which case only the length is returned).
 */
size_t libnet_last_error_message(char *buffer, size_t capacity);

/*
 Parse a scenario from config-file text.

 # Safety
 `text` must be a NUL-terminated string; `out` must be a valid pointer.
 The returned handle must be released with `libnet_scenario_free`.
 */
enum LibnetStatus libnet_scenario_parse(const char *text, struct LibnetScenario **out);

/*
 Load a scenario from a config file on disk.

 # Safety
 `path` must be a NUL-terminated string; `out` must be a valid pointer.
 The returned handle must be released with `libnet_scenario_free`.
 */
enum LibnetStatus libnet_scenario_load(const char *path, struct LibnetScenario **out);

/*
 Release a scenario handle. Null is accepted and ignored.

 # Safety
 `scenario` must be a handle produced by this library that has not
 already been freed.
 */
void libnet_scenario_free(struct LibnetScenario *scenario);

/*
 Lambertian emission order and combined exponent derived from the
 scenario's half-power semi-angle.

 # Safety
 `scenario` must be a live handle; `m_out` and `beta_out` must each be
 valid or null (null outputs are skipped).
 */
enum LibnetStatus libnet_scenario_order(const struct LibnetScenario *scenario,
                                        double *m_out,
                                        double *beta_out);

/*
 Lambertian emission order `m = -ln 2 / ln cos(theta_h)` for a
 half-power semi-angle in radians.

 # Safety
 `out` must be a valid pointer.
 */
enum LibnetStatus libnet_lambertian_order(double theta_h, double *out);

/*
 Gauss hypergeometric function 2F1(a, b; c; z) for z <= 0, evaluated
 to relative tolerance `tol` in [1e-15, 1e-6].

 # Safety
 `out` must be a valid pointer.
 */
enum LibnetStatus libnet_hyp2f1(double a, double b, double c, double z, double tol, double *out);

/*
 Closed-form mean co-channel interference of a 1D Poisson field over
 the one-sided visible support. `clamped_out` (optional) is set to 1
 when the support was empty and the value clamped to zero.

 # Safety
 `out` must be a valid pointer; `clamped_out` may be null.
 */
enum LibnetStatus libnet_mean_interference_1d(double lambda,
                                              double h,
                                              double z,
                                              double theta_f,
                                              double beta,
                                              double *out,
                                              int32_t *clamped_out);

/*
 Closed-form mean co-channel interference of a 2D Poisson field over
 the annular visible support.

 # Safety
 `out` must be a valid pointer; `clamped_out` may be null.
 */
enum LibnetStatus libnet_mean_interference_2d(double lambda,
                                              double h,
                                              double z,
                                              double theta_f,
                                              double beta,
                                              double *out,
                                              int32_t *clamped_out);

/*
 Laplace functional of the interference, `E[exp(-s I)]`, over the
 visible support of the given dimension (1 or 2). The half-power
 semi-angle `theta_h` (radians) fixes the exponent `beta = m + 3`.

 # Safety
 `out` must be a valid pointer.
 */
enum LibnetStatus libnet_laplace_functional(double s,
                                            double lambda,
                                            double h,
                                            double z,
                                            double theta_h,
                                            double theta_f,
                                            uint32_t dimension,
                                            double *out);

/*
 Monte Carlo estimate of the mean co-channel interference for a
 scenario. `seed_override < 0` and `trials_override <= 0` keep the
 config values.

 # Safety
 `scenario` must be a live handle; `out` must be a valid pointer.
 */
enum LibnetStatus libnet_monte_carlo_mean(const struct LibnetScenario *scenario,
                                          int64_t seed_override,
                                          int64_t trials_override,
                                          struct LibnetEstimate *out);

/*
 Run the full three-way validation (closed form, quadrature oracle,
 Monte Carlo) for a scenario.

 # Safety
 `scenario` must be a live handle; `out` must be a valid pointer.
 */
enum LibnetStatus libnet_validate(const struct LibnetScenario *scenario,
                                  int64_t seed_override,
                                  int64_t trials_override,
                                  struct LibnetValidation *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LIBNET_FFI_H */
