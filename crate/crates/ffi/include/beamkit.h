#ifndef BEAMKIT_H
#define BEAMKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BeamkitDispersion {
  BEAMKIT_DISPERSION_VACUUM = 0,
  // `n = p0`.
  BEAMKIT_DISPERSION_CONSTANT = 1,
  // `n = p0 + p1 omega^2`.
  BEAMKIT_DISPERSION_CAUCHY = 2,
} BeamkitDispersion;

typedef enum BeamkitRepresentation {
  BEAMKIT_REPRESENTATION_DIRECT = 0,
  BEAMKIT_REPRESENTATION_SERIES = 1,
  BEAMKIT_REPRESENTATION_INTEGRAL = 2,
} BeamkitRepresentation;

// Status code of every entry point.
typedef enum BeamkitStatus {
  BEAMKIT_STATUS_OK = 0,
  BEAMKIT_STATUS_NULL_POINTER = 1,
  BEAMKIT_STATUS_INVALID_ARGUMENT = 2,
  // Input outside the mathematical domain (e.g. a support boundary).
  BEAMKIT_STATUS_DOMAIN = 3,
  // The result was written but missed the requested tolerance.
  BEAMKIT_STATUS_NOT_CONVERGED = 4,
  BEAMKIT_STATUS_PANIC = 5,
} BeamkitStatus;

typedef enum BeamkitSummation {
  BEAMKIT_SUMMATION_RAW = 0,
  BEAMKIT_SUMMATION_CESARO = 1,
  BEAMKIT_SUMMATION_DOUBLE_AVERAGE = 2,
} BeamkitSummation;

// Opaque beam handle: frequency, cone angle and dispersion model.
typedef struct BeamkitBeam BeamkitBeam;

// One evaluated field value.
typedef struct BeamkitValue {
  double re;
  double im;
  // Tail estimate (series) or quadrature error estimate (integral); 0
  // for the direct route.
  double error_estimate;
  // Terms summed (series) or integrand evaluations (integral).
  uint64_t work;
  bool converged;
} BeamkitValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after success.
const char *beamkit_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *beamkit_version(void);

// Creates a vacuum beam with angular frequency `omega` and cone cosine
// `cos_theta`.
//
// # Safety
// `out` must be null or valid for writing one pointer.
enum BeamkitStatus beamkit_beam_new(double omega, double cos_theta, struct BeamkitBeam **out);

// Replaces the dispersion model. `p0`, `p1` are the model parameters (see
// [`BeamkitDispersion`]); unused ones are ignored.
//
// # Safety
// `beam` must be null or a live handle from [`beamkit_beam_new`].
enum BeamkitStatus beamkit_beam_set_dispersion(struct BeamkitBeam *beam,
                                               enum BeamkitDispersion kind,
                                               double p0,
                                               double p1);

// Releases a handle; null is a no-op.
//
// # Safety
// `beam` must be null or a live handle that is not used afterwards.
void beamkit_beam_free(struct BeamkitBeam *beam);

// Evaluates the beam at `(z, rho, t)` through `rep`. `tol` is ignored by
// the direct route. On `NOT_CONVERGED` the best estimate is still written.
//
// # Safety
// `beam` must be null or a live handle; `out` null or valid for writing.
enum BeamkitStatus beamkit_eval(const struct BeamkitBeam *beam,
                                enum BeamkitRepresentation rep,
                                double z,
                                double rho,
                                double t,
                                double tol,
                                struct BeamkitValue *out);

// Flat-spectrum X-wave closed form at `(z, rho, t)`.
//
// # Safety
// `out` must be null or valid for writing one `double`.
enum BeamkitStatus beamkit_xwave(double cos_theta, double z, double rho, double t, double *out);

// Summed `sum_{n <= n_max} (2n+1) P_n(a) P_n(b) P_n(c)`.
//
// # Safety
// `out` must be null or valid for writing one `double`.
enum BeamkitStatus beamkit_triple_legendre_sum(double cos_theta,
                                               double cos_eta,
                                               double cos_gamma,
                                               size_t n_max,
                                               enum BeamkitSummation mode,
                                               double *out);

// Runs a verification suite (`"all"`, `"stratton"`, ...) and returns the
// reports as a JSON array in `*out_json` (free with
// [`beamkit_string_free`]). `*all_passed` receives the overall verdict.
//
// # Safety
// `suite` must be null or a NUL-terminated string; the out pointers null or
// valid for writing.
enum BeamkitStatus beamkit_verify_suite(const char *suite, char **out_json, bool *all_passed);

// Releases a string returned by the library; null is a no-op.
//
// # Safety
// `s` must be null or a string from this library not yet released.
void beamkit_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BEAMKIT_H */
