//! C ABI for `beamkit`.
//!
//! Conventions:
//!
//! * every function returns a [`BeamkitStatus`]; results go through out
//!   pointers, which are left untouched on error;
//! * after a non-`OK` status, [`beamkit_last_error_message`] describes the
//!   failure (thread-local, valid until the next call on the same thread);
//! * [`BeamkitBeam`] handles come from [`beamkit_beam_new`] and must be
//!   released with [`beamkit_beam_free`];
//! * strings returned by the library must be released with
//!   [`beamkit_string_free`].
//!
//! Panics never cross the boundary; they surface as `BEAMKIT_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use beamkit::beam::{eval_direct_dispersive, BeamParams, DispersionModel, FieldPoint};
use beamkit::identities::{run_suite, Suite};
use beamkit::integral_rep::eval_integral_rep_dispersive;
use beamkit::partial_wave::eval_series_dispersive;
use beamkit::wavepacket::{triple_legendre_sum, xwave_closed_form, ConeAngles, Summation};
use beamkit::Error;

/// Status code of every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamkitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Input outside the mathematical domain (e.g. a support boundary).
    Domain = 3,
    /// The result was written but missed the requested tolerance.
    NotConverged = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamkitRepresentation {
    Direct = 0,
    Series = 1,
    Integral = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamkitDispersion {
    Vacuum = 0,
    /// `n = p0`.
    Constant = 1,
    /// `n = p0 + p1 omega^2`.
    Cauchy = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamkitSummation {
    Raw = 0,
    Cesaro = 1,
    DoubleAverage = 2,
}

/// One evaluated field value.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamkitValue {
    pub re: f64,
    pub im: f64,
    /// Tail estimate (series) or quadrature error estimate (integral); 0
    /// for the direct route.
    pub error_estimate: f64,
    /// Terms summed (series) or integrand evaluations (integral).
    pub work: u64,
    pub converged: bool,
}

/// Opaque beam handle: frequency, cone angle and dispersion model.
pub struct BeamkitBeam {
    params: BeamParams,
    model: DispersionModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(BeamkitStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain { .. } | Error::SingularBoundary { .. } | Error::Dispersion { .. } => {
                BeamkitStatus::Domain
            }
            Error::InvalidParameter { .. } => BeamkitStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(BeamkitStatus::NullPointer, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<BeamkitStatus, Failure>>(f: F) -> BeamkitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            if status == BeamkitStatus::Ok {
                set_last_error("");
            }
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_owned());
            set_last_error(&format!("internal panic: {msg}"));
            BeamkitStatus::Panic
        }
    }
}

/// Message for the last failed call on this thread; empty after success.
#[no_mangle]
pub extern "C" fn beamkit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn beamkit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a vacuum beam with angular frequency `omega` and cone cosine
/// `cos_theta`.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn beamkit_beam_new(
    omega: f64,
    cos_theta: f64,
    out: *mut *mut BeamkitBeam,
) -> BeamkitStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = BeamParams::new(omega, cos_theta)?;
        let beam = Box::new(BeamkitBeam {
            params,
            model: DispersionModel::Vacuum,
        });
        *out = Box::into_raw(beam);
        Ok(BeamkitStatus::Ok)
    })
}

/// Replaces the dispersion model. `p0`, `p1` are the model parameters (see
/// [`BeamkitDispersion`]); unused ones are ignored.
///
/// # Safety
/// `beam` must be null or a live handle from [`beamkit_beam_new`].
#[no_mangle]
pub unsafe extern "C" fn beamkit_beam_set_dispersion(
    beam: *mut BeamkitBeam,
    kind: BeamkitDispersion,
    p0: f64,
    p1: f64,
) -> BeamkitStatus {
    guard(|| {
        let beam = beam.as_mut().ok_or_else(|| null("beam"))?;
        let model = match kind {
            BeamkitDispersion::Vacuum => DispersionModel::Vacuum,
            BeamkitDispersion::Constant => DispersionModel::constant(p0)?,
            BeamkitDispersion::Cauchy => DispersionModel::cauchy(p0, p1)?,
        };
        model.evaluate(beam.params.omega())?;
        beam.model = model;
        Ok(BeamkitStatus::Ok)
    })
}

/// Releases a handle; null is a no-op.
///
/// # Safety
/// `beam` must be null or a live handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn beamkit_beam_free(beam: *mut BeamkitBeam) {
    if !beam.is_null() {
        drop(Box::from_raw(beam));
    }
}

/// Evaluates the beam at `(z, rho, t)` through `rep`. `tol` is ignored by
/// the direct route. On `NOT_CONVERGED` the best estimate is still written.
///
/// # Safety
/// `beam` must be null or a live handle; `out` null or valid for writing.
#[no_mangle]
pub unsafe extern "C" fn beamkit_eval(
    beam: *const BeamkitBeam,
    rep: BeamkitRepresentation,
    z: f64,
    rho: f64,
    t: f64,
    tol: f64,
    out: *mut BeamkitValue,
) -> BeamkitStatus {
    guard(|| {
        let beam = beam.as_ref().ok_or_else(|| null("beam"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if rep != BeamkitRepresentation::Direct && !(tol.is_finite() && tol > 0.0) {
            return Err(Failure(
                BeamkitStatus::InvalidArgument,
                format!("tol must be positive, got {tol}"),
            ));
        }
        let p = FieldPoint::new(z, rho, t)?;
        let (b, m) = (&beam.params, &beam.model);
        let v = match rep {
            BeamkitRepresentation::Direct => {
                let v = eval_direct_dispersive(b, m, &p)?;
                BeamkitValue {
                    re: v.re,
                    im: v.im,
                    error_estimate: 0.0,
                    work: 0,
                    converged: true,
                }
            }
            BeamkitRepresentation::Series => {
                let s = eval_series_dispersive(b, m, &p, tol)?;
                BeamkitValue {
                    re: s.value.re,
                    im: s.value.im,
                    error_estimate: s.tail_estimate,
                    work: s.n_terms as u64,
                    converged: s.converged,
                }
            }
            BeamkitRepresentation::Integral => {
                let q = eval_integral_rep_dispersive(b, m, &p, tol)?;
                BeamkitValue {
                    re: q.value.re,
                    im: q.value.im,
                    error_estimate: q.error_estimate,
                    work: q.n_evals as u64,
                    converged: q.converged,
                }
            }
        };
        *out = v;
        if v.converged {
            Ok(BeamkitStatus::Ok)
        } else {
            set_last_error("evaluation did not reach the requested tolerance");
            Ok(BeamkitStatus::NotConverged)
        }
    })
}

/// Flat-spectrum X-wave closed form at `(z, rho, t)`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn beamkit_xwave(
    cos_theta: f64,
    z: f64,
    rho: f64,
    t: f64,
    out: *mut f64,
) -> BeamkitStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = FieldPoint::new(z, rho, t)?;
        *out = xwave_closed_form(cos_theta, &p)?;
        Ok(BeamkitStatus::Ok)
    })
}

/// Summed `sum_{n <= n_max} (2n+1) P_n(a) P_n(b) P_n(c)`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn beamkit_triple_legendre_sum(
    cos_theta: f64,
    cos_eta: f64,
    cos_gamma: f64,
    n_max: usize,
    mode: BeamkitSummation,
    out: *mut f64,
) -> BeamkitStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let mode = match mode {
            BeamkitSummation::Raw => Summation::Raw,
            BeamkitSummation::Cesaro => Summation::Cesaro,
            BeamkitSummation::DoubleAverage => Summation::DoubleAverage,
        };
        let s = triple_legendre_sum(&ConeAngles::new(cos_theta, cos_eta, cos_gamma), n_max, mode)?;
        *out = s.value.re;
        Ok(BeamkitStatus::Ok)
    })
}

/// Runs a verification suite (`"all"`, `"stratton"`, ...) and returns the
/// reports as a JSON array in `*out_json` (free with
/// [`beamkit_string_free`]). `*all_passed` receives the overall verdict.
///
/// # Safety
/// `suite` must be null or a NUL-terminated string; the out pointers null or
/// valid for writing.
#[no_mangle]
pub unsafe extern "C" fn beamkit_verify_suite(
    suite: *const c_char,
    out_json: *mut *mut c_char,
    all_passed: *mut bool,
) -> BeamkitStatus {
    guard(|| {
        if suite.is_null() {
            return Err(null("suite"));
        }
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        if all_passed.is_null() {
            return Err(null("all_passed"));
        }
        let name = CStr::from_ptr(suite).to_str().map_err(|_| {
            Failure(
                BeamkitStatus::InvalidArgument,
                "suite is not UTF-8".to_owned(),
            )
        })?;
        let suite: Suite = name
            .parse()
            .map_err(|e: String| Failure(BeamkitStatus::InvalidArgument, e))?;
        let reports = run_suite(suite)?;
        let json = serde_json::to_string(&reports).expect("reports serialize");
        let c = CString::new(json).expect("JSON has no interior NUL");
        *all_passed = reports.iter().all(|r| r.pass);
        *out_json = c.into_raw();
        Ok(BeamkitStatus::Ok)
    })
}

/// Releases a string returned by the library; null is a no-op.
///
/// # Safety
/// `s` must be null or a string from this library not yet released.
#[no_mangle]
pub unsafe extern "C" fn beamkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
