use std::ffi::{CStr, CString};
use std::ptr;

use beamkit_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(beamkit_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn new_beam(omega: f64, cos_theta: f64) -> *mut BeamkitBeam {
    let mut beam = ptr::null_mut();
    let status = unsafe { beamkit_beam_new(omega, cos_theta, &mut beam) };
    assert_eq!(status, BeamkitStatus::Ok, "{}", last_error());
    assert!(!beam.is_null());
    beam
}

fn eval(
    beam: *const BeamkitBeam,
    rep: BeamkitRepresentation,
    tol: f64,
) -> (BeamkitStatus, BeamkitValue) {
    let mut v = BeamkitValue {
        re: f64::NAN,
        im: f64::NAN,
        error_estimate: 0.0,
        work: 0,
        converged: false,
    };
    let status = unsafe { beamkit_eval(beam, rep, 1.0, 2.0, 0.5, tol, &mut v) };
    (status, v)
}

#[test]
fn representations_agree_through_the_abi() {
    let beam = new_beam(3.0, 0.6);
    let (s, direct) = eval(beam, BeamkitRepresentation::Direct, 0.0);
    assert_eq!(s, BeamkitStatus::Ok);
    assert!(direct.converged);
    assert_eq!(direct.work, 0);
    for rep in [
        BeamkitRepresentation::Series,
        BeamkitRepresentation::Integral,
    ] {
        let (s, v) = eval(beam, rep, 1e-12);
        assert_eq!(s, BeamkitStatus::Ok, "{rep:?}: {}", last_error());
        assert!(v.converged && v.work > 0);
        assert!((v.re - direct.re).abs() < 1e-10, "{rep:?}");
        assert!((v.im - direct.im).abs() < 1e-10, "{rep:?}");
    }
    assert_eq!(last_error(), "");
    unsafe { beamkit_beam_free(beam) };
}

#[test]
fn matches_the_rust_api() {
    use beamkit::beam::{eval_direct, BeamParams, FieldPoint};
    let beam = new_beam(3.0, 0.6);
    let (_, v) = eval(beam, BeamkitRepresentation::Direct, 0.0);
    let want = eval_direct(
        &BeamParams::new(3.0, 0.6).unwrap(),
        &FieldPoint::new(1.0, 2.0, 0.5).unwrap(),
    );
    assert_eq!((v.re, v.im), (want.re, want.im));
    unsafe { beamkit_beam_free(beam) };
}

#[test]
fn dispersion_changes_the_spatial_wavenumber() {
    let beam = new_beam(2.0, 0.5);
    let (_, vacuum) = eval(beam, BeamkitRepresentation::Direct, 0.0);
    let s = unsafe { beamkit_beam_set_dispersion(beam, BeamkitDispersion::Constant, 1.5, 0.0) };
    assert_eq!(s, BeamkitStatus::Ok);
    let (_, dense) = eval(beam, BeamkitRepresentation::Direct, 0.0);
    assert!((vacuum.re - dense.re).abs() > 1e-3);
    let (s, series) = eval(beam, BeamkitRepresentation::Series, 1e-12);
    assert_eq!(s, BeamkitStatus::Ok);
    assert!((series.re - dense.re).abs() < 1e-10);

    // n = 1 - omega^2 is negative at omega = 2: rejected, old model kept.
    let s = unsafe { beamkit_beam_set_dispersion(beam, BeamkitDispersion::Cauchy, 1.0, -1.0) };
    assert_eq!(s, BeamkitStatus::Domain);
    assert!(!last_error().is_empty());
    let (_, again) = eval(beam, BeamkitRepresentation::Direct, 0.0);
    assert_eq!(again, dense);
    unsafe { beamkit_beam_free(beam) };
}

#[test]
fn null_pointers_are_reported() {
    let mut v = BeamkitValue {
        re: 7.0,
        im: 7.0,
        error_estimate: 0.0,
        work: 0,
        converged: false,
    };
    let s = unsafe {
        beamkit_eval(
            ptr::null(),
            BeamkitRepresentation::Direct,
            0.0,
            0.0,
            0.0,
            1e-10,
            &mut v,
        )
    };
    assert_eq!(s, BeamkitStatus::NullPointer);
    assert!(last_error().contains("beam"));
    assert_eq!(v.re, 7.0, "out must be untouched on error");

    assert_eq!(
        unsafe { beamkit_beam_new(1.0, 0.5, ptr::null_mut()) },
        BeamkitStatus::NullPointer
    );
    let beam = new_beam(1.0, 0.5);
    let s = unsafe {
        beamkit_eval(
            beam,
            BeamkitRepresentation::Direct,
            0.0,
            0.0,
            0.0,
            0.0,
            ptr::null_mut(),
        )
    };
    assert_eq!(s, BeamkitStatus::NullPointer);
    assert_eq!(
        unsafe {
            beamkit_beam_set_dispersion(ptr::null_mut(), BeamkitDispersion::Vacuum, 0.0, 0.0)
        },
        BeamkitStatus::NullPointer
    );
    assert_eq!(
        unsafe { beamkit_xwave(0.5, 0.0, 0.0, 0.0, ptr::null_mut()) },
        BeamkitStatus::NullPointer
    );
    unsafe {
        beamkit_beam_free(beam);
        beamkit_beam_free(ptr::null_mut());
        beamkit_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_arguments_are_reported() {
    let mut beam = ptr::null_mut();
    for (omega, ct) in [(f64::INFINITY, 0.5), (f64::NAN, 0.5), (1.0, 1.5)] {
        let s = unsafe { beamkit_beam_new(omega, ct, &mut beam) };
        assert_ne!(s, BeamkitStatus::Ok, "omega={omega} cos_theta={ct}");
        assert!(beam.is_null());
        assert!(!last_error().is_empty());
    }
    let beam = new_beam(1.0, 0.5);
    let (s, _) = eval(beam, BeamkitRepresentation::Series, -1.0);
    assert_eq!(s, BeamkitStatus::InvalidArgument);
    let mut v = BeamkitValue {
        re: 0.0,
        im: 0.0,
        error_estimate: 0.0,
        work: 0,
        converged: false,
    };
    let s = unsafe {
        beamkit_eval(
            beam,
            BeamkitRepresentation::Direct,
            0.0,
            -1.0,
            0.0,
            0.0,
            &mut v,
        )
    };
    assert_ne!(s, BeamkitStatus::Ok);
    unsafe { beamkit_beam_free(beam) };
}

#[test]
fn xwave_and_its_boundary() {
    // On axis at t = 0: 1 / sqrt(0 - 0) is singular; use a point inside.
    let mut out = f64::NAN;
    let s = unsafe { beamkit_xwave(0.5, 0.0, 0.0, 1.0, &mut out) };
    assert_eq!(s, BeamkitStatus::Ok);
    let want = beamkit::wavepacket::xwave_closed_form(
        0.5,
        &beamkit::FieldPoint::new(0.0, 0.0, 1.0).unwrap(),
    )
    .unwrap();
    assert_eq!(out, want);

    // rho sin(theta) = |t - z cos(theta)| is the support boundary.
    let sin = (1.0f64 - 0.25).sqrt();
    let s = unsafe { beamkit_xwave(0.5, 0.0, 1.0, sin, &mut out) };
    assert_eq!(s, BeamkitStatus::Domain, "{}", last_error());
}

#[test]
fn triple_sum_modes() {
    let (a, b, c) = (0.3, 0.4, 0.2);
    let closed = beamkit::wavepacket::triple_legendre_closed_form(
        &beamkit::wavepacket::ConeAngles::new(a, b, c),
    )
    .unwrap();
    let mut out = 0.0;
    let s = unsafe {
        beamkit_triple_legendre_sum(a, b, c, 4000, BeamkitSummation::DoubleAverage, &mut out)
    };
    assert_eq!(s, BeamkitStatus::Ok);
    assert!(
        (out - closed).abs() < 1e-2 * closed.abs().max(1.0),
        "{out} vs {closed}"
    );

    let mut raw = 0.0;
    let s = unsafe { beamkit_triple_legendre_sum(a, b, c, 1, BeamkitSummation::Raw, &mut raw) };
    assert_eq!(s, BeamkitStatus::Ok);
    assert!((raw - (1.0 + 3.0 * a * b * c)).abs() < 1e-15);
    let s = unsafe { beamkit_triple_legendre_sum(a, b, c, 0, BeamkitSummation::Raw, &mut raw) };
    assert_eq!(s, BeamkitStatus::InvalidArgument);
}

#[test]
fn verify_suite_json() {
    let name = CString::new("ftpair").unwrap();
    let mut json = ptr::null_mut();
    let mut passed = false;
    let s = unsafe { beamkit_verify_suite(name.as_ptr(), &mut json, &mut passed) };
    assert_eq!(s, BeamkitStatus::Ok, "{}", last_error());
    assert!(passed);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { beamkit_string_free(json) };
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reports = parsed.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["pass"], true);
        assert!(r["identity_id"].is_string());
    }

    let bogus = CString::new("nope").unwrap();
    let mut json = ptr::null_mut();
    let s = unsafe { beamkit_verify_suite(bogus.as_ptr(), &mut json, &mut passed) };
    assert_eq!(s, BeamkitStatus::InvalidArgument);
    assert!(json.is_null());
    assert_eq!(
        unsafe { beamkit_verify_suite(ptr::null(), &mut json, &mut passed) },
        BeamkitStatus::NullPointer
    );
}

#[test]
fn version_is_the_package_version() {
    let v = unsafe { CStr::from_ptr(beamkit_version()) }
        .to_str()
        .unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn errors_are_thread_local() {
    assert_eq!(
        unsafe { beamkit_beam_new(1.0, 0.5, ptr::null_mut()) },
        BeamkitStatus::NullPointer
    );
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
    assert!(!last_error().is_empty());
}
