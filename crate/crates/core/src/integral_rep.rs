//! Line-integral representation of the Bessel beam:
//!
//! `(1/pi) integral j_0(R(lambda)) exp(i lambda cos eta) d lambda exp(-i omega t)`
//!
//! over the whole line, with `R = sqrt(lambda^2 + mu^2 - 2 lambda mu cos theta)`
//! and `mu = omega r` (`n(omega) omega r` in a dispersive medium).
//!
//! The integral converges only conditionally. Shifting
//! `s = lambda - mu cos theta` turns `R` into `rho(s) = sqrt(s^2 + b^2)` with
//! `b = mu sin theta`, and folding the even part leaves
//!
//! `exp(i mu cos theta cos eta) integral_0^inf [sin(rho + k s) + sin(rho - k s)] / rho ds`
//!
//! with `k = cos eta`. Each term has the monotone phase `rho + kappa s` for
//! large `s`, whose zeros are known in closed form; the integrals are summed
//! cell by cell between those zeros and accelerated. The term with
//! `kappa = -1` does not oscillate and is integrated after `s = b sinh u`.
//!
//! At `|cos eta| = 1` the raw integral equals half the beam (the Fourier
//! pair behind it jumps at the end of its support). The evaluators return
//! the limit from `|cos eta| < 1`, which is continuous with the field.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::beam::{BeamParams, DispersionModel, FieldPoint};
use crate::error::Result;
use crate::quadrature::{
    integrate_between_zeros, integrate_finite, integrate_oscillatory_infinite, OscillatoryConfig,
    QuadratureResult,
};
use crate::specfun::spherical_jn_signed;

/// Arguments of the kernel integral with the sign of `omega` folded into
/// `cos_eta` (reflecting `lambda` maps `mu -> -mu` onto `cos eta -> -cos eta`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelArgs {
    pub mu: f64,
    pub cos_theta: f64,
    pub cos_eta: f64,
}

impl KernelArgs {
    /// Kernel arguments for wave number `k` (signed) at `p`.
    pub fn new(k: f64, cos_theta: f64, p: &FieldPoint) -> Self {
        let view = p.to_spherical();
        let mu = k * view.r;
        Self {
            mu: mu.abs(),
            cos_theta,
            cos_eta: if mu < 0.0 {
                -view.cos_eta
            } else {
                view.cos_eta
            },
        }
    }

    /// `j_0(R(lambda)) exp(i lambda cos eta)`.
    pub fn integrand(&self, lambda: f64) -> Complex64 {
        let r = compute_r(lambda, self.mu, self.cos_theta);
        Complex64::from_polar(spherical_jn_signed(0, r), lambda * self.cos_eta)
    }
}

/// `sqrt(lambda^2 + mu^2 - 2 lambda mu cos theta)`, evaluated as
/// `sqrt((lambda - mu cos theta)^2 + mu^2 sin^2 theta)` so the radicand
/// cannot go negative.
pub fn compute_r(lambda: f64, mu: f64, cos_theta: f64) -> f64 {
    let sin2 = ((1.0 - cos_theta) * (1.0 + cos_theta)).max(0.0);
    let d = lambda - mu * cos_theta;
    (d * d + mu * mu * sin2).max(0.0).sqrt()
}

/// Beam value from the integral representation; the origin is analytic.
pub fn eval_integral_rep(b: &BeamParams, p: &FieldPoint, tol: f64) -> QuadratureResult {
    integral_with_wavenumber(b, b.omega(), p, tol)
}

/// As [`eval_integral_rep`] with `mu = n(omega) omega r` inside `R`.
pub fn eval_integral_rep_dispersive(
    b: &BeamParams,
    m: &DispersionModel,
    p: &FieldPoint,
    tol: f64,
) -> Result<QuadratureResult> {
    let n = m.evaluate(b.omega())?;
    Ok(integral_with_wavenumber(b, n * b.omega(), p, tol))
}

fn integral_with_wavenumber(b: &BeamParams, k: f64, p: &FieldPoint, tol: f64) -> QuadratureResult {
    let time = Complex64::from_polar(1.0, -b.omega() * p.t());
    if p.to_spherical().degenerate {
        return QuadratureResult {
            value: time,
            error_estimate: 0.0,
            n_evals: 0,
            converged: true,
        };
    }
    let args = KernelArgs::new(k, b.cos_theta(), p);
    kernel_integral(&args, tol).times(time / PI)
}

/// `integral j_0(R) exp(i lambda cos eta) d lambda` over the whole line, as
/// the limit from `|cos eta| < 1` (see the module docs).
pub fn kernel_integral(args: &KernelArgs, tol: f64) -> QuadratureResult {
    let sin2 = ((1.0 - args.cos_theta) * (1.0 + args.cos_theta)).max(0.0);
    let b = args.mu * sin2.sqrt();
    let k = args.cos_eta.clamp(-1.0, 1.0);
    // each half carries part of the tolerance
    let half_tol = 0.5 * tol;
    let mut total = phase_piece(b, k, half_tol).combine(phase_piece(b, -k, half_tol));
    if k.abs() == 1.0 {
        total.value += FRAC_PI_2;
    }
    total.times(Complex64::from_polar(1.0, args.mu * args.cos_theta * k))
}

/// The same integral summed over plain half-period cells in `lambda`, with
/// no phase splitting. Slow near `|cos eta| = 1`; kept as an independent
/// reference.
pub fn kernel_integral_direct_cells(args: &KernelArgs, tol: f64) -> QuadratureResult {
    let a = *args;
    integrate_oscillatory_infinite(move |l| a.integrand(l), 2.0 * PI, tol)
}

/// `integral_0^inf sin(rho(s) + kappa s) / rho(s) ds`, `rho = sqrt(s^2 + b^2)`.
fn phase_piece(b: f64, kappa: f64, tol: f64) -> QuadratureResult {
    if kappa == -1.0 {
        return falling_piece(b, tol);
    }
    let integrand = move |s: f64| {
        let rho = s.hypot(b);
        if rho == 0.0 {
            Complex64::new(1.0 + kappa, 0.0)
        } else {
            Complex64::new((rho + kappa * s).sin() / rho, 0.0)
        }
    };
    // zeros of the phase on its increasing branch, past every value <= b
    let first = (b / PI).floor() + 1.0;
    let zero = move |j: usize| phase_root(b, kappa, (first + j as f64) * PI);
    integrate_between_zeros(integrand, 0.0, zero, tol, &OscillatoryConfig::default())
}

/// Positive `s` with `sqrt(s^2 + b^2) + kappa s = c`, for `c > b`.
fn phase_root(b: f64, kappa: f64, c: f64) -> f64 {
    let q = (1.0 - kappa) * (1.0 + kappa);
    let disc = (c * c - q * b * b).max(0.0).sqrt();
    if kappa < 0.0 {
        (disc - c * kappa) / q
    } else {
        (c - b) * (c + b) / (c * kappa + disc)
    }
}

/// `integral_0^inf sin(rho - s) / rho ds = integral_0^inf sin(b e^-u) du`.
fn falling_piece(b: f64, tol: f64) -> QuadratureResult {
    if b == 0.0 {
        return QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            n_evals: 0,
            converged: true,
        };
    }
    // the remainder past `end` is below b e^-end
    let end = b.ln().max(0.0) + 40.0;
    integrate_finite(
        |u| Complex64::new((b * (-u).exp()).sin(), 0.0),
        0.0,
        end,
        tol,
    )
}
