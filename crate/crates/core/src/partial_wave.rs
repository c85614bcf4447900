//! Partial-wave expansion of the Bessel beam:
//!
//! `sum_n 2 i^n (n + 1/2) P_n(cos theta) P_n(cos eta) j_n(k r) exp(-i omega t)`
//!
//! with `k = omega` in vacuum and `k = n(omega) omega` in a dispersive
//! medium. Only the spherical Bessel argument sees the index.

use num_complex::Complex64;

use crate::beam::{BeamParams, DispersionModel, FieldPoint};
use crate::error::Result;
use crate::specfun::{legendre_p_sequence, spherical_jn_sequence};

/// Hard cap on the number of terms.
pub const MAX_TERMS: usize = 5000;

/// A truncated series with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    /// Index of the last included term; 0 for analytic special cases.
    pub n_terms: usize,
    /// Size of the last included terms (see [`eval_series`]).
    pub tail_estimate: f64,
    /// False when the tail stayed above the tolerance at [`MAX_TERMS`].
    pub converged: bool,
}

/// Default cut-off `ceil(x + 10 + c x^(1/3))` for `x = |omega r|`, with
/// `c = 4` for `tol >= 1e-10` and `c` growing by 2.5 per decade of `tol`
/// below that. Never below 10.
pub fn truncation_order(omega_r: f64, tol: f64) -> usize {
    let x = omega_r.abs();
    if !x.is_finite() {
        return MAX_TERMS;
    }
    let decades = if tol > 0.0 {
        (1e-10 / tol).log10().max(0.0)
    } else {
        0.0
    };
    let c = 4.0 + 2.5 * decades;
    let n = (x + 10.0 + c * x.cbrt()).ceil();
    if n >= MAX_TERMS as f64 {
        MAX_TERMS
    } else {
        (n as usize).max(10)
    }
}

/// Partial-wave value of the beam at `p`.
///
/// The tail estimate is `max (2n+1) |j_n(omega r)|` over the last two
/// indices, which bounds the last two terms regardless of the Legendre
/// factors (one of which vanishes for every odd `n` when either cosine is
/// zero). The sum is extended past [`truncation_order`] until that estimate
/// drops below `tol`.
pub fn eval_series(b: &BeamParams, p: &FieldPoint, tol: f64) -> SeriesResult {
    series_with_wavenumber(b, b.omega(), p, tol)
}

/// As [`eval_series`] with the spherical Bessel argument `n(omega) omega r`.
pub fn eval_series_dispersive(
    b: &BeamParams,
    m: &DispersionModel,
    p: &FieldPoint,
    tol: f64,
) -> Result<SeriesResult> {
    let n = m.evaluate(b.omega())?;
    Ok(series_with_wavenumber(b, n * b.omega(), p, tol))
}

fn series_with_wavenumber(b: &BeamParams, k: f64, p: &FieldPoint, tol: f64) -> SeriesResult {
    let time = Complex64::from_polar(1.0, -b.omega() * p.t());
    let view = p.to_spherical();
    if view.degenerate {
        return SeriesResult {
            value: time,
            n_terms: 0,
            tail_estimate: 0.0,
            converged: true,
        };
    }
    let mu = k * view.r;
    let mut n_max = truncation_order(mu, tol);
    loop {
        let (sum, tail) = partial_sum(b.cos_theta(), view.cos_eta, mu, n_max);
        let converged = tail <= tol;
        if converged || n_max >= MAX_TERMS {
            return SeriesResult {
                value: sum * time,
                n_terms: n_max,
                tail_estimate: tail,
                converged,
            };
        }
        n_max = (n_max + n_max / 4 + 1).min(MAX_TERMS);
    }
}

/// `sum_{n <= n_max} (2n+1) i^n P_n(a) P_n(c) j_n(mu)` and its tail estimate.
fn partial_sum(cos_a: f64, cos_c: f64, mu: f64, n_max: usize) -> (Complex64, f64) {
    // cosines are already within [-1, 1]
    let pa = legendre_p_sequence(n_max, cos_a).expect("clamped cosine");
    let pc = legendre_p_sequence(n_max, cos_c).expect("clamped cosine");
    let j = spherical_jn_sequence(n_max, mu.abs());
    let odd_sign = if mu < 0.0 { -1.0 } else { 1.0 };
    let (mut re, mut im) = (0.0, 0.0);
    for n in 0..=n_max {
        let jn = if n % 2 == 1 { odd_sign * j[n] } else { j[n] };
        let t = (2 * n + 1) as f64 * pa[n] * pc[n] * jn;
        match n % 4 {
            0 => re += t,
            1 => im += t,
            2 => re -= t,
            _ => im -= t,
        }
    }
    let tail = (n_max.saturating_sub(1)..=n_max)
        .map(|n| (2 * n + 1) as f64 * j[n].abs())
        .fold(0.0, f64::max);
    (Complex64::new(re, im), tail)
}
