//! Flat-spectrum superposition of Bessel beams over all frequencies
//! (the X-wave) and its triple-Legendre series.
//!
//! The closed form is `2 / sqrt(sin^2 theta rho^2 - (t - cos theta z)^2)`
//! where the radicand is positive and 0 elsewhere. Its partial-wave form is
//! `(pi / r) sum (2n+1) P_n(cos theta) P_n(cos eta) P_n(cos gamma)`, so
//!
//! `sum (2n+1) P_n(a) P_n(b) P_n(c) = 2 / (pi sqrt(D))`,
//! `D = sin^2 eta sin^2 theta - (cos eta cos theta - cos gamma)^2`,
//!
//! inside the support `D > 0` and 0 outside. The series does not converge
//! pointwise; it is summed with Cesaro means.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::beam::FieldPoint;
use crate::error::{Error, Result};
use crate::partial_wave::SeriesResult;
use crate::quadrature::regularized_j0_fourier;
use crate::specfun::{clamp_unit, legendre_p_sequence};
use num_complex::Complex64;

/// Radicands closer to zero than this are treated as the support boundary.
pub const BOUNDARY_EPS: f64 = 1e-14;

/// The three cone cosines of the triple sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeAngles {
    pub cos_theta: f64,
    pub cos_eta: f64,
    pub cos_gamma: f64,
}

impl ConeAngles {
    pub fn new(cos_theta: f64, cos_eta: f64, cos_gamma: f64) -> Self {
        Self {
            cos_theta,
            cos_eta,
            cos_gamma,
        }
    }

    /// Angles seen from `p` for a cone of `cos_theta`; `cos_gamma = t / r`.
    pub fn from_point(cos_theta: f64, p: &FieldPoint) -> Self {
        let v = p.to_spherical();
        Self::new(cos_theta, v.cos_eta, v.cos_gamma)
    }

    /// `sin^2 eta sin^2 theta - (cos eta cos theta - cos gamma)^2`.
    ///
    /// Symmetric in the three cosines; they are sorted first so the rounded
    /// value is too.
    pub fn discriminant(&self) -> f64 {
        let (s, d) = self.split();
        (s - d) * (s + d)
    }

    /// `(sin x sin y, cos x cos y - cos z)` over the sorted cosines.
    fn split(&self) -> (f64, f64) {
        let mut c = [self.cos_theta, self.cos_eta, self.cos_gamma];
        c.sort_by(f64::total_cmp);
        (sin_of(c[0]) * sin_of(c[1]), c[0] * c[1] - c[2])
    }
}

fn sin_of(c: f64) -> f64 {
    ((1.0 - c) * (1.0 + c)).max(0.0).sqrt()
}

/// Strict support test `sin eta sin theta > |cos eta cos theta - cos gamma|`;
/// false for non-finite input.
pub fn support_predicate(a: &ConeAngles) -> bool {
    let (lhs, rhs) = a.split();
    let rhs = rhs.abs();
    lhs.is_finite() && rhs.is_finite() && lhs > rhs
}

/// Limit of the triple sum: `2 / (pi sqrt(D))` inside the support, 0 outside.
pub fn triple_legendre_closed_form(a: &ConeAngles) -> Result<f64> {
    let d = a.discriminant();
    if !d.is_finite() {
        return Err(Error::InvalidParameter {
            what: "cos_gamma",
            value: a.cos_gamma,
        });
    }
    if d.abs() < BOUNDARY_EPS {
        return Err(Error::SingularBoundary { radicand: d });
    }
    Ok(if support_predicate(a) {
        2.0 / (PI * d.sqrt())
    } else {
        0.0
    })
}

/// X-wave value at `p`. Refuses points within [`BOUNDARY_EPS`] of the
/// support boundary, where the field is singular.
pub fn xwave_closed_form(cos_theta: f64, p: &FieldPoint) -> Result<f64> {
    let cos_theta = clamp_unit("cos_theta", cos_theta)?;
    let a = sin_of(cos_theta) * p.rho();
    let b = p.t() - cos_theta * p.z();
    let q = (a - b) * (a + b);
    if q.abs() < BOUNDARY_EPS {
        return Err(Error::SingularBoundary { radicand: q });
    }
    Ok(if b.abs() < a { 2.0 / q.sqrt() } else { 0.0 })
}

/// X-wave from the damped frequency integral, Richardson-extrapolated to
/// zero damping. `levels` halvings start from a quarter of the distance to
/// the nearest complex singularity in the damping parameter.
pub fn xwave_regularized(cos_theta: f64, p: &FieldPoint, levels: usize) -> Result<f64> {
    let cos_theta = clamp_unit("cos_theta", cos_theta)?;
    let a = sin_of(cos_theta) * p.rho();
    let b = cos_theta * p.z() - p.t();
    if a <= 0.0 {
        return Ok(0.0);
    }
    let gap = (a - b.abs()).abs();
    if gap < BOUNDARY_EPS {
        return Err(Error::SingularBoundary { radicand: gap });
    }
    let e0 = 0.25 * gap.min(a);
    let levels = levels.max(1);
    let mut table = Vec::with_capacity(levels);
    for k in 0..levels {
        table.push(regularized_j0_fourier(a, b, e0 / 2f64.powi(k as i32))?);
    }
    // the damped value is analytic in eps, so every power of 2 is removed
    for j in 1..levels {
        let f = 2f64.powi(j as i32);
        for k in (j..levels).rev() {
            table[k] = (f * table[k] - table[k - 1]) / (f - 1.0);
        }
    }
    Ok(table[levels - 1])
}

/// Summation mode for the triple series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Summation {
    /// The partial sum through `n_max`.
    Raw,
    /// Mean of the partial sums `S_0 ..= S_n_max`.
    #[default]
    Cesaro,
    /// Mean of the Cesaro means.
    DoubleAverage,
}

impl std::str::FromStr for Summation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "raw" => Ok(Self::Raw),
            "cesaro" => Ok(Self::Cesaro),
            "double_average" | "double-average" => Ok(Self::DoubleAverage),
            _ => Err(format!("unknown summation mode `{s}`")),
        }
    }
}

/// Summed `sum_{n <= n_max} (2n+1) P_n(cos theta) P_n(cos eta) P_n(cos gamma)`.
///
/// The cosines are sorted before the products are formed, so the result is
/// bit-identical under any permutation of the three. `tail_estimate` is the
/// change of the returned quantity at the last step.
pub fn triple_legendre_sum(a: &ConeAngles, n_max: usize, mode: Summation) -> Result<SeriesResult> {
    if n_max < 1 {
        return Err(Error::InvalidParameter {
            what: "n_max",
            value: n_max as f64,
        });
    }
    let mut c = [
        clamp_unit("cos_theta", a.cos_theta)?,
        clamp_unit("cos_eta", a.cos_eta)?,
        clamp_unit("cos_gamma", a.cos_gamma)?,
    ];
    c.sort_by(f64::total_cmp);
    let p0 = legendre_p_sequence(n_max, c[0])?;
    let p1 = legendre_p_sequence(n_max, c[1])?;
    let p2 = legendre_p_sequence(n_max, c[2])?;

    let mut raw = 0.0;
    let mut raw_acc = 0.0;
    let mut ces_acc = 0.0;
    let (mut value, mut prev) = (0.0, 0.0);
    for n in 0..=n_max {
        raw += (2 * n + 1) as f64 * (p0[n] * p1[n] * p2[n]);
        raw_acc += raw;
        let ces = raw_acc / (n + 1) as f64;
        ces_acc += ces;
        prev = value;
        value = match mode {
            Summation::Raw => raw,
            Summation::Cesaro => ces,
            Summation::DoubleAverage => ces_acc / (n + 1) as f64,
        };
    }
    Ok(SeriesResult {
        value: Complex64::new(value, 0.0),
        n_terms: n_max,
        tail_estimate: (value - prev).abs(),
        converged: true,
    })
}

/// Partial-wave form of the X-wave, `(pi / r)` times the triple sum. Needs
/// `r > 0` and `|t| <= r` so that `cos gamma = t / r` is a valid cosine.
pub fn wavepacket_series(
    cos_theta: f64,
    p: &FieldPoint,
    n_max: usize,
    mode: Summation,
) -> Result<SeriesResult> {
    let v = p.to_spherical();
    if v.degenerate {
        return Err(Error::Domain {
            what: "r",
            value: 0.0,
        });
    }
    if p.t().abs() > v.r {
        return Err(Error::Domain {
            what: "cos_gamma",
            value: v.cos_gamma,
        });
    }
    let angles = ConeAngles::new(cos_theta, v.cos_eta, v.cos_gamma.clamp(-1.0, 1.0));
    let s = triple_legendre_sum(&angles, n_max, mode)?;
    let scale = PI / v.r;
    Ok(SeriesResult {
        value: s.value * scale,
        tail_estimate: s.tail_estimate * scale,
        ..s
    })
}
