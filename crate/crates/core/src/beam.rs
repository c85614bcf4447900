//! Field points, beam parameters, dispersion models and the direct
//! evaluation of the zeroth-order Bessel beam.
//!
//! Units have `c = 1`, so `z`, `rho` and `t` share one length/time unit and
//! the wave number equals the angular frequency `omega`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_j0, clamp_unit};

/// A space-time evaluation point `(z, rho, t)` with `rho >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldPoint {
    z: f64,
    rho: f64,
    t: f64,
}

impl FieldPoint {
    pub fn new(z: f64, rho: f64, t: f64) -> Result<Self> {
        if !z.is_finite() {
            return Err(Error::InvalidParameter {
                what: "z",
                value: z,
            });
        }
        if !t.is_finite() {
            return Err(Error::InvalidParameter {
                what: "t",
                value: t,
            });
        }
        if !rho.is_finite() || rho < 0.0 {
            return Err(Error::InvalidParameter {
                what: "rho",
                value: rho,
            });
        }
        Ok(Self { z, rho, t })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Same spatial position, different time.
    pub fn at_time(&self, t: f64) -> Result<Self> {
        Self::new(self.z, self.rho, t)
    }

    pub fn to_spherical(&self) -> SphericalView {
        to_spherical(self)
    }
}

/// Spherical view of a [`FieldPoint`]: `r = sqrt(z^2 + rho^2)`,
/// `cos_eta = z / r`, `cos_gamma = t / r`.
///
/// At the origin `r = 0` the angles are undefined; by convention
/// `cos_eta = 1`, `cos_gamma = 0` and `degenerate` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalView {
    pub r: f64,
    pub cos_eta: f64,
    pub cos_gamma: f64,
    pub degenerate: bool,
}

impl SphericalView {
    pub fn sin_eta(&self) -> f64 {
        (1.0 - self.cos_eta * self.cos_eta).max(0.0).sqrt()
    }
}

pub fn to_spherical(p: &FieldPoint) -> SphericalView {
    let r = p.z.hypot(p.rho);
    if r == 0.0 {
        return SphericalView {
            r,
            cos_eta: 1.0,
            cos_gamma: 0.0,
            degenerate: true,
        };
    }
    SphericalView {
        r,
        cos_eta: (p.z / r).clamp(-1.0, 1.0),
        cos_gamma: p.t / r,
        degenerate: false,
    }
}

/// One monochromatic beam: angular frequency `omega` (any sign) and the
/// cone angle through `cos_theta`. `sin_theta` is always the non-negative
/// root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamParams {
    omega: f64,
    cos_theta: f64,
}

impl BeamParams {
    pub fn new(omega: f64, cos_theta: f64) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::InvalidParameter {
                what: "omega",
                value: omega,
            });
        }
        let cos_theta = clamp_unit("cos_theta", cos_theta)?;
        Ok(Self { omega, cos_theta })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn cos_theta(&self) -> f64 {
        self.cos_theta
    }

    pub fn sin_theta(&self) -> f64 {
        (1.0 - self.cos_theta * self.cos_theta).max(0.0).sqrt()
    }

    /// Axial wave number `omega cos(theta)`.
    pub fn k_z(&self) -> f64 {
        self.omega * self.cos_theta
    }

    /// Transverse wave number `omega sin(theta)`.
    pub fn k_rho(&self) -> f64 {
        self.omega * self.sin_theta()
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(omega, self.cos_theta)
    }
}

/// Frequency-dependent index of refraction `n(omega)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DispersionModel {
    /// `n = 1`.
    #[default]
    Vacuum,
    /// `n = n0`.
    Constant { n0: f64 },
    /// Cauchy form written in angular frequency: `n = a + b omega^2`.
    Cauchy { a: f64, b: f64 },
}

impl DispersionModel {
    pub fn constant(n0: f64) -> Result<Self> {
        if !(n0.is_finite() && n0 > 0.0) {
            return Err(Error::InvalidParameter {
                what: "n0",
                value: n0,
            });
        }
        Ok(Self::Constant { n0 })
    }

    pub fn cauchy(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter {
                what: "a",
                value: a,
            });
        }
        if !b.is_finite() {
            return Err(Error::InvalidParameter {
                what: "b",
                value: b,
            });
        }
        Ok(Self::Cauchy { a, b })
    }

    pub fn evaluate(&self, omega: f64) -> Result<f64> {
        let n = match *self {
            Self::Vacuum => 1.0,
            Self::Constant { n0 } => n0,
            Self::Cauchy { a, b } => a + b * omega * omega,
        };
        if n.is_finite() && n > 0.0 {
            Ok(n)
        } else {
            Err(Error::Dispersion { omega, index: n })
        }
    }
}

/// `exp(i omega cos(theta) z - i omega t) J_0(omega sin(theta) rho)`.
pub fn eval_direct(b: &BeamParams, p: &FieldPoint) -> Complex64 {
    direct_with_wavenumber(b, b.omega, p)
}

/// Direct evaluation in a dispersive medium: the spatial wave number becomes
/// `n(omega) omega` while the time factor keeps `omega`.
pub fn eval_direct_dispersive(
    b: &BeamParams,
    m: &DispersionModel,
    p: &FieldPoint,
) -> Result<Complex64> {
    let n = m.evaluate(b.omega)?;
    Ok(direct_with_wavenumber(b, n * b.omega, p))
}

fn direct_with_wavenumber(b: &BeamParams, k: f64, p: &FieldPoint) -> Complex64 {
    let phase = k * b.cos_theta * p.z - b.omega * p.t;
    let radial = bessel_j0(k * b.sin_theta() * p.rho);
    let (s, c) = phase.sin_cos();
    Complex64::new(radial * c, radial * s)
}
