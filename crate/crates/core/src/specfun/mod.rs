//! Special-function kernels used by every representation of the beam.
//!
//! Everything here is a pure function of its arguments:
//!
//! * Legendre polynomials `P_n(x)` by the three-term recurrence,
//! * spherical Bessel functions `j_n(x)` by Miller's downward recurrence
//!   (upward recurrence when `x >= n_max`),
//! * the cylindrical Bessel function `J_0(x)` by a double-double power series
//!   for small arguments and the Hankel asymptotic expansion beyond.
//!
//! Half-integer orders `J_{n+1/2}` are never evaluated on their own; callers
//! use `J_{n+1/2}(x) = sqrt(2x/pi) j_n(x)`.

mod cylindrical;
mod dd;
mod legendre;
mod spherical;

pub use cylindrical::bessel_j0;
pub use legendre::{legendre_p, legendre_p_sequence};
pub use spherical::{spherical_jn, spherical_jn_sequence};

pub(crate) use legendre::{clamp_unit, legendre_fill};
pub(crate) use spherical::spherical_jn_signed;

/// Values below this magnitude are flushed to zero by the spherical Bessel
/// recurrences.
pub const UNDERFLOW_FLOOR: f64 = 1e-300;

/// A table of function values indexed `0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence {
    values: Vec<f64>,
    first_flushed: Option<usize>,
}

impl RealSequence {
    pub(crate) fn new(values: Vec<f64>, first_flushed: Option<usize>) -> Self {
        debug_assert!(!values.is_empty());
        Self {
            values,
            first_flushed,
        }
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Index of the first entry that was flushed to zero by the underflow
    /// policy; every later entry is flushed as well.
    pub fn first_flushed(&self) -> Option<usize> {
        self.first_flushed
    }

    pub fn is_flushed(&self, k: usize) -> bool {
        self.first_flushed.is_some_and(|f| k >= f)
    }
}

impl std::ops::Index<usize> for RealSequence {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.values[k]
    }
}
