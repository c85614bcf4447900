//! Zeroth-order Bessel beams in three representations.
//!
//! A monochromatic beam `exp(i w cos(theta) z - i w t) J_0(w sin(theta) rho)`
//! (with `c = 1`) can be evaluated
//!
//! * directly ([`beam::eval_direct`]),
//! * as a partial-wave series over `P_n P_n j_n` ([`partial_wave::eval_series`]),
//! * as a line integral of `j_0(R)` against a plane-wave phase
//!   ([`integral_rep::eval_integral_rep`]).
//!
//! The crate also carries the constant-spectrum wavepacket (X-wave) in closed
//! and triple-Legendre series form ([`wavepacket`]) and a catalogue of
//! identity checks ([`identities`]) that back the command-line `verify`
//! subcommand.

pub mod beam;
pub mod cli;
pub mod error;
pub mod identities;
pub mod integral_rep;
pub mod partial_wave;
pub mod quadrature;
pub mod specfun;
pub mod wavepacket;

pub use beam::{BeamParams, DispersionModel, FieldPoint, SphericalView};
pub use error::{Error, Result};
pub use identities::IdentityReport;
pub use partial_wave::SeriesResult;
pub use quadrature::QuadratureResult;

pub use num_complex::Complex64;
