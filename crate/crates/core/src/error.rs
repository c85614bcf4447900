use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function it was passed to.
    #[error("{what} = {value} is outside the admissible domain")]
    Domain { what: &'static str, value: f64 },

    /// The evaluation point sits on the support boundary where the closed
    /// form is singular.
    #[error("point lies on the support boundary (radicand {radicand:e}); no finite value exists")]
    SingularBoundary { radicand: f64 },

    /// A dispersion model produced a non-finite or non-positive index.
    #[error("dispersion model gives n({omega}) = {index}, which is not finite and positive")]
    Dispersion { omega: f64, index: f64 },

    #[error("invalid parameter {what} = {value}")]
    InvalidParameter { what: &'static str, value: f64 },
}
