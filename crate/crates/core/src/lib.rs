//! Computational workbench for split Lie algebras: exact Kostant-line
//! tables and their root evaluations, the compatibility functional in
//! explicit coordinates, the Diophantine analysis of third-root singular
//! lines (quartic scan, elliptic curve, periods, elliptic logarithms and
//! the integral-point bound), and floating-point affine invariants
//! (Jordan projections, Margulis invariants, affine ratios, additivity
//! defects, Jordan-variation sampling).
//!
//! Exact claims are cross-checked by two independent constructions; all
//! exact arithmetic is arbitrary-precision rational and never rounds.

pub mod affine;
pub mod dio;
pub mod exact;
pub mod kahler;
pub mod liealg;
pub mod matrix;
pub mod numeric;

pub use exact::Rational;
pub use matrix::ExactMatrix;

/// Error type shared across the crate.
///
/// `OracleDisagreement` and `StructureViolation` mark mathematical
/// verification failures (two routes to the same value disagreeing, or an
/// exact identity failing); callers map them to a distinct exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {lhs:?} vs {rhs:?}")]
    DimensionMismatch {
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("exact structure violated: {0}")]
    StructureViolation(String),

    #[error("independent evaluations disagree: {0}")]
    OracleDisagreement(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    /// True for failures of mathematical verification (as opposed to bad
    /// input or numeric breakdown).
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::StructureViolation(_) | Error::OracleDisagreement(_)
        )
    }
}
