//! Exact arithmetic: rationals, cyclotomic fields, and truncated p-adic rings.

pub mod cyclotomic;
pub mod matrix;
pub mod modular;
pub mod padic;
pub(crate) mod qpoly;
pub mod rational;

use thiserror::Error;

pub use cyclotomic::{CyclotomicField, CyclotomicJson, CyclotomicNumber};
pub use matrix::{kernel_basis, CycMatrix, MatrixKey};
pub use modular::{ModPoly, Zpk};
pub use padic::{embed_matrices, lift_cyclotomic_factor, PadicEmbedding, UnramifiedPadic, UnramifiedRing, ZpMatrix};
pub use qpoly::{cyclotomic_polynomial, euler_phi};
pub use rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("{p}^{k} does not fit in 64 bits")]
    PrecisionOverflow { p: u64, k: u32 },
    #[error("prime {p} divides conductor {n}")]
    PrimeDividesConductor { p: u64, n: u32 },
    #[error("conductors {0} and {1} are incompatible")]
    ConductorMismatch(u32, u32),
    #[error("invalid conductor {0}")]
    BadConductor(u32),
    #[error("value is not {0}-integral")]
    NotIntegral(u64),
    #[error("no embedding of Q(zeta_{n}) sends every entry into Z_{p}")]
    NoEmbedding { p: u64, n: u32 },
    #[error("cyclotomic factor index {0} out of range")]
    NoSuchFactor(usize),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("matrix is not square")]
    NotSquare,
}

impl ArithError {
    pub fn name(&self) -> &'static str {
        match self {
            ArithError::NotPrime(_) => "NotPrime",
            ArithError::ZeroPrecision => "ZeroPrecision",
            ArithError::PrecisionOverflow { .. } => "PrecisionOverflow",
            ArithError::PrimeDividesConductor { .. } => "PrimeDividesConductor",
            ArithError::ConductorMismatch(..) => "ConductorMismatch",
            ArithError::BadConductor(_) => "BadConductor",
            ArithError::NotIntegral(_) => "NotIntegral",
            ArithError::NoEmbedding { .. } => "NoEmbedding",
            ArithError::NoSuchFactor(_) => "NoSuchFactor",
            ArithError::BadRational(_) => "BadRational",
            ArithError::CoefficientCount { .. } => "CoefficientCount",
            ArithError::NotSquare => "NotSquare",
        }
    }
}
