//! Mayer–Vietoris spectral sequences for diagrams over the proper subsets
//! of {0, …, k−1}, and the homology of the adjoint space.

mod adjoint;
mod diagram;

use thiserror::Error;

use crate::model::ModelError;

pub use adjoint::{adjoint_diagram, adjoint_homology, AdjointRecord, AdjointReport, SphereVerdict};
pub use diagram::{sphere_diagram, IntMatrix, PosetDiagram, SSPage, MAX_K};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HocolimError {
    #[error("k = {0} is out of range 1..=16")]
    InvalidK(usize),
    #[error("expected {expected} diagram values, found {found}")]
    WrongValueCount { expected: usize, found: usize },
    #[error("dim F(∅) must exceed dim F(I) for I ≠ ∅; subset {subset:#b} has dimension {dim:?}")]
    HypothesisViolated { subset: u32, dim: Option<usize> },
    #[error("the top-corner entry of E¹ is not isolated")]
    CornerNotIsolated,
    #[error("no diagram maps were supplied")]
    MissingMaps,
    #[error("({subset:#b}, +{added}) is not a codimension-one inclusion of proper subsets")]
    NotAnInclusion { subset: u32, added: usize },
    #[error("map from {subset:#b} adding {added} has the wrong shape in degree {degree}")]
    BadMapShape { subset: u32, added: usize, degree: usize },
    #[error("square over {subset:#b} adding {a} and {b} does not commute in degree {degree}")]
    NotFunctorial { subset: u32, a: usize, b: usize, degree: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl HocolimError {
    pub fn name(&self) -> &'static str {
        match self {
            HocolimError::InvalidK(_) => "InvalidK",
            HocolimError::WrongValueCount { .. } => "WrongValueCount",
            HocolimError::HypothesisViolated { .. } => "HypothesisViolated",
            HocolimError::CornerNotIsolated => "CornerNotIsolated",
            HocolimError::MissingMaps => "MissingMaps",
            HocolimError::NotAnInclusion { .. } => "NotAnInclusion",
            HocolimError::BadMapShape { .. } => "BadMapShape",
            HocolimError::NotFunctorial { .. } => "NotFunctorial",
            HocolimError::Model(e) => e.name(),
        }
    }
}
