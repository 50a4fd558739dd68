//! Finite matrix groups generated by reflections: closure, reflection
//! inventory, Molien series and degrees, generating sets and parabolics.

mod generation;
mod group;
mod molien;

use thiserror::Error;

pub use generation::{min_generating_reflections, parabolic, Parabolic, ReflectionTable};
pub use group::{close_group, Reflection, ReflectionGroup};
pub use molien::{degrees_from_series, molien_degrees, molien_series};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("no generators given")]
    EmptyGenerators,
    #[error("generator {index} has rank {found}, expected {expected}")]
    RankMismatch { index: usize, expected: usize, found: usize },
    #[error("generator {index} has conductor {found}, expected {expected}")]
    ConductorMismatch { index: usize, expected: u32, found: u32 },
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("group order exceeds cap {0}")]
    CapExceeded(usize),
    #[error("group contains no reflections")]
    NoReflections,
    #[error("Molien series does not factor into degrees: {0}")]
    DegreeExtractionFailed(String),
    #[error("reflections generate a proper subgroup of order {sub} (group order {order})")]
    NotReflectionGenerated { sub: usize, order: usize },
    #[error("no generating set of at most {0} reflections")]
    BoundExceeded(usize),
    #[error("reflection index {0} out of range")]
    NoSuchReflection(usize),
}

impl GroupError {
    pub fn name(&self) -> &'static str {
        match self {
            GroupError::EmptyGenerators => "EmptyGenerators",
            GroupError::RankMismatch { .. } => "RankMismatch",
            GroupError::ConductorMismatch { .. } => "ConductorMismatch",
            GroupError::NotInvertible(_) => "NotInvertible",
            GroupError::CapExceeded(_) => "CapExceeded",
            GroupError::NoReflections => "NoReflections",
            GroupError::DegreeExtractionFailed(_) => "DegreeExtractionFailed",
            GroupError::NotReflectionGenerated { .. } => "NotReflectionGenerated",
            GroupError::BoundExceeded(_) => "BoundExceeded",
            GroupError::NoSuchReflection(_) => "NoSuchReflection",
        }
    }
}
