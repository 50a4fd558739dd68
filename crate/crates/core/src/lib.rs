//! Exact computations behind the homology of p-compact flag varieties:
//! cyclotomic and p-adic arithmetic, complex reflection groups and their
//! invariants, the idempotent splitting of the p-completed BS¹ in homology,
//! and Mayer–Vietoris spectral sequences for the adjoint space.

pub mod arith;
pub mod catalog;
pub mod graded;
pub mod hocolim;
pub mod model;
pub mod reflection;
pub mod splitting;

pub use arith::{ArithError, CycMatrix, CyclotomicField, CyclotomicNumber, Rational};
pub use catalog::{CatalogEntry, CatalogError, GroupSource, GroupSpecFile};
pub use graded::{GradedRanks, Poincare};
pub use hocolim::{adjoint_homology, HocolimError, PosetDiagram, SSPage};
pub use model::{build_model, flag_poincare, ModelError, PCompactModel};
pub use reflection::{close_group, GroupError, ReflectionGroup};
pub use splitting::{GradedOperator, PsiAlgebra, SplittingError};

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error(transparent)]
    Hocolim(#[from] HocolimError),
}

impl Error {
    /// Name of the innermost error variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Arith(e) => e.name(),
            Error::Group(e) => e.name(),
            Error::Catalog(e) => e.name(),
            Error::Model(e) => e.name(),
            Error::Splitting(e) => e.name(),
            Error::Hocolim(e) => e.name(),
        }
    }
}

/// Resolves a catalog name or spec file, closes it and builds its model at `p`.
pub fn model_for(name: &str, p: u64, precision: u32) -> Result<PCompactModel, Error> {
    let source = GroupSource::resolve(name)?;
    let group = close_group(&source.generators(Some(p))?, source.cap(Some(p)))?;
    Ok(model::build_model_with_precision(group, p, precision)?)
}
