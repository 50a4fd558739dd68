//! Numeric invariants of the p-compact group attached to a Weyl group.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{embed_matrices, ArithError, PadicEmbedding};
use crate::graded::Poincare;
use crate::reflection::{min_generating_reflections, molien_degrees, parabolic, GroupError, ReflectionGroup};

pub const DEFAULT_PRECISION: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("r' = {r_prime} exceeds r + 1 = {}", rank + 1)]
    NegativeKappa { rank: usize, r_prime: usize },
    #[error("minimal primitive reflection order {l} does not divide p - 1 = {}", p - 1)]
    OrderDoesNotDivide { l: usize, p: u64 },
    #[error("reflection {0} is not primitive")]
    NotPrimitive(usize),
    #[error("subset position {0} is outside the generating set")]
    InvalidSubset(usize),
    #[error("flag polynomial is not a polynomial with non-negative coefficients")]
    NotPolynomial,
}

impl ModelError {
    pub fn name(&self) -> &'static str {
        match self {
            ModelError::Arith(e) => e.name(),
            ModelError::Group(e) => e.name(),
            ModelError::NegativeKappa { .. } => "NegativeKappa",
            ModelError::OrderDoesNotDivide { .. } => "OrderDoesNotDivide",
            ModelError::NotPrimitive(_) => "NotPrimitive",
            ModelError::InvalidSubset(_) => "InvalidSubset",
            ModelError::NotPolynomial => "NotPolynomial",
        }
    }
}

/// Invariants of a p-compact group read off from its Weyl group.
#[derive(Clone, Debug)]
pub struct PCompactModel {
    pub prime: u64,
    pub weyl: ReflectionGroup,
    pub embedding: PadicEmbedding,
    /// Sorted degrees d₁ ≤ … ≤ d_r.
    pub degrees: Vec<u32>,
    /// d = Σ (2d_i − 1).
    pub dimension: u64,
    /// Indices into `weyl.reflections()` of the first minimal generating set.
    pub generating_set: Vec<usize>,
    pub kappa: usize,
    /// Least order of a primitive reflection.
    pub l: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ModelRecord {
    pub rank: usize,
    pub degrees: Vec<u32>,
    pub dimension: u64,
    pub r_prime: usize,
    pub kappa: usize,
    pub l: usize,
}

pub fn build_model(weyl: ReflectionGroup, p: u64) -> Result<PCompactModel, ModelError> {
    build_model_with_precision(weyl, p, DEFAULT_PRECISION)
}

pub fn build_model_with_precision(weyl: ReflectionGroup, p: u64, k: u32) -> Result<PCompactModel, ModelError> {
    let embedding = embed_matrices(weyl.generators(), p, k)?;
    let l = weyl.minimal_primitive_order()?;
    if l > 2 && (p - 1) % l as u64 != 0 {
        return Err(ModelError::OrderDoesNotDivide { l, p });
    }
    let degrees = molien_degrees(&weyl)?;
    let rank = weyl.rank();
    let generating_set = min_generating_reflections(&weyl, 2 * rank)?;
    let r_prime = generating_set.len();
    if r_prime > rank + 1 {
        return Err(ModelError::NegativeKappa { rank, r_prime });
    }
    let dimension = degrees.iter().map(|&d| 2 * u64::from(d) - 1).sum();
    Ok(PCompactModel {
        prime: p,
        weyl,
        embedding,
        degrees,
        dimension,
        generating_set,
        kappa: rank + 1 - r_prime,
        l,
    })
}

impl PCompactModel {
    pub fn rank(&self) -> usize {
        self.weyl.rank()
    }

    pub fn r_prime(&self) -> usize {
        self.generating_set.len()
    }

    pub fn record(&self) -> ModelRecord {
        ModelRecord {
            rank: self.rank(),
            degrees: self.degrees.clone(),
            dimension: self.dimension,
            r_prime: self.r_prime(),
            kappa: self.kappa,
            l: self.l,
        }
    }

    /// Reflection indices of the generating-set positions in `subset`.
    pub fn subset_reflections(&self, subset: &[usize]) -> Result<Vec<usize>, ModelError> {
        subset
            .iter()
            .map(|&i| self.generating_set.get(i).copied().ok_or(ModelError::InvalidSubset(i)))
            .collect()
    }

    /// Degrees of W_I on the full rank-r space, padded with 1's.
    pub fn parabolic_degrees(&self, subset: &[usize]) -> Result<Vec<u32>, ModelError> {
        let reflections = self.subset_reflections(subset)?;
        let sub = parabolic(&self.weyl, &reflections)?;
        Ok(molien_degrees(&sub.group)?)
    }
}

/// Poincaré polynomial of H*(G/C_I) = Π(1 − t^{2d_i}) / Π(1 − t^{2d^I_i}).
///
/// `subset` lists positions in the model's generating set; empty means C_∅ = T.
pub fn flag_poincare(model: &PCompactModel, subset: &[usize]) -> Result<Poincare, ModelError> {
    let sub_degrees = model.parabolic_degrees(subset)?;
    quotient_poincare(&model.degrees, &sub_degrees)
}

/// Π(1 − t^{2a}) / Π(1 − t^{2b}), exactly.
pub fn quotient_poincare(top: &[u32], bottom: &[u32]) -> Result<Poincare, ModelError> {
    let mut num = vec![1i64];
    for &d in top {
        num = mul_one_minus(&num, 2 * d as usize);
    }
    for &d in bottom {
        num = div_one_minus(&num, 2 * d as usize).ok_or(ModelError::NotPolynomial)?;
    }
    let coeffs = num
        .into_iter()
        .map(|c| u64::try_from(c).map_err(|_| ModelError::NotPolynomial))
        .collect::<Result<_, _>>()?;
    Ok(Poincare::new(coeffs))
}

fn mul_one_minus(a: &[i64], m: usize) -> Vec<i64> {
    let mut out = vec![0; a.len() + m];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
        out[i + m] -= c;
    }
    out
}

/// Exact division by 1 − t^m, or `None` if it leaves a remainder.
fn div_one_minus(a: &[i64], m: usize) -> Option<Vec<i64>> {
    if a.len() <= m {
        return None;
    }
    let n = a.len() - m;
    let mut q = vec![0; n];
    for i in 0..n {
        q[i] = a[i] + if i >= m { q[i - m] } else { 0 };
    }
    (mul_one_minus(&q, m) == a).then_some(q)
}

/// Weyl-group bookkeeping for the centralizer of a primitive reflection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CentralizerReport {
    pub reflection: usize,
    pub order: usize,
    /// Degrees of ⟨s⟩ on the rank-r space.
    pub degrees: Vec<u32>,
    /// (r − 1) + (2l − 1).
    pub dimension: u64,
    /// Elements fixing the hyperplane of s pointwise are exactly the powers of s.
    pub stabilizer_is_cyclic: bool,
    /// Exactly one degree exceeds 1.
    pub rank_one_quotient: bool,
}

/// `reflection` indexes `model.weyl.reflections()`.
pub fn centralizer_structure(model: &PCompactModel, reflection: usize) -> Result<CentralizerReport, ModelError> {
    let s = model.weyl.reflection(reflection)?;
    if !s.primitive {
        return Err(ModelError::NotPrimitive(reflection));
    }
    let sub = parabolic(&model.weyl, &[reflection])?;
    let degrees = molien_degrees(&sub.group)?;
    let mut stabilizer = model.weyl.pointwise_stabilizer(&s.hyperplane);
    let mut powers = model.weyl.powers(s.element);
    stabilizer.sort_unstable();
    powers.sort_unstable();
    Ok(CentralizerReport {
        reflection,
        order: s.order,
        rank_one_quotient: degrees.iter().filter(|&&d| d > 1).count() == 1,
        dimension: degrees.iter().map(|&d| 2 * u64::from(d) - 1).sum(),
        degrees,
        stabilizer_is_cyclic: stabilizer == powers,
    })
}
