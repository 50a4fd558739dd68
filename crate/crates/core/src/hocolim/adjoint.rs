use serde::{Deserialize, Serialize};

use super::{HocolimError, PosetDiagram, SSPage};
use crate::graded::GradedRanks;
use crate::model::{flag_poincare, PCompactModel};

/// I ↦ H_*(G/C_I) over the proper subsets of the minimal generating set.
pub fn adjoint_diagram(model: &PCompactModel) -> Result<PosetDiagram, HocolimError> {
    let k = model.r_prime();
    let values = (0..(1u32 << k) - 1)
        .map(|mask| {
            let subset: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            Ok(flag_poincare(model, &subset)?.to_ranks())
        })
        .collect::<Result<_, HocolimError>>()?;
    PosetDiagram::new(k, values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SphereVerdict {
    #[serde(rename = "sphere")]
    Sphere,
    #[serde(rename = "not a sphere")]
    NotSphere,
    #[serde(rename = "undetermined")]
    Undetermined,
}

impl SphereVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            SphereVerdict::Sphere => "sphere",
            SphereVerdict::NotSphere => "not a sphere",
            SphereVerdict::Undetermined => "undetermined",
        }
    }
}

/// Homology of A_G = Σ^κ hocolim G/C_I as far as E¹ determines it.
#[derive(Clone, Debug)]
pub struct AdjointReport {
    pub k: usize,
    pub kappa: usize,
    pub e1: SSPage,
    /// dim hocolim = d − κ.
    pub hocolim_dim: usize,
    /// dim A_G.
    pub dimension: usize,
    /// Rank of H_d(A_G).
    pub top_rank: u64,
    /// Euler characteristic of A_G.
    pub euler: i64,
    /// Reduced ranks of A_G, known exactly only when r′ = 1.
    pub reduced_ranks: Option<GradedRanks>,
    pub verdict: SphereVerdict,
}

impl AdjointReport {
    pub fn lower_degrees(&self) -> &'static str {
        if self.reduced_ranks.is_some() { "exact" } else { "E¹ bound only" }
    }

    pub fn record(&self) -> AdjointRecord {
        AdjointRecord {
            k: self.k,
            page: self.e1.triples(),
            dim: self.dimension,
            top_rank: self.top_rank,
            euler: self.euler,
            kappa: self.kappa,
            verdict: self.verdict,
            reduced_ranks: self.reduced_ranks.as_ref().map(|g| g.iter().map(|(d, r)| [d as u64, r]).collect()),
            lower_degrees: self.lower_degrees().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AdjointRecord {
    pub k: usize,
    pub page: Vec<[u64; 3]>,
    pub dim: usize,
    pub top_rank: u64,
    pub euler: i64,
    pub kappa: usize,
    pub verdict: SphereVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_ranks: Option<Vec<[u64; 2]>>,
    pub lower_degrees: String,
}

pub fn adjoint_homology(model: &PCompactModel) -> Result<AdjointReport, HocolimError> {
    let diagram = adjoint_diagram(model)?;
    let kappa = model.kappa;
    let hocolim_dim = diagram.hocolim_dim()?;
    let top_rank = diagram.top_rank()?;
    let e1 = diagram.e1_page();
    // χ(Σ^κ X) = 1 + (−1)^κ (χ(X) − 1).
    let chi = e1.euler_characteristic();
    let euler = if kappa % 2 == 0 { chi } else { 2 - chi };
    let dimension = hocolim_dim + kappa;
    let reduced_ranks = (diagram.k() == 1).then(|| diagram.value(0).reduced().shift(kappa));
    let sphere_euler = if dimension % 2 == 0 { 2 } else { 0 };
    let verdict = match &reduced_ranks {
        Some(r) if r.degrees() == [dimension] && r.total_rank() == 1 => SphereVerdict::Sphere,
        Some(_) => SphereVerdict::NotSphere,
        None if top_rank != 1 || euler != sphere_euler => SphereVerdict::NotSphere,
        None => SphereVerdict::Undetermined,
    };
    Ok(AdjointReport { k: diagram.k(), kappa, e1, hocolim_dim, dimension, top_rank, euler, reduced_ranks, verdict })
}
