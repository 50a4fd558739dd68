//! Graded rank data and Poincaré polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Ranks of a free graded module, degree ↦ rank; zero ranks are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRanks(BTreeMap<usize, u64>);

impl GradedRanks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut g = Self::new();
        for (d, r) in pairs {
            g.add(d, r);
        }
        g
    }

    /// Rank 1 in degrees 0 and `n` (with rank 2 in degree 0 when n = 0).
    pub fn sphere(n: usize) -> Self {
        Self::from_pairs([(0, 1), (n, 1)])
    }

    pub fn point() -> Self {
        Self::from_pairs([(0, 1)])
    }

    pub fn add(&mut self, degree: usize, rank: u64) {
        if rank > 0 {
            *self.0.entry(degree).or_insert(0) += rank;
        }
    }

    pub fn rank(&self, degree: usize) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Top degree with nonzero rank; `None` for the zero module.
    pub fn top_degree(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.0.iter().map(|(&d, &r)| (d, r))
    }

    pub fn total_rank(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(d, r)| if d % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub fn shift(&self, by: usize) -> Self {
        Self(self.0.iter().map(|(&d, &r)| (d + by, r)).collect())
    }

    /// Reduced ranks: one copy of degree 0 removed.
    pub fn reduced(&self) -> Self {
        let mut g = self.clone();
        if let Some(r) = g.0.get_mut(&0) {
            *r -= 1;
            if *r == 0 {
                g.0.remove(&0);
            }
        }
        g
    }

    /// Keeps only degrees ≤ `bound`.
    pub fn truncate(&self, bound: usize) -> Self {
        Self(self.0.range(..=bound).map(|(&d, &r)| (d, r)).collect())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.0.keys().copied().collect()
    }
}

/// Polynomial with non-negative integer coefficients, `coeffs[i]` on t^i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poincare {
    coeffs: Vec<u64>,
}

impl Poincare {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poincare { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn top_coefficient(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Value at t = 1.
    pub fn eval_one(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn to_ranks(&self) -> GradedRanks {
        GradedRanks::from_pairs(self.coeffs.iter().enumerate().map(|(d, &r)| (d, r)))
    }
}

impl fmt::Display for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
