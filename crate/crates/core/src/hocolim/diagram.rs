use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HocolimError;
use crate::arith::Rational;
use crate::graded::GradedRanks;

/// Integer matrix, row-major, `rows × cols` = rank of target × rank of source.
pub type IntMatrix = Vec<Vec<i64>>;

/// A functor I ↦ F(I) on the proper subsets of {0, …, k−1}, recorded by the
/// ranks of H_*(F(I)) and optionally by the maps induced by I ⊂ I ∪ {j}.
///
/// Subsets are bitmasks; bit j set means j ∈ I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetDiagram {
    k: usize,
    values: Vec<GradedRanks>,
    maps: Option<HashMap<(u32, usize), BTreeMap<usize, IntMatrix>>>,
}

pub const MAX_K: usize = 16;

impl PosetDiagram {
    /// `values[mask]` for every mask below 2^k − 1.
    pub fn new(k: usize, values: Vec<GradedRanks>) -> Result<Self, HocolimError> {
        if k == 0 || k > MAX_K {
            return Err(HocolimError::InvalidK(k));
        }
        if values.len() != (1 << k) - 1 {
            return Err(HocolimError::WrongValueCount { expected: (1 << k) - 1, found: values.len() });
        }
        Ok(PosetDiagram { k, values, maps: None })
    }

    pub fn from_fn(k: usize, f: impl Fn(u32) -> GradedRanks) -> Result<Self, HocolimError> {
        if k == 0 || k > MAX_K {
            return Err(HocolimError::InvalidK(k));
        }
        Self::new(k, (0..(1u32 << k) - 1).map(f).collect())
    }

    /// Attaches the maps F(I) → F(I ∪ {j}), keyed by (mask of I, j) and then
    /// by homological degree; a missing degree means the zero map.
    /// Shapes and commutativity of every square are checked.
    pub fn with_maps(mut self, maps: HashMap<(u32, usize), BTreeMap<usize, IntMatrix>>) -> Result<Self, HocolimError> {
        for (&(mask, j), by_degree) in &maps {
            let target = mask | (1 << j);
            if j >= self.k || mask & (1 << j) != 0 || target == self.full() {
                return Err(HocolimError::NotAnInclusion { subset: mask, added: j });
            }
            for (&q, m) in by_degree {
                let (rows, cols) = (self.rank(target, q), self.rank(mask, q));
                if m.len() != rows as usize || m.iter().any(|row| row.len() != cols as usize) {
                    return Err(HocolimError::BadMapShape { subset: mask, added: j, degree: q });
                }
            }
        }
        for mask in 0..self.full() {
            for a in (0..self.k).filter(|a| mask & (1 << a) == 0) {
                for b in (a + 1..self.k).filter(|b| mask & (1 << b) == 0) {
                    let top = mask | (1 << a) | (1 << b);
                    if top == self.full() {
                        continue;
                    }
                    for q in self.values[mask as usize].degrees() {
                        let via_a = mat_mul(
                            &map_or_zero(&maps, &self, mask | (1 << a), b, q),
                            &map_or_zero(&maps, &self, mask, a, q),
                        );
                        let via_b = mat_mul(
                            &map_or_zero(&maps, &self, mask | (1 << b), a, q),
                            &map_or_zero(&maps, &self, mask, b, q),
                        );
                        if via_a != via_b {
                            return Err(HocolimError::NotFunctorial { subset: mask, a, b, degree: q });
                        }
                    }
                }
            }
        }
        self.maps = Some(maps);
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn full(&self) -> u32 {
        (1 << self.k) - 1
    }

    pub fn value(&self, mask: u32) -> &GradedRanks {
        &self.values[mask as usize]
    }

    pub fn has_maps(&self) -> bool {
        self.maps.is_some()
    }

    fn rank(&self, mask: u32, q: usize) -> u64 {
        self.values[mask as usize].rank(q)
    }

    fn column(&self, mask: u32) -> usize {
        self.k - 1 - mask.count_ones() as usize
    }

    /// E¹_{p,q} = ⊕_{|I| = k−1−p} H_q(F(I)).
    pub fn e1_page(&self) -> SSPage {
        let partial: Vec<(usize, GradedRanks)> = (0..self.full())
            .into_par_iter()
            .map(|mask| (self.column(mask), self.values[mask as usize].clone()))
            .collect();
        let mut page = SSPage::new(self.k);
        for (p, ranks) in partial {
            for (q, r) in ranks.iter() {
                page.add(p, q, r);
            }
        }
        page
    }

    /// dim F(∅) + k − 1, after checking dim F(∅) > dim F(I) for I ≠ ∅ and
    /// that E¹_{k−1, dim F(∅)} is alone in rows q ≥ dim F(∅).
    pub fn hocolim_dim(&self) -> Result<usize, HocolimError> {
        let n = self.values[0].top_degree().ok_or(HocolimError::HypothesisViolated { subset: 0, dim: None })?;
        for mask in 1..self.full() {
            let dim = self.values[mask as usize].top_degree();
            if dim.is_some_and(|d| d >= n) {
                return Err(HocolimError::HypothesisViolated { subset: mask, dim });
            }
        }
        let page = self.e1_page();
        let corner_alone = page.entries().all(|(p, q, _)| q < n || (p, q) == (self.k - 1, n));
        if !corner_alone {
            return Err(HocolimError::CornerNotIsolated);
        }
        Ok(n + self.k - 1)
    }

    /// Rank of H_{dim F(∅)}(F(∅)) = rank of the top homology of the hocolim.
    pub fn top_rank(&self) -> Result<u64, HocolimError> {
        let top = self.hocolim_dim()?;
        Ok(self.e1_page().get(self.k - 1, top + 1 - self.k))
    }

    /// Σ_I (−1)^{k−1−|I|} χ(F(I)).
    pub fn euler_from_diagram(&self) -> i64 {
        (0..self.full())
            .map(|mask| {
                let chi = self.values[mask as usize].euler_characteristic();
                if self.column(mask) % 2 == 0 { chi } else { -chi }
            })
            .sum()
    }

    /// E² over Q from the supplied maps, with d¹ on the summand of I given by
    /// Σ_j (−1)^{#{i ∈ I : i < j}} F(I ⊂ I ∪ {j}).
    pub fn e2_page(&self) -> Result<SSPage, HocolimError> {
        let maps = self.maps.as_ref().ok_or(HocolimError::MissingMaps)?;
        let e1 = self.e1_page();
        let mut out = SSPage::new(self.k);
        let degrees: Vec<usize> = e1.entries().map(|(_, q, _)| q).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        for q in degrees {
            let ranks: Vec<usize> = (0..self.k).map(|p| self.differential_rank(maps, p, q)).collect();
            for p in 0..self.k {
                let dim = e1.get(p, q) as usize;
                let outgoing = ranks[p];
                let incoming = if p + 1 < self.k { ranks[p + 1] } else { 0 };
                out.add(p, q, (dim - outgoing - incoming) as u64);
            }
        }
        Ok(out)
    }

    /// Rank of d¹: E¹_{p,q} → E¹_{p−1,q}.
    fn differential_rank(&self, maps: &HashMap<(u32, usize), BTreeMap<usize, IntMatrix>>, p: usize, q: usize) -> usize {
        if p == 0 {
            return 0;
        }
        let sources: Vec<u32> = (0..self.full()).filter(|&m| self.column(m) == p).collect();
        let targets: Vec<u32> = (0..self.full()).filter(|&m| self.column(m) == p - 1).collect();
        let offset = |list: &[u32], mask: u32| -> usize {
            list.iter().take_while(|&&m| m != mask).map(|&m| self.rank(m, q) as usize).sum()
        };
        let rows: usize = targets.iter().map(|&m| self.rank(m, q) as usize).sum();
        let cols: usize = sources.iter().map(|&m| self.rank(m, q) as usize).sum();
        let mut d = vec![vec![Rational::zero(); cols]; rows];
        for &src in &sources {
            let c0 = offset(&sources, src);
            for j in (0..self.k).filter(|j| src & (1 << j) == 0) {
                let tgt = src | (1 << j);
                let r0 = offset(&targets, tgt);
                let sign: i64 = if (src & ((1 << j) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                for (r, row) in map_or_zero(maps, self, src, j, q).iter().enumerate() {
                    for (c, &x) in row.iter().enumerate() {
                        d[r0 + r][c0 + c] += Rational::from_integer((sign * x).into());
                    }
                }
            }
        }
        rational_rank(d)
    }
}

fn map_or_zero(
    maps: &HashMap<(u32, usize), BTreeMap<usize, IntMatrix>>,
    diagram: &PosetDiagram,
    mask: u32,
    j: usize,
    q: usize,
) -> IntMatrix {
    maps.get(&(mask, j)).and_then(|m| m.get(&q)).cloned().unwrap_or_else(|| {
        vec![vec![0; diagram.rank(mask, q) as usize]; diagram.rank(mask | (1 << j), q) as usize]
    })
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|c| (0..inner).map(|i| row[i] * b[i][c]).sum()).collect())
        .collect()
}

fn rational_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, pivot);
        let inv = m[rank][c].recip();
        let pivot_row: Vec<Rational> = m[rank].iter().map(|x| x * &inv).collect();
        for r in (0..m.len()).filter(|&r| r != rank) {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = m[r][c].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// A first-quadrant page: (p, q) ↦ rank for 0 ≤ p < k.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSPage {
    k: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl SSPage {
    pub fn new(k: usize) -> Self {
        SSPage { k, entries: BTreeMap::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn add(&mut self, p: usize, q: usize, rank: u64) {
        if rank > 0 {
            *self.entries.entry((p, q)).or_insert(0) += rank;
        }
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Nonzero entries as (p, q, rank), ordered by p then q.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(p, q), &r)| (p, q, r))
    }

    pub fn triples(&self) -> Vec<[u64; 3]> {
        self.entries().map(|(p, q, r)| [p as u64, q as u64, r]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries()
            .map(|(p, q, r)| if (p + q) % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Ranks by total degree p + q; the abutment when the page is E^∞.
    pub fn total_ranks(&self) -> GradedRanks {
        GradedRanks::from_pairs(self.entries().map(|(p, q, r)| (p + q, r)))
    }
}

impl fmt::Display for SSPage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max_q = self.entries.keys().map(|&(_, q)| q).max().unwrap_or(0);
        write!(f, "{:>5} |", "q\\p")?;
        for p in 0..self.k {
            write!(f, "{p:>5}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat(7 + 5 * self.k))?;
        for q in (0..=max_q).rev() {
            if (0..self.k).all(|p| self.get(p, q) == 0) {
                continue;
            }
            write!(f, "{q:>5} |")?;
            for p in 0..self.k {
                match self.get(p, q) {
                    0 => write!(f, "{:>5}", ".")?,
                    r => write!(f, "{r:>5}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// F(∅) = S^n and F(I) = point otherwise; with maps, every map sends H_0 to H_0 by 1.
pub fn sphere_diagram(n: usize, k: usize, with_maps: bool) -> Result<PosetDiagram, HocolimError> {
    let diagram = PosetDiagram::from_fn(k, |mask| if mask == 0 { GradedRanks::sphere(n) } else { GradedRanks::point() })?;
    if !with_maps {
        return Ok(diagram);
    }
    let full = (1u32 << k) - 1;
    let mut maps = HashMap::new();
    for mask in 0..full {
        for j in (0..k).filter(|j| mask & (1 << j) == 0 && mask | (1 << j) != full) {
            maps.insert((mask, j), BTreeMap::from([(0, vec![vec![1]])]));
        }
    }
    diagram.with_maps(maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, r: usize) -> u64 {
        (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
    }

    #[test]
    fn sphere_e1_page() {
        for k in 1..=4 {
            let page = sphere_diagram(5, k, false).unwrap().e1_page();
            assert_eq!(page.get(k - 1, 5), 1);
            assert_eq!(page.get(k - 1, 0), 1);
            for p in 0..k - 1 {
                assert_eq!(page.get(p, 0), binomial(k, k - 1 - p), "k={k} p={p}");
            }
        }
    }

    #[test]
    fn single_object() {
        let f = GradedRanks::from_pairs([(0, 1), (2, 3), (4, 1)]);
        let d = PosetDiagram::new(1, vec![f.clone()]).unwrap();
        let page = d.e1_page();
        assert_eq!(page.total_ranks(), f);
        assert_eq!(d.hocolim_dim().unwrap(), 4);
        assert_eq!(d.top_rank().unwrap(), 1);
    }

    #[test]
    fn wedge_of_two_spheres_has_top_rank_two() {
        let d = PosetDiagram::from_fn(3, |m| {
            if m == 0 { GradedRanks::from_pairs([(0, 1), (4, 2)]) } else { GradedRanks::point() }
        })
        .unwrap();
        assert_eq!(d.hocolim_dim().unwrap(), 6);
        assert_eq!(d.top_rank().unwrap(), 2);
    }

    #[test]
    fn hypothesis_is_checked() {
        let d = PosetDiagram::from_fn(2, |_| GradedRanks::sphere(3)).unwrap();
        assert!(matches!(d.hocolim_dim(), Err(HocolimError::HypothesisViolated { subset: 1, .. })));
        assert_eq!(d.hocolim_dim().unwrap_err().name(), "HypothesisViolated");
    }

    #[test]
    fn sphere_e2_is_sphere() {
        for n in 1..=4 {
            for k in 1..=4 {
                let e2 = sphere_diagram(n, k, true).unwrap().e2_page().unwrap();
                assert_eq!(e2.total_ranks(), GradedRanks::sphere(n + k - 1), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn e2_needs_maps() {
        assert_eq!(sphere_diagram(2, 2, false).unwrap().e2_page().unwrap_err(), HocolimError::MissingMaps);
    }

    #[test]
    fn non_commuting_square_rejected() {
        let d = PosetDiagram::from_fn(3, |_| GradedRanks::point()).unwrap();
        let mut maps = HashMap::new();
        for mask in 0..7u32 {
            for j in (0..3).filter(|j| mask & (1 << j) == 0 && mask | (1 << j) != 7) {
                maps.insert((mask, j), BTreeMap::from([(0, vec![vec![1]])]));
            }
        }
        maps.insert((0, 0), BTreeMap::from([(0, vec![vec![2]])]));
        assert!(matches!(d.clone().with_maps(maps.clone()), Err(HocolimError::NotFunctorial { subset: 0, .. })));
        maps.insert((0, 0), BTreeMap::from([(0, vec![vec![1, 0]])]));
        assert!(matches!(d.with_maps(maps), Err(HocolimError::BadMapShape { subset: 0, added: 0, degree: 0 })));
    }

    #[test]
    fn euler_two_ways() {
        let d = PosetDiagram::from_fn(3, |m| GradedRanks::from_pairs([(0, 1), (2, u64::from(m) + 1)])).unwrap();
        assert_eq!(d.e1_page().euler_characteristic(), d.euler_from_diagram());
    }

    #[test]
    fn page_display() {
        let s = sphere_diagram(2, 2, false).unwrap().e1_page().to_string();
        assert!(s.contains("q\\p"));
        assert_eq!(s.lines().count(), 4);
    }
}
