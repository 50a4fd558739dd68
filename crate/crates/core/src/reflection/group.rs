use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::GroupError;
use crate::arith::{kernel_basis, CycMatrix, CyclotomicField, CyclotomicNumber, MatrixKey};

/// A reflection (pseudo-reflection) of a [`ReflectionGroup`].
#[derive(Clone, Debug)]
pub struct Reflection {
    /// Index into [`ReflectionGroup::elements`].
    pub element: usize,
    pub order: usize,
    /// Basis of the fixed hyperplane (r − 1 column vectors).
    pub hyperplane: Vec<Vec<CyclotomicNumber>>,
    /// The eigenvalue ≠ 1, a root of unity of exact order `order`.
    pub eigenvalue: CyclotomicNumber,
    /// No reflection of strictly larger order has this one among its powers.
    pub primitive: bool,
}

/// A finite subgroup of GL_r(Q(ζ_n)), fully enumerated.
///
/// Elements are stored in breadth-first insertion order under the fixed
/// generator order, starting from the identity; indices are stable across runs.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    field: Arc<CyclotomicField>,
    rank: usize,
    generators: Vec<CycMatrix>,
    elements: Vec<CycMatrix>,
    index: HashMap<MatrixKey, usize>,
    reflections: Vec<Reflection>,
}

/// Closes `generators` under multiplication; rank and conductor are taken
/// from the first generator.
pub fn close_group(generators: &[CycMatrix], cap: usize) -> Result<ReflectionGroup, GroupError> {
    let first = generators.first().ok_or(GroupError::EmptyGenerators)?;
    ReflectionGroup::close(first.field(), first.rank(), generators, cap)
}

impl ReflectionGroup {
    /// Closure of `generators` (possibly empty) inside GL_rank(Q(ζ_n)).
    pub fn close(
        field: &Arc<CyclotomicField>,
        rank: usize,
        generators: &[CycMatrix],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            if g.rank() != rank {
                return Err(GroupError::RankMismatch { index: i, expected: rank, found: g.rank() });
            }
            if g.conductor() != field.conductor() {
                return Err(GroupError::ConductorMismatch {
                    index: i,
                    expected: field.conductor(),
                    found: g.conductor(),
                });
            }
            if g.det().is_zero() {
                return Err(GroupError::NotInvertible(i));
            }
        }
        let identity = CycMatrix::identity(field, rank);
        let mut index = HashMap::new();
        index.insert(identity.key(), 0);
        let mut elements = vec![identity];
        if cap == 0 {
            return Err(GroupError::CapExceeded(cap));
        }
        // Layered BFS: the products of one layer are formed in parallel and
        // inserted sequentially, which reproduces the plain queue order.
        let mut start = 0;
        while start < elements.len() {
            let end = elements.len();
            let products: Vec<Vec<CycMatrix>> = elements[start..end]
                .par_iter()
                .map(|e| generators.iter().map(|g| e.mul(g)).collect())
                .collect();
            for m in products.into_iter().flatten() {
                let key = m.key();
                if !index.contains_key(&key) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    index.insert(key, elements.len());
                    elements.push(m);
                }
            }
            start = end;
        }
        let mut group = ReflectionGroup {
            field: field.clone(),
            rank,
            generators: generators.to_vec(),
            elements,
            index,
            reflections: Vec::new(),
        };
        group.reflections = group.find_reflections();
        Ok(group)
    }

    fn find_reflections(&self) -> Vec<Reflection> {
        let identity = &self.elements[0];
        let mut found: Vec<Reflection> = (1..self.elements.len())
            .into_par_iter()
            .filter_map(|i| {
                let w = &self.elements[i];
                let diff = w.sub(identity);
                if !diff.rank_at_most_one() {
                    return None;
                }
                let hyperplane = kernel_basis(&self.field, &diff.rows(), self.rank);
                let eigenvalue = &w.trace() - &CyclotomicNumber::from_int(&self.field, self.rank as i64 - 1);
                Some(Reflection {
                    element: i,
                    order: self.element_order(i),
                    hyperplane,
                    eigenvalue,
                    primitive: false,
                })
            })
            .collect();
        let powers: Vec<Vec<usize>> = found.iter().map(|r| self.powers(r.element)).collect();
        for i in 0..found.len() {
            let (elem, order) = (found[i].element, found[i].order);
            found[i].primitive = !found
                .iter()
                .zip(&powers)
                .any(|(other, pw)| other.order > order && pw.contains(&elem));
        }
        found
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[CycMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CycMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &CycMatrix) -> Option<usize> {
        if m.conductor() != self.conductor() {
            return None;
        }
        self.index.get(&m.key()).copied()
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    pub fn reflection(&self, i: usize) -> Result<&Reflection, GroupError> {
        self.reflections.get(i).ok_or(GroupError::NoSuchReflection(i))
    }

    /// The least order of a primitive reflection.
    pub fn minimal_primitive_order(&self) -> Result<usize, GroupError> {
        self.reflections
            .iter()
            .filter(|r| r.primitive)
            .map(|r| r.order)
            .min()
            .ok_or(GroupError::NoReflections)
    }

    /// Index of the product `elements[i] · elements[j]`.
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.elements[i].mul(&self.elements[j]))
            .expect("group is closed under multiplication")
    }

    /// Element indices of w, w², …, up to and including the identity.
    pub fn powers(&self, i: usize) -> Vec<usize> {
        let w = &self.elements[i];
        let mut out = vec![i];
        let mut acc = w.clone();
        while !acc.is_identity() {
            acc = acc.mul(w);
            out.push(self.index_of(&acc).expect("group is closed"));
        }
        out
    }

    /// Order by repeated multiplication.
    pub fn element_order(&self, i: usize) -> usize {
        let w = &self.elements[i];
        let mut acc = w.clone();
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.mul(w);
            n += 1;
        }
        n
    }

    /// Order as the least m with every eigenvalue an m-th root of unity:
    /// since w is diagonalizable this is the least m with charpoly | (x^m − 1)^r.
    pub fn element_order_by_eigenvalues(&self, i: usize) -> usize {
        let chi = self.elements[i].charpoly();
        let one = CyclotomicNumber::one(&self.field);
        (1..=self.order())
            .find(|&m| {
                let mut xm1 = vec![CyclotomicNumber::zero(&self.field); m + 1];
                xm1[0] = -&one;
                xm1[m] = one.clone();
                let base = poly_rem(&xm1, &chi);
                let mut acc = base.clone();
                for _ in 1..self.rank {
                    acc = poly_rem(&poly_mul(&acc, &base), &chi);
                }
                acc.iter().all(CyclotomicNumber::is_zero)
            })
            .expect("finite order divides the group order")
    }

    /// Indices of the elements fixing every vector of `basis`.
    pub fn pointwise_stabilizer(&self, basis: &[Vec<CyclotomicNumber>]) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| basis.iter().all(|v| self.elements[i].mul_vec(v) == *v))
            .collect()
    }
}

fn poly_mul(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    let field = a[0].field();
    let mut out = vec![CyclotomicNumber::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Remainder modulo a monic polynomial.
fn poly_rem(a: &[CyclotomicNumber], m: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    for i in (d..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = r[i].clone();
        for (j, mj) in m.iter().enumerate() {
            r[i - d + j] = &r[i - d + j] - &(&c * mj);
        }
    }
    r.truncate(d.max(1));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogEntry;

    fn sign_group() -> ReflectionGroup {
        let f = CyclotomicField::new(1);
        let m = CycMatrix::diagonal(&f, &[CyclotomicNumber::from_int(&f, -1)]);
        close_group(&[m], 10).unwrap()
    }

    #[test]
    fn sign_group_closure() {
        let g = sign_group();
        assert_eq!(g.order(), 2);
        assert_eq!(g.reflections().len(), 1);
        assert_eq!(g.reflections()[0].order, 2);
        assert!(g.reflections()[0].primitive);
    }

    #[test]
    fn cap_is_enforced() {
        let f = CyclotomicField::new(1);
        let m = CycMatrix::diagonal(&f, &[CyclotomicNumber::from_int(&f, 2)]);
        assert_eq!(close_group(&[m], 50).unwrap_err(), GroupError::CapExceeded(50));
    }

    #[test]
    fn singular_generator_rejected() {
        let f = CyclotomicField::new(1);
        let m = CycMatrix::diagonal(&f, &[CyclotomicNumber::from_int(&f, 0)]);
        assert_eq!(close_group(&[m], 50).unwrap_err(), GroupError::NotInvertible(0));
    }

    #[test]
    fn s3_has_three_transpositions() {
        let gens = CatalogEntry::Symmetric(3).generators(None).unwrap();
        let g = close_group(&gens, 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.reflections().len(), 3);
        for r in g.reflections() {
            assert_eq!(r.order, 2);
            assert_eq!(r.hyperplane.len(), 1);
            assert_eq!(r.eigenvalue, CyclotomicNumber::from_int(g.field(), -1));
        }
    }

    #[test]
    fn cyclic_four_primitivity() {
        let gens = CatalogEntry::Cyclic(4).generators(None).unwrap();
        let g = close_group(&gens, 10).unwrap();
        assert_eq!(g.order(), 4);
        let by_order: Vec<(usize, bool)> = g.reflections().iter().map(|r| (r.order, r.primitive)).collect();
        assert_eq!(by_order.len(), 3);
        // −1 = i² is a reflection of order 2 but not primitive.
        assert!(by_order.contains(&(2, false)));
        assert_eq!(by_order.iter().filter(|&&(o, p)| o == 4 && p).count(), 2);
    }

    #[test]
    fn element_orders_agree() {
        for entry in [CatalogEntry::Symmetric(4), CatalogEntry::Cyclic(6), CatalogEntry::G7] {
            let gens = entry.generators(Some(13)).unwrap();
            let g = close_group(&gens, 1000).unwrap();
            for i in (0..g.order()).step_by(7) {
                assert_eq!(g.element_order(i), g.element_order_by_eigenvalues(i), "{entry:?} element {i}");
                assert_eq!(g.order() % g.element_order(i), 0);
            }
        }
    }

    #[test]
    fn minimal_primitive_orders() {
        assert_eq!(sign_group().minimal_primitive_order().unwrap(), 2);
        let order = |e: CatalogEntry| close_group(&e.generators(Some(5)).unwrap(), 1000).unwrap().minimal_primitive_order();
        assert_eq!(order(CatalogEntry::Cyclic(4)).unwrap(), 4);
        assert_eq!(order(CatalogEntry::Sullivan).unwrap(), 4);
        assert_eq!(order(CatalogEntry::G7).unwrap(), 2);
        let f = CyclotomicField::new(1);
        let minus = CycMatrix::diagonal(&f, &[CyclotomicNumber::from_int(&f, -1), CyclotomicNumber::from_int(&f, -1)]);
        assert_eq!(close_group(&[minus], 10).unwrap().minimal_primitive_order(), Err(GroupError::NoReflections));
    }

    #[test]
    fn g7_reflection_inventory() {
        let g = close_group(&CatalogEntry::G7.generators(None).unwrap(), 1000).unwrap();
        assert_eq!(g.order(), 144);
        let count = |o| g.reflections().iter().filter(|r| r.order == o).count();
        assert_eq!((count(2), count(3)), (6, 16));
        assert!(g.reflections().iter().all(|r| r.primitive));
    }

    /// Every w fixing the hyperplane of a primitive s pointwise is a power of s.
    #[test]
    fn hyperplane_stabilizer_is_cyclic() {
        for entry in [CatalogEntry::Symmetric(4), CatalogEntry::Cyclic(6), CatalogEntry::G7] {
            let g = close_group(&entry.generators(None).unwrap(), 1000).unwrap();
            for r in g.reflections().iter().filter(|r| r.primitive) {
                let mut stab = g.pointwise_stabilizer(&r.hyperplane);
                let mut pw = g.powers(r.element);
                stab.sort_unstable();
                pw.sort_unstable();
                assert_eq!(stab, pw, "{entry:?}");
            }
        }
    }

    /// Plain queue BFS as an independent ordering oracle.
    fn sequential_closure(gens: &[CycMatrix]) -> Vec<CycMatrix> {
        let mut out = vec![CycMatrix::identity(gens[0].field(), gens[0].rank())];
        let mut seen: std::collections::HashSet<MatrixKey> = out.iter().map(CycMatrix::key).collect();
        let mut q = 0;
        while q < out.len() {
            let e = out[q].clone();
            for g in gens {
                let m = e.mul(g);
                if seen.insert(m.key()) {
                    out.push(m);
                }
            }
            q += 1;
        }
        out
    }

    #[test]
    fn parallel_closure_matches_sequential_order() {
        for entry in [CatalogEntry::Symmetric(4), CatalogEntry::G7] {
            let gens = entry.generators(Some(13)).unwrap();
            let g = close_group(&gens, 1000).unwrap();
            assert_eq!(g.elements(), sequential_closure(&gens).as_slice());
        }
    }
}
