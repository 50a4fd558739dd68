use rayon::prelude::*;

use super::{GroupError, ReflectionGroup};
use crate::arith::{kernel_basis, CycMatrix, CyclotomicNumber};

/// Right multiplication by each reflection, as permutations of element indices.
pub struct ReflectionTable {
    table: Vec<Vec<usize>>,
}

impl ReflectionTable {
    pub fn new(group: &ReflectionGroup) -> Self {
        let table = group
            .reflections()
            .par_iter()
            .map(|r| {
                let s = group.element(r.element);
                group
                    .elements()
                    .iter()
                    .map(|w| group.index_of(&w.mul(s)).expect("group is closed"))
                    .collect()
            })
            .collect();
        ReflectionTable { table }
    }

    /// Membership mask of the subgroup generated by the given reflections.
    pub fn closure(&self, reflections: &[usize]) -> Vec<bool> {
        let n = self.table.first().map_or(1, Vec::len);
        let mut member = vec![false; n];
        member[0] = true;
        let mut queue = vec![0];
        while let Some(e) = queue.pop() {
            for &r in reflections {
                let next = self.table[r][e];
                if !member[next] {
                    member[next] = true;
                    queue.push(next);
                }
            }
        }
        member
    }

    pub fn closure_order(&self, reflections: &[usize]) -> usize {
        self.closure(reflections).iter().filter(|&&b| b).count()
    }
}

/// The lexicographically first smallest set of reflections generating the
/// whole group, as indices into [`ReflectionGroup::reflections`].
///
/// Subsets are searched by increasing size; a candidate reflection already in
/// the closure of the chosen prefix is skipped, since that subset generates
/// the same group as a smaller one that was already rejected.
pub fn min_generating_reflections(group: &ReflectionGroup, bound: usize) -> Result<Vec<usize>, GroupError> {
    let order = group.order();
    let table = ReflectionTable::new(group);
    let all: Vec<usize> = (0..group.reflections().len()).collect();
    let sub = table.closure_order(&all);
    if sub != order {
        return Err(GroupError::NotReflectionGenerated { sub, order });
    }
    if order == 1 {
        return Ok(vec![]);
    }
    let elem_of: Vec<usize> = group.reflections().iter().map(|r| r.element).collect();
    for size in 1..=bound {
        let mut chosen = Vec::with_capacity(size);
        if search(&table, &elem_of, size, 0, &mut chosen) {
            return Ok(chosen);
        }
    }
    Err(GroupError::BoundExceeded(bound))
}

fn search(
    table: &ReflectionTable,
    elem_of: &[usize],
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let member = table.closure(chosen);
    if chosen.len() == size {
        return member.iter().all(|&b| b);
    }
    for next in start..elem_of.len() {
        if member[elem_of[next]] {
            continue;
        }
        chosen.push(next);
        if search(table, elem_of, size, next + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A parabolic subgroup W_I with the subspace it fixes pointwise.
#[derive(Clone, Debug)]
pub struct Parabolic {
    /// Reflection indices generating W_I.
    pub subset: Vec<usize>,
    pub group: ReflectionGroup,
    /// Basis of the common fixed subspace (intersection of eigenvalue-1 eigenspaces).
    pub fixed_basis: Vec<Vec<CyclotomicNumber>>,
}

/// W_I = ⟨s_i : i ∈ I⟩ for reflection indices `subset`, with its fixed subspace.
pub fn parabolic(group: &ReflectionGroup, subset: &[usize]) -> Result<Parabolic, GroupError> {
    let field = group.field();
    let r = group.rank();
    let mats: Vec<CycMatrix> = subset
        .iter()
        .map(|&i| group.reflection(i).map(|s| group.element(s.element).clone()))
        .collect::<Result<_, _>>()?;
    let sub = ReflectionGroup::close(field, r, &mats, group.order())?;
    let identity = CycMatrix::identity(field, r);
    let rows: Vec<Vec<CyclotomicNumber>> = mats.iter().flat_map(|m| m.sub(&identity).rows()).collect();
    let fixed_basis = if rows.is_empty() {
        identity.rows()
    } else {
        kernel_basis(field, &rows, r)
    };
    Ok(Parabolic { subset: subset.to_vec(), group: sub, fixed_basis })
}
