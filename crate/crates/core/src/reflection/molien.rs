use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{GroupError, ReflectionGroup};
use crate::arith::{CyclotomicNumber, MatrixKey, Rational};

/// The first `terms` coefficients of (1/|W|) Σ_w 1/det(1 − t·w).
///
/// Elements sharing det(1 − t·w) are summed once with multiplicity. Every
/// coefficient must come out rational, otherwise this is not a group over Q(ζ_n)
/// acting on a Q-form and an error is returned.
pub fn molien_series(group: &ReflectionGroup, terms: usize) -> Result<Vec<Rational>, GroupError> {
    let r = group.rank();
    let field = group.field();
    // det(1 − t·w) has coefficient charpoly[r − j] on t^j.
    let dets: Vec<Vec<CyclotomicNumber>> = group
        .elements()
        .par_iter()
        .map(|w| {
            let c = w.charpoly();
            (0..=r).map(|j| c[r - j].clone()).collect()
        })
        .collect();
    let mut classes: Vec<(Vec<CyclotomicNumber>, i64)> = Vec::new();
    let mut seen: HashMap<MatrixKey, usize> = HashMap::new();
    for d in dets {
        let key = crate::arith::CycMatrix::diagonal(field, &d).key();
        match seen.get(&key) {
            Some(&i) => classes[i].1 += 1,
            None => {
                seen.insert(key, classes.len());
                classes.push((d, 1));
            }
        }
    }
    let partial: Vec<Vec<CyclotomicNumber>> = classes
        .par_iter()
        .map(|(d, count)| {
            let mut s: Vec<CyclotomicNumber> = Vec::with_capacity(terms);
            for m in 0..terms {
                let mut acc = if m == 0 {
                    CyclotomicNumber::one(field)
                } else {
                    CyclotomicNumber::zero(field)
                };
                for j in 1..=r.min(m) {
                    if !d[j].is_zero() {
                        acc = &acc - &(&d[j] * &s[m - j]);
                    }
                }
                s.push(acc);
            }
            let c = CyclotomicNumber::from_int(field, *count);
            s.iter().map(|x| x * &c).collect()
        })
        .collect();
    let order = Rational::from_integer(BigInt::from(group.order()));
    (0..terms)
        .map(|m| {
            let total = partial
                .iter()
                .fold(CyclotomicNumber::zero(field), |acc, s| &acc + &s[m]);
            total
                .as_rational()
                .map(|q| q / &order)
                .ok_or_else(|| GroupError::DegreeExtractionFailed(format!("coefficient of t^{m} is not rational")))
        })
        .collect()
}

/// Recovers the multiset {d_i} with series = Π 1/(1 − t^{d_i}), given
/// enough terms, expecting exactly `rank` factors.
pub fn degrees_from_series(series: &[Rational], rank: usize) -> Result<Vec<u32>, GroupError> {
    let fail = |msg: String| GroupError::DegreeExtractionFailed(msg);
    let mut a: Vec<BigInt> = series
        .iter()
        .enumerate()
        .map(|(m, q)| {
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(fail(format!("coefficient of t^{m} is {q}, not an integer")))
            }
        })
        .collect::<Result<_, _>>()?;
    if a.first().map_or(true, |c| !c.is_one()) {
        return Err(fail("constant term is not 1".into()));
    }
    let mut degrees = Vec::new();
    while let Some(j) = (1..a.len()).find(|&j| !a[j].is_zero()) {
        if a[j].is_negative() {
            return Err(fail(format!("negative coefficient at t^{j}")));
        }
        if degrees.len() == rank {
            return Err(fail(format!("more than {rank} factors")));
        }
        for m in (j..a.len()).rev() {
            let prev = a[m - j].clone();
            a[m] -= prev;
        }
        degrees.push(j as u32);
    }
    if degrees.len() != rank {
        return Err(fail(format!("found {} factors, expected {rank}", degrees.len())));
    }
    Ok(degrees)
}

/// Degrees of the basic invariants, sorted ascending; their product is |W|.
pub fn molien_degrees(group: &ReflectionGroup) -> Result<Vec<u32>, GroupError> {
    // Every degree is at most |W|.
    let series = molien_series(group, group.order() + 1)?;
    let degrees = degrees_from_series(&series, group.rank())?;
    let product: u64 = degrees.iter().map(|&d| d as u64).product();
    if product != group.order() as u64 {
        return Err(GroupError::DegreeExtractionFailed(format!(
            "product of degrees {product} differs from group order {}",
            group.order()
        )));
    }
    Ok(degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogEntry;
    use crate::reflection::close_group;

    fn degrees_of(entry: CatalogEntry, p: Option<u64>) -> Vec<u32> {
        let g = close_group(&entry.generators(p).unwrap(), 10_000).unwrap();
        molien_degrees(&g).unwrap()
    }

    #[test]
    fn known_degrees() {
        assert_eq!(degrees_of(CatalogEntry::Symmetric(2), None), vec![2]);
        assert_eq!(degrees_of(CatalogEntry::Symmetric(3), None), vec![2, 3]);
        assert_eq!(degrees_of(CatalogEntry::Symmetric(4), None), vec![2, 3, 4]);
        assert_eq!(degrees_of(CatalogEntry::Sullivan, Some(5)), vec![4]);
        assert_eq!(degrees_of(CatalogEntry::Cyclic(6), None), vec![6]);
    }

    #[test]
    fn sign_series_is_one_over_one_minus_t_squared() {
        let g = close_group(&CatalogEntry::Symmetric(2).generators(None).unwrap(), 10).unwrap();
        let s = molien_series(&g, 8).unwrap();
        let ints: Vec<i64> = s.iter().map(|q| q.to_integer().try_into().unwrap()).collect();
        assert_eq!(ints, vec![1, 0, 1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn non_reflection_group_fails() {
        // ⟨−I⟩ in rank 2 has Molien series (1 + t²)/(1 − t²)².
        use crate::arith::{CycMatrix, CyclotomicField};
        let f = CyclotomicField::new(1);
        let m = CycMatrix::diagonal(&f, &[CyclotomicNumber::from_int(&f, -1), CyclotomicNumber::from_int(&f, -1)]);
        let g = close_group(&[m], 10).unwrap();
        assert!(matches!(molien_degrees(&g), Err(GroupError::DegreeExtractionFailed(_))));
    }

    #[test]
    fn degree_extraction_from_product_series() {
        // 1/((1 − t)(1 − t^3)) up to t^10.
        let coeffs = [1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4];
        let s: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect();
        assert_eq!(degrees_from_series(&s, 2).unwrap(), vec![1, 3]);
        assert!(degrees_from_series(&s, 1).is_err());
    }
}
