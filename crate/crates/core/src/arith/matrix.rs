//! Square matrices over a cyclotomic field, plus exact Gaussian elimination.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::cyclotomic::{CyclotomicField, CyclotomicNumber};
use super::{ArithError, Rational};

/// An r×r matrix over Q(ζ_n); every entry lives in the same field.
#[derive(Clone)]
pub struct CycMatrix {
    field: Arc<CyclotomicField>,
    rank: usize,
    entries: Vec<CyclotomicNumber>,
}

/// Hashable exact fingerprint of a matrix, valid among matrices of one conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixKey(u32, Vec<(Vec<BigInt>, BigInt)>);

impl CycMatrix {
    /// Builds a matrix from rows, lifting every entry into `field`.
    pub fn from_rows(
        field: &Arc<CyclotomicField>,
        rows: Vec<Vec<CyclotomicNumber>>,
    ) -> Result<Self, ArithError> {
        let rank = rows.len();
        let mut entries = Vec::with_capacity(rank * rank);
        for row in rows {
            if row.len() != rank {
                return Err(ArithError::NotSquare);
            }
            for x in row {
                entries.push(x.lift_to(field)?);
            }
        }
        Ok(CycMatrix { field: field.clone(), rank, entries })
    }

    /// Matrix with rational entries.
    pub fn from_rational_rows(field: &Arc<CyclotomicField>, rows: &[Vec<Rational>]) -> Result<Self, ArithError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|q| CyclotomicNumber::from_rational(field, q)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn identity(field: &Arc<CyclotomicField>, rank: usize) -> Self {
        Self::diagonal(field, &vec![CyclotomicNumber::one(field); rank])
    }

    pub fn diagonal(field: &Arc<CyclotomicField>, diag: &[CyclotomicNumber]) -> Self {
        let rank = diag.len();
        let mut entries = vec![CyclotomicNumber::zero(field); rank * rank];
        for (i, d) in diag.iter().enumerate() {
            entries[i * rank + i] = d.lift_to(field).expect("diagonal entry outside field");
        }
        CycMatrix { field: field.clone(), rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.rank + j]
    }

    pub fn entries(&self) -> &[CyclotomicNumber] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<CyclotomicNumber>> {
        self.entries.chunks(self.rank).map(<[_]>::to_vec).collect()
    }

    pub fn key(&self) -> MatrixKey {
        MatrixKey(
            self.conductor(),
            self.entries
                .iter()
                .map(|e| (e.numerators().to_vec(), e.denominator().clone()))
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rank).all(|i| {
            (0..self.rank).all(|j| {
                let e = self.get(i, j);
                if i == j { e.is_one() } else { e.is_zero() }
            })
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let r = self.rank;
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let mut acc = CyclotomicNumber::zero(&self.field);
                for k in 0..r {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        CycMatrix { field: self.field.clone(), rank: r, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        CycMatrix { field: self.field.clone(), rank: self.rank, entries }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::identity(&self.field, self.rank);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_vec(&self, v: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank).fold(CyclotomicNumber::zero(&self.field), |acc, j| {
                    &acc + &(self.get(i, j) * &v[j])
                })
            })
            .collect()
    }

    pub fn trace(&self) -> CyclotomicNumber {
        (0..self.rank).fold(CyclotomicNumber::zero(&self.field), |acc, i| &acc + self.get(i, i))
    }

    /// Characteristic polynomial det(xI − A), low degree first, monic of length r+1.
    ///
    /// Faddeev–LeVerrier: M_k = A·M_{k−1} + c_{r−k+1}·I, c_{r−k} = −tr(A·M_k)/k.
    pub fn charpoly(&self) -> Vec<CyclotomicNumber> {
        let r = self.rank;
        let f = &self.field;
        let mut c = vec![CyclotomicNumber::zero(f); r + 1];
        c[r] = CyclotomicNumber::one(f);
        let ident = Self::identity(f, r);
        let mut m = CycMatrix { field: f.clone(), rank: r, entries: vec![CyclotomicNumber::zero(f); r * r] };
        for k in 1..=r {
            let am = self.mul(&m);
            m = CycMatrix {
                field: f.clone(),
                rank: r,
                entries: am
                    .entries
                    .iter()
                    .zip(&ident.entries)
                    .map(|(a, i)| a + &(i * &c[r - k + 1]))
                    .collect(),
            };
            let t = self.mul(&m).trace();
            let scale = CyclotomicNumber::from_rational(f, &Rational::new((-1).into(), (k as i64).into()));
            c[r - k] = &t * &scale;
        }
        c
    }

    pub fn det(&self) -> CyclotomicNumber {
        let c = self.charpoly();
        if self.rank % 2 == 0 { c[0].clone() } else { -&c[0] }
    }

    /// True iff every 2×2 minor vanishes.
    pub fn rank_at_most_one(&self) -> bool {
        let r = self.rank;
        for i1 in 0..r {
            for i2 in i1 + 1..r {
                for j1 in 0..r {
                    for j2 in j1 + 1..r {
                        let m = &(self.get(i1, j1) * self.get(i2, j2)) - &(self.get(i1, j2) * self.get(i2, j1));
                        if !m.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn to_coefficient_rows(&self) -> Vec<Vec<Vec<String>>> {
        self.rows()
            .iter()
            .map(|row| row.iter().map(|e| e.to_json().coeffs).collect())
            .collect()
    }
}

impl PartialEq for CycMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.entries == other.entries
    }
}

impl Eq for CycMatrix {}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<CyclotomicNumber>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].inv().expect("pivot is nonzero");
        rows[row] = rows[row].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != row && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let pivot_row = rows[row].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel {v : Mv = 0} of a (possibly non-square) matrix.
pub fn kernel_basis(
    field: &Arc<CyclotomicField>,
    rows: &[Vec<CyclotomicNumber>],
    ncols: usize,
) -> Vec<Vec<CyclotomicNumber>> {
    let mut work = rows.to_vec();
    let pivots = row_reduce(&mut work, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![CyclotomicNumber::zero(field); ncols];
            v[fc] = CyclotomicNumber::one(field);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&work[r][fc];
            }
            v
        })
        .collect()
}
