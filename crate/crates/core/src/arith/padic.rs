//! Finite-precision unramified extensions of Z_p and embeddings of
//! cyclotomic matrices into them.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::cyclotomic::CyclotomicNumber;
use super::matrix::CycMatrix;
use super::modular::{
    cyclotomic_factors_mod_p, hensel_lift, poly_mul, poly_rem, poly_trim, ModPoly, Zpk,
};
use super::qpoly::cyclotomic_polynomial;
use super::ArithError;

/// Z_p[x]/(g(x)) modulo p^k, for a monic lift g of an irreducible factor of Φ_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedRing {
    base: Zpk,
    conductor: u32,
    modulus: ModPoly,
}

/// An element of an [`UnramifiedRing`], as `f` coordinates in `[0, p^k)`.
#[derive(Clone, PartialEq, Eq)]
pub struct UnramifiedPadic {
    ring: Arc<UnramifiedRing>,
    coords: Vec<u64>,
}

impl UnramifiedRing {
    /// The ring in which ζ_n maps to the class of x, for the `index`-th
    /// irreducible factor of Φ_n mod p (in sorted order).
    pub fn for_factor(p: u64, n: u32, k: u32, index: usize) -> Result<Arc<Self>, ArithError> {
        let base = Zpk::new(p, k)?;
        let factors = cyclotomic_factors_mod_p(p, n)?;
        let g = factors.get(index).ok_or(ArithError::NoSuchFactor(index))?;
        let modulus = hensel_lift(&cyclotomic_polynomial(n), g, &base);
        Ok(Arc::new(UnramifiedRing { base, conductor: n, modulus }))
    }

    pub fn base(&self) -> &Zpk {
        &self.base
    }

    /// Residue degree f.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn element(self: &Arc<Self>, coords: &[u64]) -> UnramifiedPadic {
        let c: Vec<u64> = coords.iter().map(|&x| self.base.reduce(x)).collect();
        let mut coords = poly_rem(&self.base, &c, &self.modulus);
        coords.resize(self.degree(), 0);
        UnramifiedPadic { ring: self.clone(), coords }
    }

    pub fn from_zp(self: &Arc<Self>, a: u64) -> UnramifiedPadic {
        self.element(&[a])
    }

    /// Image of a cyclotomic number under ζ_n ↦ x. Fails if the value is
    /// not p-integral.
    pub fn embed(self: &Arc<Self>, x: &CyclotomicNumber) -> Result<UnramifiedPadic, ArithError> {
        let x = if x.conductor() == self.conductor {
            x.clone()
        } else {
            if self.conductor % x.conductor() != 0 {
                return Err(ArithError::ConductorMismatch(x.conductor(), self.conductor));
            }
            x.lift_to(&super::cyclotomic::CyclotomicField::new(self.conductor))?
        };
        let den = self.base.from_bigint(x.denominator());
        let den_inv = self.base.inv(den).ok_or(ArithError::NotIntegral(self.base.prime()))?;
        let num: ModPoly = x
            .numerators()
            .iter()
            .map(|c| self.base.mul(self.base.from_bigint(c), den_inv))
            .collect();
        Ok(self.element(&num))
    }
}

impl UnramifiedPadic {
    pub fn ring(&self) -> &Arc<UnramifiedRing> {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.base.prime()
    }

    pub fn precision(&self) -> u32 {
        self.ring.base.precision()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// True iff all coordinates of index ≥ 1 vanish.
    pub fn is_in_zp(&self) -> bool {
        self.coords[1..].iter().all(|&c| c == 0)
    }

    pub fn to_zp(&self) -> Option<u64> {
        self.is_in_zp().then(|| self.coords[0])
    }

    pub fn add(&self, other: &Self) -> Self {
        let b = &self.ring.base;
        let coords = self.coords.iter().zip(&other.coords).map(|(&x, &y)| b.add(x, y)).collect();
        UnramifiedPadic { ring: self.ring.clone(), coords }
    }

    pub fn neg(&self) -> Self {
        let b = &self.ring.base;
        UnramifiedPadic { ring: self.ring.clone(), coords: self.coords.iter().map(|&x| b.neg(x)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prod = poly_mul(&self.ring.base, &poly_trim(self.coords.clone()), &poly_trim(other.coords.clone()));
        self.ring.element(&prod)
    }
}

impl fmt::Debug for UnramifiedPadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}^{}", self.coords, self.prime(), self.precision())
    }
}

/// An r×r matrix over Z/p^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpMatrix {
    ring: Zpk,
    rank: usize,
    entries: Vec<u64>,
}

impl ZpMatrix {
    pub fn new(ring: Zpk, rank: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), rank * rank);
        ZpMatrix { ring, rank, entries: entries.into_iter().map(|x| ring.reduce(x)).collect() }
    }

    pub fn ring(&self) -> &Zpk {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.rank).map(<[_]>::to_vec).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let r = self.rank;
        let ring = self.ring;
        let entries = (0..r * r)
            .map(|idx| {
                let (i, j) = (idx / r, idx % r);
                (0..r).fold(0, |acc, k| ring.add(acc, ring.mul(self.get(i, k), other.get(k, j))))
            })
            .collect();
        ZpMatrix { ring, rank: r, entries }
    }

    /// Reduction to lower precision.
    pub fn reduce_to(&self, k: u32) -> Self {
        let ring = self.ring.with_precision(k);
        ZpMatrix::new(ring, self.rank, self.entries.clone())
    }
}

/// A consistent system of Z_p matrices, the image of cyclotomic matrices
/// under one ring embedding Q(ζ_n) → Q_p(ζ_n).
#[derive(Clone, Debug)]
pub struct PadicEmbedding {
    pub prime: u64,
    pub precision: u32,
    pub conductor: u32,
    /// Index of the chosen factor among the sorted factors of Φ_n mod p.
    pub factor_index: usize,
    pub factor_count: usize,
    /// Hensel lift of the chosen factor, modulo p^k.
    pub factor: ModPoly,
    pub matrices: Vec<ZpMatrix>,
}

/// One Hensel lift modulo p^k of one irreducible factor of Φ_n mod p.
///
/// The factor has degree equal to the multiplicative order of p mod n.
pub fn lift_cyclotomic_factor(p: u64, n: u32, k: u32) -> Result<ModPoly, ArithError> {
    let ring = Zpk::new(p, k)?;
    let factors = cyclotomic_factors_mod_p(p, n)?;
    Ok(hensel_lift(&cyclotomic_polynomial(n), &factors[0], &ring))
}

/// Searches every irreducible factor of Φ_n mod p for an embedding that
/// sends every entry of every matrix into Z_p.
pub fn embed_matrices(mats: &[CycMatrix], p: u64, k: u32) -> Result<PadicEmbedding, ArithError> {
    let base = Zpk::new(p, k)?;
    let n = mats.first().map_or(1, CycMatrix::conductor);
    if let Some(m) = mats.iter().find(|m| m.conductor() != n) {
        return Err(ArithError::ConductorMismatch(n, m.conductor()));
    }
    if (n as u64).gcd(&p) != 1 {
        return Err(ArithError::PrimeDividesConductor { p, n });
    }
    let factors = cyclotomic_factors_mod_p(p, n)?;
    let big = cyclotomic_polynomial(n);
    'factor: for (index, g) in factors.iter().enumerate() {
        let ring = Arc::new(UnramifiedRing {
            base,
            conductor: n,
            modulus: hensel_lift(&big, g, &base),
        });
        let mut out = Vec::with_capacity(mats.len());
        for m in mats {
            let mut entries = Vec::with_capacity(m.rank() * m.rank());
            for e in m.entries() {
                match ring.embed(e) {
                    Ok(x) => match x.to_zp() {
                        Some(a) => entries.push(a),
                        None => continue 'factor,
                    },
                    Err(ArithError::NotIntegral(_)) => continue 'factor,
                    Err(e) => return Err(e),
                }
            }
            out.push(ZpMatrix::new(base, m.rank(), entries));
        }
        return Ok(PadicEmbedding {
            prime: p,
            precision: k,
            conductor: n,
            factor_index: index,
            factor_count: factors.len(),
            factor: ring.modulus.clone(),
            matrices: out,
        });
    }
    Err(ArithError::NoEmbedding { p, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic::CyclotomicField;

    #[test]
    fn lifted_factor_degrees() {
        assert_eq!(lift_cyclotomic_factor(13, 12, 1).unwrap().len() - 1, 1);
        assert_eq!(lift_cyclotomic_factor(7, 12, 1).unwrap().len() - 1, 2);
        assert_eq!(lift_cyclotomic_factor(13, 24, 1).unwrap().len() - 1, 2);
        assert_eq!(lift_cyclotomic_factor(13, 24, 5).unwrap().len() - 1, 2);
        assert!(lift_cyclotomic_factor(3, 24, 1).is_err());
    }

    #[test]
    fn sign_group_embeds_everywhere() {
        let f = CyclotomicField::new(1);
        let one = CycMatrix::identity(&f, 1);
        let minus = CycMatrix::diagonal(&f, &[CyclotomicNumber::from_int(&f, -1)]);
        let e = embed_matrices(&[one, minus], 5, 4).unwrap();
        assert_eq!(e.matrices[0].get(0, 0), 1);
        assert_eq!(e.matrices[1].get(0, 0), 624);
    }

    #[test]
    fn ring_element_arithmetic() {
        let ring = UnramifiedRing::for_factor(7, 24, 3, 0).unwrap();
        let f = CyclotomicField::new(24);
        let z = ring.embed(&CyclotomicNumber::zeta(&f)).unwrap();
        assert!(!z.is_in_zp());
        let mut acc = ring.from_zp(1);
        for _ in 0..24 {
            acc = acc.mul(&z);
        }
        assert_eq!(acc, ring.from_zp(1));
        // ζ^12 = −1 lies in Z_p.
        let z12 = ring.embed(&CyclotomicNumber::zeta_pow(&f, 12)).unwrap();
        assert_eq!(z12.to_zp(), Some(7u64.pow(3) - 1));
        assert_eq!(z12.add(&ring.from_zp(1)).to_zp(), Some(0));
    }

    #[test]
    fn non_integral_entry_fails() {
        let f = CyclotomicField::new(1);
        let m = CycMatrix::diagonal(&f, &[CyclotomicNumber::from_rational(&f, &crate::Rational::new(1.into(), 5.into()))]);
        assert!(matches!(embed_matrices(&[m], 5, 2), Err(ArithError::NoEmbedding { .. })));
    }
}
