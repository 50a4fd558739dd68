//! Homology of P = Σ^∞ BS¹₊ completed at p, as Z/p^k{x_j} with |x_j| = 2j,
//! and the diagonal operators built from the Adams-type map ψ.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::modular::prime_factors;
use crate::arith::{ArithError, Zpk};
use crate::graded::GradedRanks;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("the splitting needs an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("{0} does not have exact order p - 1 modulo p^k")]
    NotPrimitiveRoot(u64),
    #[error("invalid l = {l}: {reason}")]
    InvalidL { l: u64, reason: String },
    #[error("residue {s} is not in 0..{modulus}")]
    NoSuchResidue { s: u64, modulus: u64 },
}

impl SplittingError {
    pub fn name(&self) -> &'static str {
        match self {
            SplittingError::Arith(e) => e.name(),
            SplittingError::EvenPrime(_) => "EvenPrime",
            SplittingError::NotPrimitiveRoot(_) => "NotPrimitiveRoot",
            SplittingError::InvalidL { .. } => "InvalidL",
            SplittingError::NoSuchResidue { .. } => "NoSuchResidue",
        }
    }
}

/// A degree-preserving operator on H_*(P) up to degree 2N, given by its
/// eigenvalue c_j on x_j for 0 ≤ j ≤ N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    ring: Zpk,
    coeffs: Vec<u64>,
}

impl GradedOperator {
    pub fn from_fn(ring: Zpk, n: usize, f: impl Fn(usize) -> u64) -> Self {
        GradedOperator { ring, coeffs: (0..=n).map(|j| ring.reduce(f(j))).collect() }
    }

    pub fn identity(ring: Zpk, n: usize) -> Self {
        Self::from_fn(ring, n, |_| 1)
    }

    pub fn zero(ring: Zpk, n: usize) -> Self {
        Self::from_fn(ring, n, |_| 0)
    }

    /// 1 on x_j when `pred(j)`, else 0.
    pub fn indicator(ring: Zpk, n: usize, pred: impl Fn(usize) -> bool) -> Self {
        Self::from_fn(ring, n, |j| u64::from(pred(j)))
    }

    pub fn ring(&self) -> Zpk {
        self.ring
    }

    /// N, the largest generator index.
    pub fn max_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree_bound(&self) -> usize {
        2 * self.max_index()
    }

    pub fn coefficient(&self, j: usize) -> u64 {
        self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn compose(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| self.ring.mul(a, b)).collect();
        GradedOperator { ring: self.ring, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| self.ring.add(a, b)).collect();
        GradedOperator { ring: self.ring, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    /// Indices j with c_j ≠ 0.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&j| self.coeffs[j] != 0).collect()
    }
}

/// Least generator of (Z/p)^×.
pub fn primitive_root(p: u64) -> Result<u64, SplittingError> {
    let field = Zpk::new(p, 1)?;
    if p == 2 {
        return Ok(1);
    }
    let factors = prime_factors(p - 1);
    Ok((2..p)
        .find(|&g| factors.iter().all(|&q| field.pow(g, (p - 1) / q) != 1))
        .expect("cyclic unit group"))
}

/// The (p−1)st root of unity in Z/p^k congruent to `a` mod p, by Newton's
/// method on x^{p−1} − 1.
pub fn teichmuller_lift(ring: &Zpk, a: u64) -> u64 {
    let p = ring.prime();
    let mut x = a % p;
    if x == 0 {
        return 0;
    }
    let pm1 = ring.from_i64(p as i64 - 1);
    loop {
        let f = ring.sub(ring.pow(x, p - 1), 1);
        if f == 0 {
            return x;
        }
        let df = ring.mul(pm1, ring.pow(x, p - 2));
        x = ring.sub(x, ring.mul(f, ring.inv(df).expect("unit derivative")));
    }
}

/// ψ acts on x_j by ζ^j.
pub fn psi(ring: Zpk, zeta: u64, n: usize) -> Result<GradedOperator, SplittingError> {
    check_primitive(&ring, zeta)?;
    Ok(psi_unchecked(ring, zeta, n))
}

fn psi_unchecked(ring: Zpk, zeta: u64, n: usize) -> GradedOperator {
    let mut acc = 1;
    let mut coeffs = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        coeffs.push(acc);
        acc = ring.mul(acc, zeta);
    }
    GradedOperator { ring, coeffs }
}

fn check_primitive(ring: &Zpk, zeta: u64) -> Result<(), SplittingError> {
    let p = ring.prime();
    let order = p - 1;
    let primitive = ring.pow(zeta, order) == 1
        && prime_factors(order).iter().all(|&q| ring.pow(zeta, order / q) != 1);
    if primitive { Ok(()) } else { Err(SplittingError::NotPrimitiveRoot(zeta)) }
}

/// The operator algebra generated by ψ, truncated at degree 2N.
///
/// Elements of Z/p^k[ψ]/(ψ^{p−1} − 1) are coefficient vectors (a_0, …, a_{p−2})
/// of ψ^0, …, ψ^{p−2}; [`PsiAlgebra::evaluate`] turns them into operators.
#[derive(Clone, Debug)]
pub struct PsiAlgebra {
    ring: Zpk,
    zeta: u64,
    n: usize,
    powers: Vec<GradedOperator>,
    inv_order: u64,
}

impl PsiAlgebra {
    /// ζ is the Teichmüller lift of the least primitive root mod p.
    pub fn new(p: u64, k: u32, n: usize) -> Result<Self, SplittingError> {
        if p == 2 {
            return Err(SplittingError::EvenPrime(p));
        }
        let ring = Zpk::new(p, k)?;
        let zeta = teichmuller_lift(&ring, primitive_root(p)?);
        Self::with_zeta(ring, zeta, n)
    }

    pub fn with_zeta(ring: Zpk, zeta: u64, n: usize) -> Result<Self, SplittingError> {
        let p = ring.prime();
        if p == 2 {
            return Err(SplittingError::EvenPrime(p));
        }
        let psi = psi(ring, zeta, n)?;
        let mut powers = vec![GradedOperator::identity(ring, n)];
        for i in 1..(p - 1) as usize {
            powers.push(powers[i - 1].compose(&psi));
        }
        let inv_order = ring.inv(p - 1).expect("p - 1 is a unit");
        Ok(PsiAlgebra { ring, zeta, n, powers, inv_order })
    }

    pub fn ring(&self) -> Zpk {
        self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }

    pub fn zeta(&self) -> u64 {
        self.zeta
    }

    pub fn max_index(&self) -> usize {
        self.n
    }

    fn order(&self) -> u64 {
        self.prime() - 1
    }

    pub fn psi(&self) -> GradedOperator {
        psi_unchecked(self.ring, self.zeta, self.n)
    }

    /// ψ^i for 0 ≤ i < p − 1.
    pub fn psi_power(&self, i: usize) -> &GradedOperator {
        &self.powers[i % self.powers.len()]
    }

    /// Σ a_i ψ^i.
    pub fn evaluate(&self, combination: &[u64]) -> GradedOperator {
        let ring = self.ring;
        let mut coeffs = vec![0; self.n + 1];
        for (a, pw) in combination.iter().zip(&self.powers) {
            if *a == 0 {
                continue;
            }
            for (c, &x) in coeffs.iter_mut().zip(&pw.coeffs) {
                *c = ring.add(*c, ring.mul(*a, x));
            }
        }
        GradedOperator { ring, coeffs }
    }

    /// Coefficients of e_s = (p−1)^{-1} Σ_{i=0}^{p−2} ζ^{−is} ψ^i.
    pub fn idempotent_combination(&self, s: u64) -> Result<Vec<u64>, SplittingError> {
        let m = self.order();
        if s >= m {
            return Err(SplittingError::NoSuchResidue { s, modulus: m });
        }
        let ring = self.ring;
        let step = ring.pow(self.zeta, m - s);
        let mut out = Vec::with_capacity(m as usize);
        let mut acc = self.inv_order;
        for _ in 0..m {
            out.push(acc);
            acc = ring.mul(acc, step);
        }
        Ok(out)
    }

    pub fn idempotent_e(&self, s: u64) -> Result<GradedOperator, SplittingError> {
        Ok(self.evaluate(&self.idempotent_combination(s)?))
    }

    /// Σ e_s over the given residues, summed in the group ring before evaluation.
    pub fn idempotent_sum(&self, residues: &[u64]) -> Result<GradedOperator, SplittingError> {
        let mut total = vec![0; self.order() as usize];
        for &s in residues {
            for (t, c) in total.iter_mut().zip(self.idempotent_combination(s)?) {
                *t = self.ring.add(*t, c);
            }
        }
        Ok(self.evaluate(&total))
    }

    /// The operator projecting onto x_j with j ≡ s mod p − 1.
    pub fn residue_indicator(&self, s: u64) -> GradedOperator {
        let m = self.order() as usize;
        GradedOperator::indicator(self.ring, self.n, |j| j % m == s as usize)
    }

    fn check_l(&self, l: u64) -> Result<(), SplittingError> {
        let m = self.order();
        if l <= 1 || m % l != 0 {
            return Err(SplittingError::InvalidL { l, reason: format!("need l > 1 dividing p - 1 = {m}") });
        }
        Ok(())
    }

    /// f_BG = e_0 + e_l + ⋯ + e_{p−1−l}, with the ranks of H*(BN) = Z_p[z^l].
    pub fn transfer_image_bg(&self, l: u64) -> Result<TransferImage, SplittingError> {
        self.check_l(l)?;
        let residues: Vec<u64> = (0..self.order()).step_by(l as usize).collect();
        let ranks = GradedRanks::from_pairs(
            (0..=self.n).filter(|j| *j as u64 % l == 0).map(|j| (2 * j, 1)),
        );
        Ok(TransferImage { operator: self.idempotent_sum(&residues)?, residues, ranks })
    }

    /// f = Σ e_{(i+1)l−1} over the distinct residues mod p − 1, with the
    /// ranks of the reduced cohomology of the twisted Thom space.
    pub fn transfer_image_umkehr(&self, l: u64) -> Result<TransferImage, SplittingError> {
        self.check_l(l)?;
        let m = self.order();
        let residues: Vec<u64> = (0..=m / l)
            .map(|i| ((i + 1) * l - 1) % m)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(TransferImage {
            operator: self.idempotent_sum(&residues)?,
            residues,
            ranks: self.twisted_thom_ranks(l)?,
        })
    }

    /// Ranks of the twisted invariants: z^m ⊗ (Thom class of degree 1)
    /// survives iff the average (1/l) Σ_i ω^{i(m+1)} over ω = ζ^{(p−1)/l} is 1.
    pub fn twisted_thom_ranks(&self, l: u64) -> Result<GradedRanks, SplittingError> {
        self.check_l(l)?;
        let ring = self.ring;
        let omega = ring.pow(self.zeta, self.order() / l);
        let inv_l = ring.inv(l).expect("l divides p - 1, so it is a unit");
        let mut ranks = GradedRanks::new();
        for m in 0..self.n as u64 {
            let w = ring.pow(omega, m + 1);
            let mut sum = 0;
            let mut acc = 1;
            for _ in 0..l {
                sum = ring.add(sum, acc);
                acc = ring.mul(acc, w);
            }
            let avg = ring.mul(sum, inv_l);
            if avg != 0 {
                ranks.add(2 * m as usize + 1, avg);
            }
        }
        Ok(ranks)
    }
}

/// A transfer's action in homology and the graded ranks it detects.
#[derive(Clone, Debug)]
pub struct TransferImage {
    pub operator: GradedOperator,
    /// Residues s mod p − 1 whose idempotents are summed.
    pub residues: Vec<u64>,
    pub ranks: GradedRanks,
}

/// e_0 ∘ f = f ∘ e_0 = 0 for the Umkehr image f at l.
pub fn verify_framing_obstruction(alg: &PsiAlgebra, l: u64) -> Result<bool, SplittingError> {
    if l == 2 {
        return Err(SplittingError::InvalidL { l, reason: "handled by classical Pittie–Smith case".into() });
    }
    alg.check_l(l)?;
    let e0 = alg.idempotent_e(0)?;
    let f = alg.transfer_image_umkehr(l)?.operator;
    Ok(e0.compose(&f).is_zero() && f.compose(&e0).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SplittingReport {
    pub p: u64,
    pub l: u64,
    pub degree_bound: usize,
    pub checks_passed: Vec<String>,
    pub checks_failed: Vec<String>,
    pub umkehr_residues: Vec<u64>,
}

impl SplittingReport {
    pub fn all_passed(&self) -> bool {
        self.checks_failed.is_empty()
    }
}

/// Runs every identity for (p, l) up to degree 2N at precision k.
pub fn splitting_report(p: u64, l: u64, n: usize, k: u32) -> Result<SplittingReport, SplittingError> {
    let alg = PsiAlgebra::new(p, k, n)?;
    alg.check_l(l)?;
    let m = p - 1;
    let es: Vec<GradedOperator> = (0..m).map(|s| alg.idempotent_e(s)).collect::<Result<_, _>>()?;
    let ring = alg.ring();
    let mut checks: Vec<(&str, bool)> = vec![
        ("psi-order", alg.psi_power(m as usize - 1).compose(&alg.psi()) == GradedOperator::identity(ring, n)),
        ("idempotent", es.iter().all(GradedOperator::is_idempotent)),
        (
            "orthogonal",
            es.iter().enumerate().all(|(i, a)| es.iter().enumerate().all(|(j, b)| i == j || a.compose(b).is_zero())),
        ),
        (
            "complete",
            es.iter().fold(GradedOperator::zero(ring, n), |acc, e| acc.add(e)) == GradedOperator::identity(ring, n),
        ),
        ("indicator", es.iter().enumerate().all(|(s, e)| *e == alg.residue_indicator(s as u64))),
    ];
    let bg = alg.transfer_image_bg(l)?;
    checks.push(("bg-residues", bg.operator.support().iter().all(|&j| j as u64 % l == 0)));
    checks.push((
        "bg-ranks",
        bg.ranks.degrees().iter().all(|&d| d % (2 * l as usize) == 0) && bg.ranks.rank(0) == 1,
    ));
    let umkehr = alg.transfer_image_umkehr(l)?;
    checks.push(("umkehr-residues", umkehr.residues.iter().all(|&s| (s + 1) % l == 0)));
    checks.push(("umkehr-idempotent", umkehr.operator.is_idempotent() && bg.operator.is_idempotent()));
    checks.push((
        "twisted-thom",
        umkehr.ranks.degrees().iter().all(|&d| d % 2 == 1 && umkehr.operator.coefficient((d - 1) / 2) == 1),
    ));
    if l > 2 {
        checks.push(("framing-obstruction", verify_framing_obstruction(&alg, l)?));
    }
    let (passed, failed): (Vec<_>, Vec<_>) = checks.into_iter().partition(|&(_, ok)| ok);
    Ok(SplittingReport {
        p,
        l,
        degree_bound: 2 * n,
        checks_passed: passed.into_iter().map(|(name, _)| name.to_string()).collect(),
        checks_failed: failed.into_iter().map(|(name, _)| name.to_string()).collect(),
        umkehr_residues: umkehr.residues,
    })
}
