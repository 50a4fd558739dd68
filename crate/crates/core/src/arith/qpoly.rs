//! Dense univariate polynomials over Z and Q, low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

pub(crate) fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Divides `num` by the monic integer polynomial `den`, returning the quotient.
/// Panics if the division is not exact.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// The `n`-th cyclotomic polynomial, monic with integer coefficients.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut acc = vec![BigInt::zero(); n as usize + 1];
    acc[0] = -BigInt::one();
    acc[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            acc = div_exact_monic(&acc, &cyclotomic_polynomial(d));
        }
    }
    acc
}

pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut result = n;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            while m % q == 0 {
                m /= q;
            }
            result -= result / q;
        }
        q += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Polynomial over Q, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QPoly(pub Vec<Rational>);

impl QPoly {
    pub fn from_ints(c: &[BigInt]) -> Self {
        let mut v: Vec<Rational> = c.iter().cloned().map(Rational::from_integer).collect();
        trim(&mut v);
        QPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![Rational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] -= c;
        }
        trim(&mut v);
        QPoly(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly(vec![]);
        }
        let mut v = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        trim(&mut v);
        QPoly(v)
    }

    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        let dd = other.degree().expect("division by zero polynomial");
        let lead_inv = other.0[dd].recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly(vec![]), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lead_inv;
            for (j, oj) in other.0.iter().enumerate() {
                let t = &c * oj;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = c;
        }
        trim(&mut rem);
        trim(&mut quot);
        (QPoly(quot), QPoly(rem))
    }

    /// Returns `a` with `a * self ≡ 1 (mod modulus)`, if `self` is a unit there.
    pub fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        // Extended Euclid tracking only the coefficient of `self`.
        let (mut r0, mut r1) = (modulus.clone(), self.div_rem(modulus).1);
        let (mut s0, mut s1) = (QPoly(vec![]), QPoly(vec![Rational::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is the gcd; it must be a nonzero constant.
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.0[0].recip();
        let inv = s0.mul(&QPoly(vec![c]));
        Some(inv.div_rem(modulus).1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(24), ints(&[1, 0, 0, 0, -1, 0, 0, 0, 1]));
    }

    #[test]
    fn phi_matches_degree() {
        for n in 1..60 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn inverse_mod_phi() {
        let m = QPoly::from_ints(&cyclotomic_polynomial(12));
        let a = QPoly::from_ints(&ints(&[1, 2, 0, 3]));
        let inv = a.inverse_mod(&m).unwrap();
        let prod = a.mul(&inv).div_rem(&m).1;
        assert_eq!(prod, QPoly(vec![Rational::one()]));
    }
}
