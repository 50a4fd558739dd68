//! Arithmetic in Z/p^k and in polynomial rings over it.
//!
//! Residues are `u64` in `[0, p^k)`; products go through `u128`, so any
//! p^k < 2^64 is supported.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::qpoly::cyclotomic_polynomial;
use super::{ArithError, Rational};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo `n` (requires gcd(a, n) = 1).
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let a = a % n;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    k
}

/// The ring Z/p^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zpk {
    p: u64,
    k: u32,
    modulus: u64,
}

impl Zpk {
    pub fn new(p: u64, k: u32) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if k == 0 {
            return Err(ArithError::ZeroPrecision);
        }
        let modulus = p
            .checked_pow(k)
            .ok_or(ArithError::PrecisionOverflow { p, k })?;
        Ok(Zpk { p, k, modulus })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Z/p^j for j ≤ k.
    pub fn with_precision(&self, j: u32) -> Self {
        Zpk::new(self.p, j).expect("smaller precision always fits")
    }

    pub fn residue_field(&self) -> Self {
        self.with_precision(1)
    }

    pub fn reduce(&self, a: u64) -> u64 {
        a % self.modulus
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.modulus - a }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut b = a % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: u64) -> bool {
        a % self.p != 0
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let eg = (a as i128).extended_gcd(&(self.modulus as i128));
        debug_assert_eq!(eg.gcd, 1);
        Some(eg.x.rem_euclid(self.modulus as i128) as u64)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        (a as i128).rem_euclid(self.modulus as i128) as u64
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("residue fits")
    }

    /// Image of a p-integral rational; `None` if p divides the denominator.
    pub fn from_rational(&self, q: &Rational) -> Option<u64> {
        let d = self.from_bigint(q.denom());
        Some(self.mul(self.from_bigint(q.numer()), self.inv(d)?))
    }

    /// Symmetric lift to (−p^k/2, p^k/2].
    pub fn signed(&self, a: u64) -> i128 {
        let a = a as i128;
        let m = self.modulus as i128;
        if a > m / 2 { a - m } else { a }
    }
}

/// Polynomial over Z/p^k, low degree first, trailing zeros trimmed.
pub type ModPoly = Vec<u64>;

pub(crate) fn poly_trim(mut v: ModPoly) -> ModPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn poly_reduce_ints(ring: &Zpk, f: &[BigInt]) -> ModPoly {
    poly_trim(f.iter().map(|c| ring.from_bigint(c)).collect())
}

pub fn poly_add(ring: &Zpk, a: &[u64], b: &[u64]) -> ModPoly {
    let n = a.len().max(b.len());
    poly_trim(
        (0..n)
            .map(|i| ring.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn poly_sub(ring: &Zpk, a: &[u64], b: &[u64]) -> ModPoly {
    let n = a.len().max(b.len());
    poly_trim(
        (0..n)
            .map(|i| ring.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn poly_scale(ring: &Zpk, a: &[u64], c: u64) -> ModPoly {
    poly_trim(a.iter().map(|&x| ring.mul(x, c)).collect())
}

pub fn poly_mul(ring: &Zpk, a: &[u64], b: &[u64]) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = ring.add(v[i + j], ring.mul(x, y));
        }
    }
    poly_trim(v)
}

/// Division with remainder; the divisor's leading coefficient must be a unit.
pub fn poly_divrem(ring: &Zpk, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly) {
    let b = poly_trim(b.to_vec());
    let db = b.len().checked_sub(1).expect("division by zero polynomial");
    let lead_inv = ring.inv(b[db]).expect("leading coefficient must be a unit");
    let mut rem = poly_trim(a.to_vec());
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i] == 0 {
            continue;
        }
        let c = ring.mul(rem[i], lead_inv);
        for (j, &bj) in b.iter().enumerate() {
            rem[i - db + j] = ring.sub(rem[i - db + j], ring.mul(c, bj));
        }
        quot[i - db] = c;
    }
    (poly_trim(quot), poly_trim(rem))
}

pub fn poly_rem(ring: &Zpk, a: &[u64], b: &[u64]) -> ModPoly {
    poly_divrem(ring, a, b).1
}

pub fn poly_monic(ring: &Zpk, a: &[u64]) -> ModPoly {
    match a.last() {
        None => vec![],
        Some(&lead) => poly_scale(ring, a, ring.inv(lead).expect("unit leading coefficient")),
    }
}

/// Monic gcd over the residue field (precision 1 only).
pub fn poly_gcd(field: &Zpk, a: &[u64], b: &[u64]) -> ModPoly {
    let (mut x, mut y) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    while !y.is_empty() {
        let r = poly_rem(field, &x, &y);
        x = y;
        y = r;
    }
    poly_monic(field, &x)
}

/// Returns (g, s, t) with s·a + t·b = g = gcd(a, b) monic, over the residue field.
pub fn poly_ext_gcd(field: &Zpk, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(field, &r0, &r1);
        let s2 = poly_sub(field, &s0, &poly_mul(field, &q, &s1));
        let t2 = poly_sub(field, &t0, &poly_mul(field, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    let lead_inv = field.inv(*r0.last().expect("gcd of zero polynomials")).unwrap();
    (
        poly_scale(field, &r0, lead_inv),
        poly_scale(field, &s0, lead_inv),
        poly_scale(field, &t0, lead_inv),
    )
}

pub fn poly_powmod(ring: &Zpk, base: &[u64], exp: &BigUint, modulus: &[u64]) -> ModPoly {
    let mut acc = poly_rem(ring, &[1], modulus);
    let b = poly_rem(ring, base, modulus);
    for i in (0..exp.bits()).rev() {
        acc = poly_rem(ring, &poly_mul(ring, &acc, &acc), modulus);
        if exp.bit(i) {
            acc = poly_rem(ring, &poly_mul(ring, &acc, &b), modulus);
        }
    }
    acc
}

/// Splits a monic squarefree polynomial whose irreducible factors all have
/// degree `d` (Cantor–Zassenhaus). Output is sorted.
pub fn equal_degree_factorization(field: &Zpk, f: &[u64], d: usize) -> Vec<ModPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    let mut stack = vec![poly_monic(field, f)];
    let p = field.prime();
    while let Some(g) = stack.pop() {
        let n = g.len() - 1;
        if n == d {
            out.push(g);
            continue;
        }
        loop {
            let a: ModPoly = poly_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = if p == 2 {
                // Trace to F_2: a + a^2 + a^4 + … + a^{2^{d−1}}.
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = poly_rem(field, &poly_mul(field, &t, &t), &g);
                    acc = poly_add(field, &acc, &t);
                }
                acc
            } else {
                let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
                poly_sub(field, &poly_powmod(field, &a, &e, &g), &[1])
            };
            let h = poly_gcd(field, &b, &g);
            let dh = h.len().saturating_sub(1);
            if dh > 0 && dh < n {
                let (q, r) = poly_divrem(field, &g, &h);
                debug_assert!(r.is_empty());
                stack.push(h);
                stack.push(poly_monic(field, &q));
                break;
            }
        }
    }
    out.sort();
    out
}

/// All monic irreducible factors of Φ_n over F_p, in sorted order.
pub fn cyclotomic_factors_mod_p(p: u64, n: u32) -> Result<Vec<ModPoly>, ArithError> {
    let field = Zpk::new(p, 1)?;
    if n == 0 || (n as u64).gcd(&p) != 1 {
        return Err(ArithError::PrimeDividesConductor { p, n });
    }
    let phi = poly_reduce_ints(&field, &cyclotomic_polynomial(n));
    let f = multiplicative_order(p % n as u64, n as u64) as usize;
    Ok(equal_degree_factorization(&field, &phi, f))
}

/// Hensel-lifts a monic factor `g` of the monic integer polynomial `big_f`
/// (coprime to its cofactor mod p) to a factor modulo p^k.
pub fn hensel_lift(big_f: &[BigInt], g: &[u64], ring: &Zpk) -> ModPoly {
    let field = ring.residue_field();
    let f_mod_p = poly_reduce_ints(&field, big_f);
    let (h0, r) = poly_divrem(&field, &f_mod_p, g);
    assert!(r.is_empty(), "g does not divide F mod p");
    let (one, s, t) = poly_ext_gcd(&field, g, &h0);
    assert_eq!(one, vec![1], "factor and cofactor are not coprime");
    let f_full = poly_reduce_ints(ring, big_f);
    let mut g = g.to_vec();
    let mut h = h0;
    let p = ring.prime();
    let mut pj = 1u64;
    for _ in 1..ring.precision() {
        pj *= p;
        let diff = poly_sub(ring, &f_full, &poly_mul(ring, &g, &h));
        // diff ≡ 0 mod p^j: divide exactly, then reduce mod p.
        let e: ModPoly = poly_trim(diff.iter().map(|&c| (c / pj) % p).collect());
        let te = poly_mul(&field, &t, &e);
        let (q, a) = poly_divrem(&field, &te, &g);
        let b = poly_add(&field, &poly_mul(&field, &s, &e), &poly_mul(&field, &q, &h));
        g = poly_add(ring, &g, &poly_scale(ring, &a, pj));
        h = poly_add(ring, &h, &poly_scale(ring, &b, pj));
    }
    g
}
