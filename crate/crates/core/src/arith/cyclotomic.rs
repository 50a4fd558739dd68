//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` as integer
//! numerators over one common positive denominator. Products are reduced
//! modulo the (monic, integral) n-th cyclotomic polynomial, so no rational
//! normalization happens inside inner loops.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::qpoly::{cyclotomic_polynomial, lcm, QPoly};
use super::rational::{format_rational, parse_rational};
use super::{ArithError, Rational};

/// The field Q(ζ_n) together with its defining polynomial.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        Arc::new(CyclotomicField {
            conductor,
            modulus: cyclotomic_polynomial(conductor),
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree φ(n) of the field over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of Φ_n, low degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let deg = self.degree();
        for i in (deg..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[i]);
            for (j, mj) in self.modulus[..deg].iter().enumerate() {
                v[i - deg + j] -= &c * mj;
            }
        }
        v.resize(deg, BigInt::zero());
        v
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for CyclotomicField {}

/// An element of Q(ζ_n).
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field.degree());
        let mut x = CyclotomicNumber { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicNumber {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, &Rational::one())
    }

    pub fn from_int(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, &Rational::from_integer(n.into()))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = q.numer().clone();
        Self::from_parts(field.clone(), num, q.denom().clone())
    }

    /// Builds `Σ coeffs[i] ζ^i`; `coeffs` may be longer than φ(n).
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        let num = field.reduce(num);
        Self::from_parts(field.clone(), num, den)
    }

    /// ζ_n^e for any integer exponent.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, e: i64) -> Self {
        let n = field.conductor as i64;
        let e = e.rem_euclid(n) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        let num = field.reduce(v);
        Self::from_parts(field.clone(), num, BigInt::one())
    }

    pub fn zeta(field: &Arc<CyclotomicField>) -> Self {
        Self::zeta_pow(field, 1)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Power-basis coordinates, length φ(n).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-expresses the value in Q(ζ_m); `m` must be a multiple of the conductor.
    pub fn lift_to(&self, target: &Arc<CyclotomicField>) -> Result<Self, ArithError> {
        let (n, m) = (self.field.conductor, target.conductor);
        if m == n {
            return Ok(CyclotomicNumber {
                field: target.clone(),
                num: self.num.clone(),
                den: self.den.clone(),
            });
        }
        if m % n != 0 {
            return Err(ArithError::ConductorMismatch(n, m));
        }
        let step = (m / n) as usize;
        let mut v = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        let num = target.reduce(v);
        Ok(Self::from_parts(target.clone(), num, self.den.clone()))
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.conductor(), b.conductor());
        let f = CyclotomicField::new(m);
        (a.lift_to(&f).unwrap(), b.lift_to(&f).unwrap())
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.conductor() == other.conductor()
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let l = self.den.lcm(&other.den);
        let (fa, fb) = (&l / &self.den, &l / &other.den);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                if negate {
                    a * &fa - b * &fb
                } else {
                    a * &fa + b * &fb
                }
            })
            .collect();
        Self::from_parts(self.field.clone(), num, l)
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let d = self.field.degree();
        let mut v = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(v);
        Self::from_parts(self.field.clone(), num, &self.den * &other.den)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus = QPoly::from_ints(&self.field.modulus);
        let a = QPoly::from_ints(&self.num);
        let inv = a.inverse_mod(&modulus)?;
        // (num/den)^{-1} = den * num^{-1}
        let scaled: Vec<Rational> = inv
            .0
            .iter()
            .map(|c| c * Rational::from_integer(self.den.clone()))
            .collect();
        Some(Self::from_coeffs(&self.field, &scaled))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Some(acc)
    }

    pub fn to_json(&self) -> CyclotomicJson {
        CyclotomicJson {
            conductor: self.conductor(),
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
    }

    pub fn from_json(j: &CyclotomicJson) -> Result<Self, ArithError> {
        if j.conductor == 0 {
            return Err(ArithError::BadConductor(0));
        }
        let field = CyclotomicField::new(j.conductor);
        if j.coeffs.len() != field.degree() {
            return Err(ArithError::CoefficientCount {
                expected: field.degree(),
                found: j.coeffs.len(),
            });
        }
        let q = j
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(&field, &q))
    }
}

/// Serialized form `{conductor, coeffs: ["a/b", …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub conductor: u32,
    pub coeffs: Vec<String>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.same_field(other) {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Self::aligned(self, other);
            a == b
        }
    }
}

impl Eq for CyclotomicNumber {}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a CyclotomicNumber> for &'a CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                if self.same_field(rhs) {
                    $body(self, rhs)
                } else {
                    let (a, b) = CyclotomicNumber::aligned(self, rhs);
                    $body(&a, &b)
                }
            }
        }
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &CyclotomicNumber, b| a.add_same(b, false));
binop!(Sub, sub, |a: &CyclotomicNumber, b| a.add_same(b, true));
binop!(Mul, mul, |a: &CyclotomicNumber, b| a.mul_same(b));

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, q) in self.coeffs().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let (sign, mag) = if q.is_negative() { ("-", -q) } else { ("+", q.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{}", self.conductor())?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn zeta_has_order_n() {
        for n in [1u32, 2, 3, 4, 6, 8, 12, 24] {
            let f = CyclotomicField::new(n);
            let z = CyclotomicNumber::zeta(&f);
            assert!(z.pow(n as i64).unwrap().is_one(), "n = {n}");
            for d in 1..n {
                if n % d == 0 && d < n {
                    assert!(!z.pow(d as i64).unwrap().is_one(), "n = {n}, d = {d}");
                }
            }
        }
    }

    #[test]
    fn sqrt_two_in_q_zeta24() {
        let f = CyclotomicField::new(24);
        let z3 = CyclotomicNumber::zeta_pow(&f, 3);
        let sqrt2 = &z3 + &z3.inv().unwrap();
        assert_eq!(&sqrt2 * &sqrt2, CyclotomicNumber::from_int(&f, 2));
        let inv = sqrt2.inv().unwrap();
        assert_eq!(&inv * &sqrt2, CyclotomicNumber::one(&f));
        // Hand reduction: 1/√2 = (ζ + ζ^3 - ζ^5)/2.
        let expect = CyclotomicNumber::from_coeffs(
            &f,
            &[q(0, 1), q(1, 2), q(0, 1), q(1, 2), q(0, 1), q(-1, 2)],
        );
        assert_eq!(inv, expect);
    }

    #[test]
    fn mixed_conductors_compare_in_lcm() {
        let f4 = CyclotomicField::new(4);
        let f12 = CyclotomicField::new(12);
        let i4 = CyclotomicNumber::zeta(&f4);
        let i12 = CyclotomicNumber::zeta_pow(&f12, 3);
        assert_eq!(i4, i12);
        let f6 = CyclotomicField::new(6);
        let w = CyclotomicNumber::zeta(&f6);
        let prod = &i4 * &w;
        assert_eq!(prod.conductor(), 12);
        assert_eq!(prod, CyclotomicNumber::zeta_pow(&f12, 5));
    }

    #[test]
    fn json_round_trip() {
        let f = CyclotomicField::new(24);
        let x = CyclotomicNumber::from_coeffs(&f, &[q(1, 3), q(-2, 5)]);
        let j = x.to_json();
        assert_eq!(j.coeffs.len(), 8);
        assert_eq!(j.coeffs[1], "-2/5");
        assert_eq!(CyclotomicNumber::from_json(&j).unwrap(), x);
    }

    fn arb_elem(n: u32) -> impl Strategy<Value = CyclotomicNumber> {
        let f = CyclotomicField::new(n);
        let d = f.degree();
        prop::collection::vec((-20i64..20, 1i64..6), d).prop_map(move |v| {
            let c: Vec<Rational> = v.iter().map(|&(a, b)| q(a, b)).collect();
            CyclotomicNumber::from_coeffs(&f, &c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws_q_zeta12(a in arb_elem(12), b in arb_elem(12), c in arb_elem(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn zeta_power_laws(e1 in -50i64..50, e2 in -50i64..50) {
            let f = CyclotomicField::new(24);
            let lhs = &CyclotomicNumber::zeta_pow(&f, e1) * &CyclotomicNumber::zeta_pow(&f, e2);
            prop_assert_eq!(lhs, CyclotomicNumber::zeta_pow(&f, e1 + e2));
        }
    }
}
