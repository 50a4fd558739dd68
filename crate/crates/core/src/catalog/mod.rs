//! Built-in Weyl groups and the group-specification file format.

mod file;

use std::path::Path;

use thiserror::Error;

use crate::arith::modular::is_prime;
use crate::arith::{ArithError, CycMatrix, CyclotomicField, CyclotomicNumber, Rational};

pub use file::{parse_group_file, parse_group_str, serialize_group_spec, GroupSpecFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown group {0:?}; expected C<m>, S<n>, G7, sign, sullivan or a spec file path")]
    UnknownGroup(String),
    #[error("{0} needs a prime")]
    PrimeRequired(String),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl CatalogError {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogError::UnknownGroup(_) => "UnknownGroup",
            CatalogError::PrimeRequired(_) => "PrimeRequired",
            CatalogError::InvalidParameter(_) => "InvalidParameter",
            CatalogError::ParseError { .. } => "ParseError",
            CatalogError::NonInvertibleGenerator(_) => "NonInvertibleGenerator",
            CatalogError::Io { .. } => "Io",
            CatalogError::Arith(e) => e.name(),
        }
    }
}

/// A group the catalog can construct without a spec file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    /// C_m acting on the line through ζ_m.
    Cyclic(u32),
    /// S_n on the (n−1)-dimensional reflection representation, in the simple-root basis.
    Symmetric(u32),
    /// Shephard–Todd G₇, order 144, in Q(ζ₂₄).
    G7,
    /// C_{p−1} ⊂ Z_p^×, the Weyl group of the Sullivan sphere; depends on p.
    Sullivan,
}

const MAX_SYMMETRIC: u32 = 7;
const MAX_CYCLIC: u32 = 1000;

impl CatalogEntry {
    /// Accepts `C<m>`, `S<n>`, `G7`, `sign` (= S2) and `sullivan`, case-insensitively.
    pub fn parse(name: &str) -> Result<Self, CatalogError> {
        let lower = name.trim().to_ascii_lowercase();
        let unknown = || CatalogError::UnknownGroup(name.to_string());
        match lower.as_str() {
            "g7" => return Ok(CatalogEntry::G7),
            "sullivan" => return Ok(CatalogEntry::Sullivan),
            "sign" => return Ok(CatalogEntry::Symmetric(2)),
            _ => {}
        }
        let (head, tail) = lower.split_at(1.min(lower.len()));
        let n: u32 = tail.parse().map_err(|_| unknown())?;
        match head {
            "c" if (1..=MAX_CYCLIC).contains(&n) => Ok(CatalogEntry::Cyclic(n)),
            "s" if (2..=MAX_SYMMETRIC).contains(&n) => Ok(CatalogEntry::Symmetric(n)),
            "c" | "s" => Err(CatalogError::InvalidParameter(format!("{name}: parameter out of range"))),
            _ => Err(unknown()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            CatalogEntry::Cyclic(m) => format!("C{m}"),
            CatalogEntry::Symmetric(n) => format!("S{n}"),
            CatalogEntry::G7 => "G7".into(),
            CatalogEntry::Sullivan => "sullivan".into(),
        }
    }

    pub fn description(&self) -> String {
        match self {
            CatalogEntry::Cyclic(m) => format!("cyclic group of order {m} in rank 1"),
            CatalogEntry::Symmetric(n) => format!("symmetric group S{n} in rank {}", n - 1),
            CatalogEntry::G7 => "Shephard-Todd G7, order 144, rank 2".into(),
            CatalogEntry::Sullivan => "C_{p-1} in rank 1, Weyl group of the Sullivan sphere".into(),
        }
    }

    /// The prime used when none is given.
    pub fn default_prime(&self) -> u64 {
        match self {
            CatalogEntry::Cyclic(m) => (2..).find(|&p| is_prime(p) && p % u64::from(*m) == 1 % u64::from(*m)).unwrap(),
            CatalogEntry::Symmetric(n) => (5..).find(|&p| is_prime(p) && p > u64::from(*n)).unwrap(),
            CatalogEntry::G7 => 13,
            CatalogEntry::Sullivan => 5,
        }
    }

    /// Closure cap: the expected group order.
    pub fn cap(&self, prime: Option<u64>) -> usize {
        match self {
            CatalogEntry::Cyclic(m) => *m as usize,
            CatalogEntry::Symmetric(n) => (1..=*n as usize).product(),
            CatalogEntry::G7 => 144,
            CatalogEntry::Sullivan => prime.map_or(1, |p| p as usize - 1),
        }
    }

    /// Representative entries for `catalog list`.
    pub fn list() -> Vec<CatalogEntry> {
        vec![
            CatalogEntry::Symmetric(2),
            CatalogEntry::Symmetric(3),
            CatalogEntry::Symmetric(4),
            CatalogEntry::Cyclic(4),
            CatalogEntry::G7,
            CatalogEntry::Sullivan,
        ]
    }

    /// Generator matrices. Only `Sullivan` reads `prime`.
    pub fn generators(&self, prime: Option<u64>) -> Result<Vec<CycMatrix>, CatalogError> {
        match *self {
            CatalogEntry::Cyclic(m) => Ok(vec![cyclic_generator(m)]),
            CatalogEntry::Symmetric(n) => Ok(symmetric_generators(n)),
            CatalogEntry::G7 => Ok(g7_generators()),
            CatalogEntry::Sullivan => {
                let p = prime.ok_or_else(|| CatalogError::PrimeRequired(self.name()))?;
                if !is_prime(p) {
                    return Err(ArithError::NotPrime(p).into());
                }
                if p < 3 {
                    return Err(CatalogError::InvalidParameter("sullivan needs p >= 3".into()));
                }
                Ok(vec![cyclic_generator((p - 1) as u32)])
            }
        }
    }
}

fn cyclic_generator(m: u32) -> CycMatrix {
    let field = CyclotomicField::new(m);
    CycMatrix::diagonal(&field, &[CyclotomicNumber::zeta(&field)])
}

/// s_i fixes e_j for j ≠ i and sends e_i ↦ −e_i + e_{i−1} + e_{i+1}.
fn symmetric_generators(n: u32) -> Vec<CycMatrix> {
    let field = CyclotomicField::new(1);
    let r = n as usize - 1;
    (0..r)
        .map(|i| {
            let mut rows = vec![vec![Rational::from_integer(0.into()); r]; r];
            for (j, row) in rows.iter_mut().enumerate() {
                row[j] = Rational::from_integer(1.into());
            }
            rows[i][i] = Rational::from_integer((-1).into());
            for j in [i.wrapping_sub(1), i + 1] {
                if j < r {
                    rows[j][i] = Rational::from_integer(1.into());
                }
            }
            CycMatrix::from_rational_rows(&field, &rows).expect("square")
        })
        .collect()
}

/// s = diag(−1, 1); t and u use a = ζ₂₄/√2 and b = ζ₂₄⁷/√2.
fn g7_generators() -> Vec<CycMatrix> {
    let field = CyclotomicField::new(24);
    let z = |e: i64| CyclotomicNumber::zeta_pow(&field, e);
    // √2 = ζ₈ + ζ₈⁻¹ = ζ₂₄³ + ζ₂₄²¹.
    let sqrt2 = &z(3) + &z(21);
    let inv = sqrt2.inv().expect("nonzero");
    let a = &z(1) * &inv;
    let b = &z(7) * &inv;
    let int = |n| CyclotomicNumber::from_int(&field, n);
    let s = CycMatrix::from_rows(&field, vec![vec![int(-1), int(0)], vec![int(0), int(1)]]);
    let t = CycMatrix::from_rows(&field, vec![vec![-&a, b.clone()], vec![-&a, -&b]]);
    let u = CycMatrix::from_rows(&field, vec![vec![-&b, -&b], vec![a.clone(), -&a]]);
    [s, t, u].into_iter().map(|m| m.expect("square")).collect()
}

/// A group named on the command line: a catalog entry or a spec file.
#[derive(Clone, Debug)]
pub enum GroupSource {
    Catalog(CatalogEntry),
    File(GroupSpecFile),
}

impl GroupSource {
    /// Catalog names take precedence over paths.
    pub fn resolve(name: &str) -> Result<Self, CatalogError> {
        match CatalogEntry::parse(name) {
            Ok(entry) => Ok(GroupSource::Catalog(entry)),
            Err(_) if Path::new(name).is_file() => Ok(GroupSource::File(parse_group_file(Path::new(name))?)),
            Err(e) => Err(e),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupSource::Catalog(e) => e.name(),
            GroupSource::File(f) => f.name.clone(),
        }
    }

    pub fn default_prime(&self) -> Option<u64> {
        match self {
            GroupSource::Catalog(e) => Some(e.default_prime()),
            GroupSource::File(f) => f.primes.as_ref().and_then(|p| p.first().copied()),
        }
    }

    pub fn generators(&self, prime: Option<u64>) -> Result<Vec<CycMatrix>, CatalogError> {
        match self {
            GroupSource::Catalog(e) => e.generators(prime),
            GroupSource::File(f) => f.matrices(),
        }
    }

    pub fn cap(&self, prime: Option<u64>) -> usize {
        match self {
            GroupSource::Catalog(e) => e.cap(prime),
            GroupSource::File(_) => file::FILE_GROUP_CAP,
        }
    }
}
