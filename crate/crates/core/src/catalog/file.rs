use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::arith::{euler_phi, parse_rational, CycMatrix, CyclotomicField, CyclotomicNumber, Rational};

pub(super) const FILE_GROUP_CAP: usize = 100_000;

/// A group given by explicit generator matrices over Q(ζ_conductor).
///
/// Each matrix entry is the coefficient vector of the power basis
/// 1, ζ, …, ζ^{φ(n)−1}, written as `"a/b"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub name: String,
    pub rank: usize,
    pub conductor: u32,
    pub generators: Vec<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
}

impl GroupSpecFile {
    /// Builds a spec from matrices; the canonical form of what they encode.
    pub fn from_matrices(name: &str, matrices: &[CycMatrix], primes: Option<Vec<u64>>) -> Self {
        let first = &matrices[0];
        GroupSpecFile {
            name: name.to_string(),
            rank: first.rank(),
            conductor: first.conductor(),
            generators: matrices.iter().map(CycMatrix::to_coefficient_rows).collect(),
            primes,
        }
    }

    /// Exact generator matrices, each checked to be invertible.
    pub fn matrices(&self) -> Result<Vec<CycMatrix>, CatalogError> {
        let field_error = |location: String, message: String| CatalogError::ParseError { location, message };
        if self.conductor == 0 {
            return Err(field_error("conductor".into(), "must be positive".into()));
        }
        if self.rank == 0 {
            return Err(field_error("rank".into(), "must be positive".into()));
        }
        if self.generators.is_empty() {
            return Err(field_error("generators".into(), "at least one generator is required".into()));
        }
        let field = CyclotomicField::new(self.conductor);
        let phi = euler_phi(self.conductor) as usize;
        let mut out = Vec::with_capacity(self.generators.len());
        for (g, rows) in self.generators.iter().enumerate() {
            if rows.len() != self.rank {
                return Err(field_error(format!("generators[{g}]"), format!("expected {} rows", self.rank)));
            }
            let mut matrix_rows = Vec::with_capacity(self.rank);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != self.rank {
                    return Err(field_error(
                        format!("generators[{g}][{i}]"),
                        format!("expected {} entries", self.rank),
                    ));
                }
                let mut entries = Vec::with_capacity(self.rank);
                for (j, coeffs) in row.iter().enumerate() {
                    let location = format!("generators[{g}][{i}][{j}]");
                    if coeffs.len() != phi {
                        return Err(field_error(location, format!("expected {phi} coefficients, found {}", coeffs.len())));
                    }
                    let qs: Vec<Rational> = coeffs
                        .iter()
                        .map(|c| parse_rational(c))
                        .collect::<Result<_, _>>()
                        .map_err(|e| field_error(location.clone(), e.to_string()))?;
                    entries.push(CyclotomicNumber::from_coeffs(&field, &qs));
                }
                matrix_rows.push(entries);
            }
            let m = CycMatrix::from_rows(&field, matrix_rows)?;
            if m.det().is_zero() {
                return Err(CatalogError::NonInvertibleGenerator(g));
            }
            out.push(m);
        }
        Ok(out)
    }
}

pub fn parse_group_str(text: &str) -> Result<GroupSpecFile, CatalogError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: GroupSpecFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let location = if path == "." {
            format!("line {} column {}", inner.line(), inner.column())
        } else {
            format!("{path} (line {} column {})", inner.line(), inner.column())
        };
        CatalogError::ParseError { location, message: inner.to_string() }
    })?;
    spec.matrices()?;
    Ok(spec)
}

/// Reads and validates a spec file; closure is left to the caller.
pub fn parse_group_file(path: &Path) -> Result<GroupSpecFile, CatalogError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CatalogError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_group_str(&text)
}

/// Canonical text: two-space indented JSON with a trailing newline.
pub fn serialize_group_spec(spec: &GroupSpecFile) -> String {
    let mut s = serde_json::to_string_pretty(spec).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIGN: &str = r#"{"name": "sign", "rank": 1, "conductor": 1, "generators": [[[["-1/1"]]]]}"#;

    #[test]
    fn sign_group_parses() {
        let spec = parse_group_str(SIGN).unwrap();
        let m = spec.matrices().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].rank(), 1);
        assert!(m[0].pow(2).is_identity());
    }

    #[test]
    fn missing_field_is_named() {
        let err = parse_group_str(r#"{"name": "x", "rank": 1, "conductor": 1}"#).unwrap_err();
        assert_eq!(err.name(), "ParseError");
        assert!(err.to_string().contains("generators"), "{err}");
    }

    #[test]
    fn truncated_input_reports_position() {
        let err = parse_group_str(&SIGN[..40]).unwrap_err();
        let CatalogError::ParseError { location, .. } = err else { panic!("{err:?}") };
        assert!(location.contains("line 1"), "{location}");
    }

    #[test]
    fn bad_entry_reports_path() {
        let text = SIGN.replace("-1/1", "one");
        let err = parse_group_str(&text).unwrap_err();
        let CatalogError::ParseError { location, .. } = err else { panic!("{err:?}") };
        assert_eq!(location, "generators[0][0][0]");
        let text = r#"{"name": "x", "rank": 1, "conductor": 1, "generators": [[[["1/1", "0/1"]]]]}"#;
        assert!(parse_group_str(text).unwrap_err().to_string().contains("expected 1 coefficients"));
    }

    #[test]
    fn singular_generator_rejected() {
        let text = SIGN.replace("-1/1", "0/1");
        assert_eq!(parse_group_str(&text).unwrap_err(), CatalogError::NonInvertibleGenerator(0));
    }

    #[test]
    fn unknown_field_rejected() {
        let text = SIGN.replace("\"rank\"", "\"extra\": 1, \"rank\"");
        assert!(parse_group_str(&text).unwrap_err().to_string().contains("extra"));
    }
}
