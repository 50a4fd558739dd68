use std::path::PathBuf;

use pcompact::catalog::{parse_group_file, parse_group_str, serialize_group_spec, CatalogEntry, CatalogError, GroupSource};
use pcompact::reflection::{close_group, molien_degrees};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

#[test]
fn fixtures_round_trip_byte_for_byte() {
    for name in ["g7.json", "sign.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let spec = parse_group_str(&text).unwrap();
        assert_eq!(serialize_group_spec(&spec), text, "{name}");
        let again = parse_group_str(&serialize_group_spec(&spec)).unwrap();
        assert_eq!(again, spec);
    }
}

#[test]
fn g7_fixture_equals_catalog_matrices() {
    let spec = parse_group_file(&fixture("g7.json")).unwrap();
    assert_eq!(spec.matrices().unwrap(), CatalogEntry::G7.generators(None).unwrap());
}

#[test]
fn g7_fixture_and_catalog_close_to_the_same_group() {
    let from_file = close_group(&parse_group_file(&fixture("g7.json")).unwrap().matrices().unwrap(), 1000).unwrap();
    let from_catalog = close_group(&CatalogEntry::G7.generators(None).unwrap(), 1000).unwrap();
    assert_eq!(from_file.order(), 144);
    assert_eq!(from_file.order(), from_catalog.order());
    assert_eq!(molien_degrees(&from_file).unwrap(), molien_degrees(&from_catalog).unwrap());
    assert_eq!(molien_degrees(&from_file).unwrap(), vec![12, 12]);
}

#[test]
fn sign_fixture_is_rank_one() {
    let spec = parse_group_file(&fixture("sign.json")).unwrap();
    assert_eq!((spec.rank, spec.conductor), (1, 1));
    let g = close_group(&spec.matrices().unwrap(), 10).unwrap();
    assert_eq!(g.order(), 2);
    assert_eq!(g.reflections().len(), 1);
}

#[test]
fn truncated_file_names_missing_field() {
    let err = parse_group_file(&fixture("truncated.json")).unwrap_err();
    assert_eq!(err.name(), "ParseError");
    assert!(err.to_string().contains("missing field `generators`"), "{err}");
}

#[test]
fn missing_file_is_io_error() {
    let err = parse_group_file(&fixture("absent.json")).unwrap_err();
    assert!(matches!(err, CatalogError::Io { .. }));
}

#[test]
fn group_source_prefers_catalog_then_file() {
    assert!(matches!(GroupSource::resolve("G7").unwrap(), GroupSource::Catalog(CatalogEntry::G7)));
    let path = fixture("g7.json");
    let source = GroupSource::resolve(path.to_str().unwrap()).unwrap();
    assert_eq!(source.name(), "G7");
    assert_eq!(source.default_prime(), Some(13));
    assert_eq!(GroupSource::resolve("nothing-here").unwrap_err().name(), "UnknownGroup");
}
