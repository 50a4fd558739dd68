//! Shared fixtures for the benchmarks.

use pcompact::{close_group, CatalogEntry, CycMatrix, ReflectionGroup};

pub fn generators(entry: CatalogEntry) -> Vec<CycMatrix> {
    entry.generators(Some(entry.default_prime())).expect("catalog generators")
}

pub fn group(entry: CatalogEntry) -> ReflectionGroup {
    let p = entry.default_prime();
    close_group(&generators(entry), entry.cap(Some(p))).expect("finite group")
}
