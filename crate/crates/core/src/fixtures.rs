//! The built-in corpus of example algebras.

use std::sync::Arc;

use crate::algebra::{build_table, AlgebraTable, DEFAULT_LENGTH_CAP};
use crate::error::Result;
use crate::format::parse;
use crate::quiver::Presentation;
use crate::scalar::{FieldSpec, Scalar};

const SOURCES: [(&str, &str); 10] = [
    ("ex1_10", include_str!("../fixtures/ex1_10.json")),
    ("s4_2", include_str!("../fixtures/s4_2.json")),
    ("s4_3", include_str!("../fixtures/s4_3.json")),
    ("s4_4", include_str!("../fixtures/s4_4.json")),
    ("s4_5", include_str!("../fixtures/s4_5.json")),
    ("s4_6", include_str!("../fixtures/s4_6.json")),
    ("hereditary_a2", include_str!("../fixtures/hereditary_a2.json")),
    ("local_dual_numbers", include_str!("../fixtures/local_dual_numbers.json")),
    ("semisimple_2", include_str!("../fixtures/semisimple_2.json")),
    ("zero", include_str!("../fixtures/zero.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

/// JSON text of a fixture.
pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn presentation(name: &str) -> Option<Result<Presentation>> {
    source(name).map(parse)
}

/// Builds a fixture over the field of `K`; fixtures are integral, so every field works.
pub fn table<K: Scalar>(name: &str) -> Result<Arc<AlgebraTable<K>>> {
    let pres = presentation(name)
        .unwrap_or_else(|| panic!("unknown fixture {name}"))?
        .over(K::field());
    Ok(Arc::new(build_table(&pres, DEFAULT_LENGTH_CAP)?))
}

/// Every fixture presentation, over the rationals.
pub fn all() -> Vec<Presentation> {
    names()
        .map(|n| presentation(n).expect("listed").expect("fixtures parse"))
        .filter(|p| p.field == FieldSpec::Rationals)
        .collect()
}
