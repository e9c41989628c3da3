//! JSON algebra-description files.
//!
//! ```json
//! {
//!   "name": "a2",
//!   "field": {"kind": "rationals"},
//!   "vertices": ["x", "y"],
//!   "arrows": [{"name": "a", "from": "x", "to": "y"}],
//!   "relations": [[["1", ["a", "b"]], ["-1", ["c"]]]]
//! }
//! ```
//!
//! Arrow lists inside a relation term are in composition order: the arrow applied first
//! is written last.

use std::fmt;

use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{check_relation, Presentation, Quiver, Relation};
use crate::scalar::{format_rational, parse_rational, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default)]
    pub name: String,
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<(Coefficient, Vec<String>)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// An exact rational written as a string such as `"-3/4"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficient(pub BigRational);

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Coefficient;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a rational coefficient string such as \"1\" or \"-2/3\"")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Coefficient, E> {
                parse_rational(s)
                    .map(Coefficient)
                    .ok_or_else(|| E::custom(format!("invalid coefficient {s:?}")))
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> std::result::Result<Coefficient, E> {
                Ok(Coefficient(BigRational::from_integer(n.into())))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> std::result::Result<Coefficient, E> {
                Ok(Coefficient(BigRational::from_integer(n.into())))
            }
        }
        d.deserialize_any(V)
    }
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            message: e.to_string(),
            line: e.line(),
            column: e.column(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        self.field.validate()?;
        let mut q = Quiver::default();
        for (i, v) in self.vertices.iter().enumerate() {
            q.add_vertex(v, &format!("vertices[{i}]"))?;
        }
        for (i, a) in self.arrows.iter().enumerate() {
            q.add_arrow(&a.name, &a.from, &a.to, &format!("arrows[{i}]"))?;
        }
        let mut pres = Presentation::new(&self.name, self.field, q);
        pres.notes = self.notes.clone();
        for (ri, terms) in self.relations.iter().enumerate() {
            let location = format!("relations[{ri}]");
            let mut rel = Relation { terms: Vec::new() };
            for (ti, (c, names)) in terms.iter().enumerate() {
                let loc = format!("{location}[{ti}]");
                let arrows = names
                    .iter()
                    .map(|n| pres.quiver.lookup_arrow(n, &loc))
                    .collect::<Result<Vec<_>>>()?;
                rel.terms.push((c.0.clone(), pres.path_or_err(arrows, &loc)?));
            }
            check_relation(&rel, &location)?;
            pres.relations.push(rel);
        }
        Ok(pres)
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        let q = &p.quiver;
        AlgebraFile {
            name: p.name.clone(),
            field: p.field,
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: q.vertices()[a.source].clone(),
                    to: q.vertices()[a.target].clone(),
                })
                .collect(),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| {
                            (
                                Coefficient(c.clone()),
                                path.arrows.iter().map(|&i| q.arrows()[i].name.clone()).collect(),
                            )
                        })
                        .collect()
                })
                .collect(),
            notes: p.notes.clone(),
        }
    }
}

/// Parses an algebra-description document.
pub fn parse(text: &str) -> Result<Presentation> {
    AlgebraFile::from_json(text)?.to_presentation()
}

pub fn serialize(p: &Presentation) -> String {
    AlgebraFile::from_presentation(p).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#"{
        "name": "a2",
        "field": {"kind": "rationals"},
        "vertices": ["x", "y", "z"],
        "arrows": [
            {"name": "a", "from": "x", "to": "y"},
            {"name": "b", "from": "y", "to": "z"},
            {"name": "c", "from": "x", "to": "z"}
        ],
        "relations": [[["1", ["b", "a"]], ["-1/2", ["c", "c"]]]]
    }"#;

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("{\n  \"field\": ,\n}") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_coefficient_is_a_syntax_error() {
        let text = A2.replace("-1/2", "one");
        assert!(matches!(parse(&text), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_arrow_is_reported_with_location() {
        let text = A2.replace(r#"["b", "a"]"#, r#"["q", "a"]"#);
        match parse(&text) {
            Err(Error::UnknownName { name, location, .. }) => {
                assert_eq!(name, "q");
                assert_eq!(location, "relations[0][0]");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_composable_term_is_rejected() {
        // c*c does not compose, and b*a is parallel to c but c*c is not a path
        assert!(matches!(parse(A2), Err(Error::NonParallelRelation { .. })));
    }

    #[test]
    fn round_trip() {
        let text = A2.replace(r#"["-1/2", ["c", "c"]]"#, r#"["-1/2", ["c"]]"#);
        let p = parse(&text).unwrap();
        assert_eq!(parse(&serialize(&p)).unwrap(), p);
        assert_eq!(p.relations.len(), 1);
    }

    #[test]
    fn empty_vertex_list_is_the_zero_algebra() {
        let p = parse(r#"{"field": {"kind": "rationals"}, "vertices": []}"#).unwrap();
        assert!(p.quiver.vertices().is_empty());
    }

    #[test]
    fn composite_characteristic_is_rejected() {
        let r = parse(r#"{"field": {"kind": "prime-field", "characteristic": 4}, "vertices": []}"#);
        assert!(matches!(r, Err(Error::InvalidField(_))));
    }
}
