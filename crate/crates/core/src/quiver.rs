//! Quivers, paths and relation sets: the presentation side of an algebra.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver; arrows are `(name, source, target)` with vertex names.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let mut q = Quiver::default();
        for (i, v) in vertices.iter().enumerate() {
            q.add_vertex(v.as_ref(), &format!("vertices[{i}]"))?;
        }
        for (i, (name, s, t)) in arrows.iter().enumerate() {
            q.add_arrow(name.as_ref(), s.as_ref(), t.as_ref(), &format!("arrows[{i}]"))?;
        }
        Ok(q)
    }

    pub(crate) fn add_vertex(&mut self, name: &str, location: &str) -> Result<usize> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::DuplicateName {
                kind: "vertex",
                name: name.to_string(),
                location: location.to_string(),
            });
        }
        let idx = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), idx);
        Ok(idx)
    }

    pub(crate) fn add_arrow(
        &mut self,
        name: &str,
        source: &str,
        target: &str,
        location: &str,
    ) -> Result<usize> {
        if self.arrow_index.contains_key(name) || self.vertex_index.contains_key(name) {
            return Err(Error::DuplicateName {
                kind: "arrow",
                name: name.to_string(),
                location: location.to_string(),
            });
        }
        let source = self.lookup_vertex(source, location)?;
        let target = self.lookup_vertex(target, location)?;
        let idx = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), idx);
        Ok(idx)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub(crate) fn lookup_vertex(&self, name: &str, location: &str) -> Result<usize> {
        self.vertex(name).ok_or_else(|| Error::UnknownName {
            kind: "vertex",
            name: name.to_string(),
            location: location.to_string(),
        })
    }

    pub(crate) fn lookup_arrow(&self, name: &str, location: &str) -> Result<usize> {
        self.arrow(name).ok_or_else(|| Error::UnknownName {
            kind: "arrow",
            name: name.to_string(),
            location: location.to_string(),
        })
    }

    /// Path from arrow names written in composition order (last applied first).
    pub fn path(&self, names: &[&str]) -> Result<Path> {
        let arrows = names
            .iter()
            .map(|n| self.lookup_arrow(n, "path"))
            .collect::<Result<Vec<_>>>()?;
        Path::from_arrows(self, arrows).ok_or_else(|| Error::NonParallelRelation {
            location: format!("path {}", names.join("*")),
        })
    }

    /// Every path of length exactly `len`, in no particular order.
    pub(crate) fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &layer {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        next.push(Path::arrow(self, ai).compose(p).expect("composable"));
                    }
                }
            }
            layer = next;
        }
        layer
    }

    /// Shortlex comparison on (length, arrow-name sequence); trivial paths by vertex.
    pub fn shortlex(&self, a: &Path, b: &Path) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            if a.is_trivial() {
                return a.source.cmp(&b.source);
            }
            let an = a.arrows.iter().map(|&i| self.arrows[i].name.as_str());
            let bn = b.arrows.iter().map(|&i| self.arrows[i].name.as_str());
            an.cmp(bn)
        })
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&i| self.arrows[i].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path in right-to-left composition order: `arrows[0]` is applied last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path {
            source: vertex,
            target: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let arr = &q.arrows[a];
        Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        }
    }

    /// Checks composability of consecutive arrows; `None` if the word is not a path.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        let (&first, &last) = (arrows.first()?, arrows.last()?);
        for w in arrows.windows(2) {
            if q.arrows[w[1]].target != q.arrows[w[0]].source {
                return None;
            }
        }
        Some(Path {
            source: q.arrows[last].source,
            target: q.arrows[first].target,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// `self * rhs`: first `rhs`, then `self`.
    pub fn compose(&self, rhs: &Path) -> Option<Path> {
        if rhs.target != self.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&rhs.arrows);
        Some(Path {
            source: rhs.source,
            target: self.target,
            arrows,
        })
    }
}

/// A formal linear combination of parallel paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(BigRational, Path)>,
}

impl Relation {
    pub fn source(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.source)
    }

    pub fn target(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.target)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }
}

/// Field, quiver and relations: everything needed to build an algebra table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub notes: Option<String>,
}

impl Presentation {
    pub fn new(name: &str, field: FieldSpec, quiver: Quiver) -> Self {
        Presentation {
            name: name.to_string(),
            field,
            quiver,
            relations: Vec::new(),
            notes: None,
        }
    }

    /// Adds a relation given as `(coefficient, arrow names in composition order)`.
    pub fn relation(mut self, terms: &[(i64, &[&str])]) -> Result<Self> {
        let location = format!("relations[{}]", self.relations.len());
        let mut rel = Relation { terms: Vec::new() };
        for (c, names) in terms {
            let arrows = names
                .iter()
                .map(|n| self.quiver.lookup_arrow(n, &location))
                .collect::<Result<Vec<_>>>()?;
            rel.terms.push((BigRational::from_integer((*c).into()), self.path_or_err(arrows, &location)?));
        }
        check_relation(&rel, &location)?;
        self.relations.push(rel);
        Ok(self)
    }

    pub(crate) fn path_or_err(&self, arrows: Vec<usize>, location: &str) -> Result<Path> {
        if arrows.is_empty() {
            return Err(Error::InadmissibleRelation {
                location: location.to_string(),
                reason: "relation term is a trivial path".to_string(),
            });
        }
        Path::from_arrows(&self.quiver, arrows).ok_or_else(|| Error::NonParallelRelation {
            location: format!("{location}: arrows do not compose"),
        })
    }

    /// Re-targets the presentation at another field.
    pub fn over(&self, field: FieldSpec) -> Self {
        Presentation {
            field,
            ..self.clone()
        }
    }
}

/// Structural checks that do not depend on the field.
pub(crate) fn check_relation(rel: &Relation, location: &str) -> Result<()> {
    let Some((_, first)) = rel.terms.first() else {
        return Err(Error::InadmissibleRelation {
            location: location.to_string(),
            reason: "empty relation".to_string(),
        });
    };
    for (c, p) in &rel.terms {
        if p.source != first.source || p.target != first.target {
            return Err(Error::NonParallelRelation {
                location: location.to_string(),
            });
        }
        if p.is_trivial() {
            return Err(Error::InadmissibleRelation {
                location: location.to_string(),
                reason: "relation term is a trivial path".to_string(),
            });
        }
        if c.is_zero() {
            return Err(Error::InadmissibleRelation {
                location: location.to_string(),
                reason: "zero coefficient".to_string(),
            });
        }
    }
    Ok(())
}
