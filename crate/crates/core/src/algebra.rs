//! Finite-dimensional basic algebras as structure-constant tables.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, unit_vec, Matrix, Subspace};
use crate::quiver::{Path, Presentation};
use crate::scalar::Scalar;

pub const DEFAULT_LENGTH_CAP: usize = 32;

/// Upper bound on the number of paths considered while certifying finite dimension.
const PATH_LIMIT: usize = 20_000;

/// One basis vector of an algebra, homogeneous for the idempotent bigrading.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// Sparse product `b_i * b_j` as `(k, c_ij^k)` pairs.
pub type SparseVec<K> = Vec<(usize, K)>;

/// An algebra given by a homogeneous basis and structure constants.
///
/// The basis always contains the vertex idempotents; every other basis element lies in
/// the radical, so the radical is the span of the non-idempotent basis vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraTable<K> {
    name: String,
    vertices: Vec<String>,
    basis: Vec<BasisElement>,
    idempotents: Vec<usize>,
    products: Vec<Vec<SparseVec<K>>>,
    loewy_length: usize,
}

/// Outcome of the directedness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Directedness {
    /// Vertices listed maximal first: a nonzero block `e_mu A e_lambda` forces `mu` before `lambda`.
    Directed { order: Vec<usize> },
    /// `cycle[i] -> cycle[i+1]` (and last to first) all carry nonzero blocks.
    Cycle { cycle: Vec<usize> },
}

impl Directedness {
    pub fn is_directed(&self) -> bool {
        matches!(self, Directedness::Directed { .. })
    }
}

/// Three-valued answer for questions that are only decidable in one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision<W> {
    Yes(W),
    No(String),
    Undecided(String),
}

impl<W> Decision<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No(_))
    }
}

impl<K: Scalar> AlgebraTable<K> {
    /// Builds and validates a table from explicit structure constants.
    ///
    /// `products[i][j]` is `b_i * b_j`. Checks the idempotent axioms, the bigrading and
    /// associativity.
    pub fn from_structure(
        name: &str,
        vertices: Vec<String>,
        basis: Vec<BasisElement>,
        idempotents: Vec<usize>,
        products: Vec<Vec<SparseVec<K>>>,
    ) -> Result<Self> {
        let t = Self::assemble(name, vertices, basis, idempotents, products)?;
        t.validate()?;
        Ok(t)
    }

    fn assemble(
        name: &str,
        vertices: Vec<String>,
        basis: Vec<BasisElement>,
        idempotents: Vec<usize>,
        products: Vec<Vec<SparseVec<K>>>,
    ) -> Result<Self> {
        let d = basis.len();
        if idempotents.len() != vertices.len() || products.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: products.len(),
            });
        }
        let products = products
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.into_iter().filter(|(_, c)| !c.is_zero()).collect())
                    .collect()
            })
            .collect();
        let mut t = AlgebraTable {
            name: name.to_string(),
            vertices,
            basis,
            idempotents,
            products,
            loewy_length: 0,
        };
        t.loewy_length = t.compute_loewy_length()?;
        Ok(t)
    }

    /// Checks idempotents, bigrading and associativity on every basis triple.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        for (v, &e) in self.idempotents.iter().enumerate() {
            let b = &self.basis[e];
            if b.source != v || b.target != v {
                return Err(Error::PropertyViolation(format!(
                    "idempotent of vertex {} is not in its diagonal block",
                    self.vertices[v]
                )));
            }
        }
        for i in 0..d {
            if self.products[i].len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: self.products[i].len(),
                });
            }
            for (v, &e) in self.idempotents.iter().enumerate() {
                let bi = &self.basis[i];
                let left = self.basis_product(e, i);
                let right = self.basis_product(i, e);
                let want_left = if bi.target == v { unit_vec(d, i) } else { vec![K::zero(); d] };
                let want_right = if bi.source == v { unit_vec(d, i) } else { vec![K::zero(); d] };
                if left != want_left || right != want_right {
                    return Err(Error::PropertyViolation(format!(
                        "idempotent e_{} acts wrongly on {}",
                        self.vertices[v], bi.label
                    )));
                }
            }
            for j in 0..d {
                let (bi, bj) = (&self.basis[i], &self.basis[j]);
                for (k, _) in &self.products[i][j] {
                    let bk = &self.basis[*k];
                    if bi.source != bj.target || bk.source != bj.source || bk.target != bi.target {
                        return Err(Error::PropertyViolation(format!(
                            "product {} * {} breaks the bigrading",
                            bi.label, bj.label
                        )));
                    }
                }
            }
        }
        if let Some((i, j, k)) = self.associativity_failure() {
            return Err(Error::PropertyViolation(format!(
                "multiplication not associative on ({}, {}, {})",
                self.basis[i].label, self.basis[j].label, self.basis[k].label
            )));
        }
        Ok(())
    }

    /// First basis triple with `(b_i b_j) b_k != b_i (b_j b_k)`, if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let jk = self.basis_product(j, k);
                    let lhs = self.multiply(&ij, &unit_vec(d, k));
                    let rhs = self.multiply(&unit_vec(d, i), &jk);
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis index of `e_v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent_index(&self, i: usize) -> bool {
        self.idempotents.contains(&i)
    }

    /// Indices of the non-idempotent basis elements, which span the radical.
    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.is_idempotent_index(i)).collect()
    }

    /// Radical basis elements whose classes span `rad/rad^2`; together with the
    /// idempotents they generate the algebra.
    pub fn generator_indices(&self) -> Vec<usize> {
        let d = self.dim();
        let mut s = self.radical_power(2);
        self.radical_indices()
            .into_iter()
            .filter(|&i| s.insert(&unit_vec(d, i)))
            .collect()
    }

    /// Least `N` with `rad^N = 0`.
    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, K)] {
        &self.products[i][j]
    }

    /// Dense form of `b_i * b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<K> {
        let mut v = vec![K::zero(); self.dim()];
        for (k, c) in &self.products[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn multiply(&self, a: &[K], b: &[K]) -> Vec<K> {
        let d = self.dim();
        let mut out = vec![K::zero(); d];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let c = ai.clone() * bj.clone();
                for (k, s) in &self.products[i][j] {
                    out[*k] = out[*k].clone() + c.clone() * s.clone();
                }
            }
        }
        out
    }

    /// Matrix of `x -> b_i * x` on the whole algebra.
    pub fn left_action(&self, i: usize) -> Matrix<K> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for (k, c) in &self.products[i][j] {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    /// Basis indices spanning `e_mu A e_lambda`.
    pub fn block(&self, mu: usize, lambda: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].target == mu && self.basis[i].source == lambda)
            .collect()
    }

    /// `c[mu][lambda] = dim e_mu A e_lambda`.
    pub fn block_dims(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut c = vec![vec![0; n]; n];
        for b in &self.basis {
            c[b.target][b.source] += 1;
        }
        c
    }

    /// `dim A e_lambda` for every vertex.
    pub fn projective_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.vertex_count()];
        for b in &self.basis {
            dims[b.source] += 1;
        }
        dims
    }

    /// `dim e_lambda A` for every vertex.
    pub fn right_projective_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.vertex_count()];
        for b in &self.basis {
            dims[b.target] += 1;
        }
        dims
    }

    pub fn radical(&self) -> Subspace<K> {
        let d = self.dim();
        Subspace::from_vectors(d, self.radical_indices().into_iter().map(|i| unit_vec(d, i)))
    }

    /// Span of all products `u * v` with `u` in `a`, `v` in `b`.
    pub fn product_space(&self, a: &Subspace<K>, b: &Subspace<K>) -> Subspace<K> {
        let mut s = Subspace::zero(self.dim());
        for u in a.basis() {
            for v in b.basis() {
                s.insert(&self.multiply(u, v));
            }
        }
        s
    }

    /// `rad^k`, with `rad^0 = A`.
    pub fn radical_power(&self, k: usize) -> Subspace<K> {
        if k == 0 {
            return Subspace::full(self.dim());
        }
        let rad = self.radical();
        let mut p = rad.clone();
        for _ in 1..k {
            if p.is_zero() {
                break;
            }
            p = self.product_space(&rad, &p);
        }
        p
    }

    fn compute_loewy_length(&self) -> Result<usize> {
        if self.dim() == 0 {
            return Ok(0);
        }
        let rad = self.radical();
        let mut p = rad.clone();
        let mut n = 1;
        while !p.is_zero() {
            if n > self.dim() {
                return Err(Error::PropertyViolation(
                    "the span of the non-idempotent basis elements is not nilpotent".into(),
                ));
            }
            p = self.product_space(&rad, &p);
            n += 1;
        }
        Ok(n)
    }

    /// `dim e_mu S e_lambda` for a subspace spanned by homogeneous vectors.
    pub fn block_dim_of(&self, s: &Subspace<K>, mu: usize, lambda: usize) -> usize {
        let idx = self.block(mu, lambda);
        let rows = s
            .basis()
            .iter()
            .map(|v| idx.iter().map(|&i| v[i].clone()).collect::<Vec<_>>());
        Matrix::from_rows(idx.len(), rows).rank()
    }

    /// Arrow counts of the ordinary quiver: `q[mu][lambda] = dim e_mu (rad/rad^2) e_lambda`.
    pub fn ordinary_quiver(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let rad = self.radical();
        let rad2 = self.radical_power(2);
        let mut q = vec![vec![0; n]; n];
        for mu in 0..n {
            for lambda in 0..n {
                q[mu][lambda] =
                    self.block_dim_of(&rad, mu, lambda) - self.block_dim_of(&rad2, mu, lambda);
            }
        }
        q
    }

    /// The opposite algebra: same basis, sources and targets swapped, `c'_ij = c_ji`.
    pub fn opposite(&self) -> Self {
        let d = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                label: b.label.clone(),
                source: b.target,
                target: b.source,
            })
            .collect();
        let products = (0..d)
            .map(|i| (0..d).map(|j| self.products[j][i].clone()).collect())
            .collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        AlgebraTable {
            name,
            vertices: self.vertices.clone(),
            basis,
            idempotents: self.idempotents.clone(),
            products,
            loewy_length: self.loewy_length,
        }
    }

    /// The two-sided ideal `A e_lambda A`.
    pub fn idempotent_ideal(&self, lambda: usize) -> Subspace<K> {
        let d = self.dim();
        let mut s = Subspace::zero(d);
        for i in (0..d).filter(|&i| self.basis[i].source == lambda) {
            for j in (0..d).filter(|&j| self.basis[j].target == lambda) {
                s.insert(&self.basis_product(i, j));
            }
        }
        s
    }

    /// `A / A e_lambda A` on the remaining vertices, with the projection matrix
    /// (rows: quotient basis, columns: old basis).
    ///
    /// The quotient basis is a subset of the old basis, preferring lower indices.
    pub fn quotient_by_idempotent(&self, lambda: usize) -> (Self, Matrix<K>) {
        let d = self.dim();
        let ideal = self.idempotent_ideal(lambda);
        // reversed coordinates: pivots land on the highest old indices
        let rev = |v: &[K]| v.iter().rev().cloned().collect::<Vec<_>>();
        let rideal = Subspace::from_vectors(d, ideal.basis().iter().map(|v| rev(v)));
        let keep: Vec<usize> = {
            let mut k: Vec<usize> = rideal.non_pivots().into_iter().map(|c| d - 1 - c).collect();
            k.sort_unstable();
            k
        };
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let project = |v: &[K]| -> Vec<K> {
            let r = rev(&rideal.reduce(&rev(v)));
            keep.iter().map(|&o| r[o].clone()).collect()
        };
        let proj = Matrix::from_columns(keep.len(), &(0..d).map(|j| project(&unit_vec(d, j))).collect::<Vec<_>>());
        let vmap: Vec<Option<usize>> = (0..self.vertex_count())
            .scan(0, |next, v| {
                Some(if v == lambda {
                    None
                } else {
                    *next += 1;
                    Some(*next - 1)
                })
            })
            .collect();
        let basis = keep
            .iter()
            .map(|&o| {
                let b = &self.basis[o];
                BasisElement {
                    label: b.label.clone(),
                    source: vmap[b.source].expect("kept element avoids the killed vertex"),
                    target: vmap[b.target].expect("kept element avoids the killed vertex"),
                }
            })
            .collect();
        let products = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| {
                        let p = project(&self.basis_product(i, j));
                        p.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        let vertices = (0..self.vertex_count())
            .filter(|&v| v != lambda)
            .map(|v| self.vertices[v].clone())
            .collect();
        let idempotents = (0..self.vertex_count())
            .filter(|&v| v != lambda)
            .map(|v| pos[&self.idempotents[v]])
            .collect();
        let name = format!("{}/{}", self.name, self.vertices[lambda]);
        let t = Self::assemble(&name, vertices, basis, idempotents, products)
            .expect("quotient of a valid table is valid");
        (t, proj)
    }

    /// Edge `lambda -> mu` iff `lambda != mu` and `e_mu A e_lambda != 0`.
    pub fn hom_digraph(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let c = self.block_dims();
        (0..n)
            .map(|l| (0..n).map(|m| l != m && c[m][l] > 0).collect())
            .collect()
    }

    pub fn directedness(&self) -> Directedness {
        let n = self.vertex_count();
        let edge = self.hom_digraph();
        // peel off sinks, smallest index first; the result lists maximal vertices first
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n).find(|&v| {
                !placed[v] && (0..n).all(|w| placed[w] || !edge[v][w])
            });
            match next {
                Some(v) => {
                    placed[v] = true;
                    order.push(v);
                }
                None => break,
            }
        }
        if order.len() == n {
            return Directedness::Directed { order };
        }
        Directedness::Cycle {
            cycle: find_cycle(&edge).expect("a digraph without a topological order has a cycle"),
        }
    }

    /// True iff every off-diagonal block vanishes.
    pub fn is_local_direct_sum(&self) -> bool {
        self.basis.iter().all(|b| b.source == b.target)
    }

    /// Whether `e_mu A e_lambda` is free as a left `e_mu A e_mu`-module.
    ///
    /// The block algebra is local with residue field the ground field, so freeness is
    /// `dim X = dim B * dim(X / rad(B) X)`.
    pub fn block_left_free(&self, mu: usize, lambda: usize) -> bool {
        let x = self.block(mu, lambda);
        let b = self.block(mu, mu);
        let rad_b: Vec<usize> = b.iter().copied().filter(|&i| !self.is_idempotent_index(i)).collect();
        let d = self.dim();
        let mut radx = Subspace::zero(d);
        for &r in &rad_b {
            for &m in &x {
                radx.insert(&self.basis_product(r, m));
            }
        }
        x.len() == b.len() * (x.len() - radx.dim())
    }

    /// Whether `e_mu A e_lambda` is free as a right `e_lambda A e_lambda`-module.
    pub fn block_right_free(&self, mu: usize, lambda: usize) -> bool {
        self.opposite().block_left_free(lambda, mu)
    }

    /// Indices of the off-diagonal basis elements, which span `J`.
    pub fn off_diagonal_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].source != self.basis[i].target)
            .collect()
    }

    pub fn center_dim(&self) -> usize {
        let d = self.dim();
        // unknown z = sum z_k b_k; rows indexed by (i, output coordinate)
        let mut rows = Vec::new();
        for i in 0..d {
            let mut block = vec![vec![K::zero(); d]; d];
            for k in 0..d {
                for (o, c) in &self.products[k][i] {
                    block[*o][k] = block[*o][k].clone() + c.clone();
                }
                for (o, c) in &self.products[i][k] {
                    block[*o][k] = block[*o][k].clone() - c.clone();
                }
            }
            rows.extend(block.into_iter().filter(|r| !is_zero_vec(r)));
        }
        Matrix::from_rows(d, rows).kernel().dim()
    }

    /// Dimension of the span of all commutators `b_i b_j - b_j b_i`.
    pub fn commutator_dim(&self) -> usize {
        let d = self.dim();
        let mut s = Subspace::zero(d);
        for i in 0..d {
            for j in i + 1..d {
                let mut v = self.basis_product(i, j);
                axpy(&mut v, &(-K::one()), &self.basis_product(j, i));
                s.insert(&v);
            }
        }
        s.dim()
    }

    /// Isomorphism-invariant fingerprint used to separate algebras.
    pub fn invariants(&self) -> Vec<(String, String)> {
        let mut blocks: Vec<usize> = self.block_dims().into_iter().flatten().collect();
        blocks.sort_unstable();
        let mut proj = self.projective_dims();
        proj.sort_unstable();
        let rad_dims: Vec<usize> = (0..=self.loewy_length).map(|k| self.radical_power(k).dim()).collect();
        vec![
            ("dim".into(), self.dim().to_string()),
            ("vertices".into(), self.vertex_count().to_string()),
            ("sorted block dims".into(), format!("{blocks:?}")),
            ("sorted projective dims".into(), format!("{proj:?}")),
            ("radical power dims".into(), format!("{rad_dims:?}")),
            ("center dim".into(), self.center_dim().to_string()),
            ("commutator dim".into(), self.commutator_dim().to_string()),
        ]
    }

    /// Whether the two tables agree verbatim up to basis labels.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.idempotents == other.idempotents
            && self.dim() == other.dim()
            && self
                .basis
                .iter()
                .zip(&other.basis)
                .all(|(a, b)| a.source == b.source && a.target == b.target)
            && self.products == other.products
    }
}

/// Decides isomorphism of two algebras where cheap certificates exist.
///
/// `No` comes with the first differing invariant; `Yes` only when the tables coincide.
pub fn algebras_isomorphic<K: Scalar>(a: &AlgebraTable<K>, b: &AlgebraTable<K>) -> Decision<()> {
    if a.same_structure(b) {
        return Decision::Yes(());
    }
    for ((name, x), (_, y)) in a.invariants().into_iter().zip(b.invariants()) {
        if x != y {
            return Decision::No(format!("{name} differs: {x} vs {y}"));
        }
    }
    Decision::Undecided("all computed invariants agree".into())
}

fn find_cycle(edge: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = edge.len();
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(
        v: usize,
        edge: &[Vec<bool>],
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for w in 0..edge.len() {
            if !edge[v][w] {
                continue;
            }
            if state[w] == 1 {
                let start = stack.iter().position(|&u| u == w).expect("on stack");
                return Some(stack[start..].to_vec());
            }
            if state[w] == 0 {
                if let Some(c) = dfs(w, edge, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    for v in 0..n {
        if state[v] == 0 {
            if let Some(c) = dfs(v, edge, &mut state, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}

impl<K: Scalar> fmt::Debug for AlgebraTable<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AlgebraTable {} over {} (dim {})", self.name, K::field(), self.dim())?;
        for (i, b) in self.basis.iter().enumerate() {
            writeln!(
                f,
                "  {i}: {} ({} -> {})",
                b.label, self.vertices[b.source], self.vertices[b.target]
            )?;
        }
        Ok(())
    }
}

/// Builds the table of `kQ/I` from a presentation.
///
/// Finds a length `N` such that every path of length `N` is a consequence of the
/// relations, then reduces modulo the truncated relation ideal. Basis elements are the
/// shortlex-least paths outside the relation span.
pub fn build_table<K: Scalar>(pres: &Presentation, length_cap: usize) -> Result<AlgebraTable<K>> {
    if length_cap < 2 {
        return Err(Error::PreconditionViolated("length cap must be at least 2".into()));
    }
    if K::field() != pres.field {
        return Err(Error::InvalidField(format!(
            "presentation is over {}, table requested over {}",
            pres.field,
            K::field()
        )));
    }
    let q = &pres.quiver;
    let relations = pres
        .relations
        .iter()
        .enumerate()
        .map(|(ri, r)| {
            crate::quiver::check_relation(r, &format!("relations[{ri}]"))?;
            r.terms
                .iter()
                .map(|(c, p)| {
                    K::from_rational(c)
                        .map(|k| (k, p.clone()))
                        .ok_or_else(|| {
                            Error::InvalidField(format!(
                                "coefficient {} in relations[{ri}] is undefined over {}",
                                crate::scalar::format_rational(c),
                                K::field()
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut by_len: Vec<Vec<Path>> = vec![q.paths_of_length(0)];
    let mut n_cert = None;
    for l in 1..=length_cap {
        let next = q.paths_of_length(l);
        by_len.push(next);
        let total: usize = by_len.iter().map(Vec::len).sum();
        if total > PATH_LIMIT {
            return Err(Error::CapExceeded { cap: length_cap });
        }
        let all: Vec<&Path> = by_len.iter().flatten().collect();
        let index: HashMap<&Path, usize> = all.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let span = relation_span(&relations, &by_len, &index, all.len(), |a, b, r| a + b + r.1 <= l);
        let found = (1..=l).find(|&n| {
            by_len[n]
                .iter()
                .all(|p| span.contains(&unit_vec(all.len(), index[p])))
        });
        if let Some(n) = found {
            n_cert = Some(n);
            break;
        }
    }
    let Some(n) = n_cert else {
        return Err(Error::CapExceeded { cap: length_cap });
    };

    // paths of length < n in shortlex order; columns are reversed so pivots are the
    // shortlex-largest paths
    let mut paths: Vec<Path> = by_len[..n].iter().flatten().cloned().collect();
    paths.sort_by(|a, b| q.shortlex(a, b));
    let m = paths.len();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let rev_index: HashMap<&Path, usize> = index.iter().map(|(p, &i)| (*p, m - 1 - i)).collect();
    let short: Vec<Vec<Path>> = by_len[..n].to_vec();
    let ideal = relation_span(&relations, &short, &rev_index, m, |a, b, r| a + b + r.0 < n);
    let basis_cols: Vec<usize> = {
        let mut cols: Vec<usize> = ideal.non_pivots().into_iter().map(|c| m - 1 - c).collect();
        cols.sort_unstable();
        cols
    };
    let basis_pos: HashMap<usize, usize> =
        basis_cols.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let normal_form = |p: &Path| -> SparseVec<K> {
        if p.len() >= n {
            return Vec::new();
        }
        let r = ideal.reduce(&unit_vec(m, rev_index[p]));
        r.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(c, v)| (basis_pos[&(m - 1 - c)], v))
            .collect()
    };
    let basis_paths: Vec<&Path> = basis_cols.iter().map(|&i| &paths[i]).collect();
    let products = basis_paths
        .iter()
        .map(|bi| {
            basis_paths
                .iter()
                .map(|bj| match bi.compose(bj) {
                    Some(w) => normal_form(&w),
                    None => Vec::new(),
                })
                .collect()
        })
        .collect();
    let basis = basis_paths
        .iter()
        .map(|p| BasisElement {
            label: q.path_label(p),
            source: p.source,
            target: p.target,
        })
        .collect();
    let idempotents = (0..q.vertices().len())
        .map(|v| basis_pos[&index[&Path::trivial(v)]])
        .collect();
    AlgebraTable::assemble(&pres.name, q.vertices().to_vec(), basis, idempotents, products)
}

/// Span of `p * r * q` over relations `r` and paths `p`, `q` whose lengths pass `keep`,
/// truncated to the indexed paths. `keep(len q, len p, (min len r, max len r))`.
fn relation_span<K: Scalar>(
    relations: &[Vec<(K, Path)>],
    by_len: &[Vec<Path>],
    index: &HashMap<&Path, usize>,
    ambient: usize,
    keep: impl Fn(usize, usize, (usize, usize)) -> bool,
) -> Subspace<K> {
    let mut span = Subspace::zero(ambient);
    let max_len = by_len.len().saturating_sub(1);
    for rel in relations {
        let (s, t) = (rel[0].1.source, rel[0].1.target);
        let lens = (
            rel.iter().map(|(_, p)| p.len()).min().unwrap_or(0),
            rel.iter().map(|(_, p)| p.len()).max().unwrap_or(0),
        );
        for a in 0..=max_len {
            for qp in by_len[a].iter().filter(|p| p.target == s) {
                for b in 0..=max_len - a.min(max_len) {
                    if !keep(a, b, lens) {
                        continue;
                    }
                    for pp in by_len[b].iter().filter(|p| p.source == t) {
                        let mut v = vec![K::zero(); ambient];
                        for (c, term) in rel {
                            let w = pp.compose(term).and_then(|x| x.compose(qp)).expect("composable");
                            if let Some(&i) = index.get(&w) {
                                v[i] = v[i].clone() + c.clone();
                            }
                        }
                        span.insert(&v);
                    }
                }
            }
        }
    }
    span
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::scalar::{FieldSpec, F2, Q};

    fn ex1_10() -> Presentation {
        let q = Quiver::new(
            &["x", "y", "z"],
            &[
                ("delta", "x", "x"),
                ("beta", "x", "y"),
                ("alpha", "x", "z"),
                ("gamma", "y", "z"),
            ],
        )
        .unwrap();
        Presentation::new("ex1_10", FieldSpec::Rationals, q)
            .relation(&[(1, &["delta", "delta"])])
            .unwrap()
            .relation(&[(1, &["beta", "delta"])])
            .unwrap()
            .relation(&[(1, &["alpha", "delta"]), (-1, &["gamma", "beta"])])
            .unwrap()
    }

    #[test]
    fn example_dimensions() {
        let t: AlgebraTable<Q> = build_table(&ex1_10(), DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(t.dim(), 8);
        assert_eq!(t.projective_dims(), vec![5, 2, 1]);
        assert_eq!(t.right_projective_dims(), vec![2, 2, 4]);
        assert_eq!(t.radical().dim(), 5);
        assert!(t.associativity_failure().is_none());
        t.validate().unwrap();
    }

    #[test]
    fn alpha_delta_equals_gamma_beta() {
        let t: AlgebraTable<Q> = build_table(&ex1_10(), DEFAULT_LENGTH_CAP).unwrap();
        let idx = |l: &str| t.basis().iter().position(|b| b.label == l);
        // shortlex keeps alpha*delta; gamma*beta reduces onto it
        assert!(idx("gamma*beta").is_none());
        let (a, d) = (idx("alpha").unwrap(), idx("delta").unwrap());
        let gb = idx("alpha*delta").unwrap();
        assert_eq!(t.basis_product(a, d), unit_vec(8, gb));
        let (g, b) = (idx("gamma").unwrap(), idx("beta").unwrap());
        assert_eq!(t.basis_product(g, b), unit_vec(8, gb));
    }

    #[test]
    fn single_vertex_and_zero_algebra() {
        let q = Quiver::new(&["x"], &[]).unwrap();
        let t: AlgebraTable<Q> =
            build_table(&Presentation::new("k", FieldSpec::Rationals, q), DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.basis()[0].label, "e_x");
        assert_eq!(t.loewy_length(), 1);
        let z: AlgebraTable<Q> = build_table(
            &Presentation::new("0", FieldSpec::Rationals, Quiver::default()),
            DEFAULT_LENGTH_CAP,
        )
        .unwrap();
        assert_eq!(z.dim(), 0);
        assert!(z.directedness().is_directed());
    }

    #[test]
    fn free_loop_exceeds_cap() {
        let q = Quiver::new(&["x"], &[("d", "x", "x")]).unwrap();
        let r: Result<AlgebraTable<Q>> =
            build_table(&Presentation::new("k[d]", FieldSpec::Rationals, q), 8);
        assert_eq!(r.unwrap_err(), Error::CapExceeded { cap: 8 });
    }

    #[test]
    fn idempotents_and_orthogonality() {
        let t: AlgebraTable<Q> = build_table(&ex1_10(), DEFAULT_LENGTH_CAP).unwrap();
        let (ex, ey) = (t.idempotent(0), t.idempotent(1));
        assert_eq!(t.basis_product(ex, ex), unit_vec(8, ex));
        assert!(is_zero_vec(&t.basis_product(ex, ey)));
    }

    #[test]
    fn opposite_is_an_involution() {
        let t: AlgebraTable<Q> = build_table(&ex1_10(), DEFAULT_LENGTH_CAP).unwrap();
        let oo = t.opposite().opposite();
        assert_eq!(oo, t);
        t.opposite().validate().unwrap();
    }

    #[test]
    fn directedness_of_example() {
        let t: AlgebraTable<Q> = build_table(&ex1_10(), DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(t.directedness(), Directedness::Directed { order: vec![2, 1, 0] });
        assert!(!t.is_local_direct_sum());
        match t.opposite().directedness() {
            Directedness::Directed { order } => assert_eq!(order, vec![0, 1, 2]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quotient_kills_the_idempotent_ideal() {
        let t: AlgebraTable<Q> = build_table(&ex1_10(), DEFAULT_LENGTH_CAP).unwrap();
        let (qt, proj) = t.quotient_by_idempotent(2);
        assert_eq!(qt.dim(), t.dim() - t.idempotent_ideal(2).dim());
        assert_eq!(proj.rows(), qt.dim());
        qt.validate().unwrap();
        let (all, _) = t.quotient_by_idempotent(0);
        // e_x generates everything except e_y, e_z and gamma
        assert_eq!(all.dim(), 3);
    }

    #[test]
    fn works_over_f2() {
        let t: AlgebraTable<F2> = build_table(&ex1_10().over(FieldSpec::PrimeField { characteristic: 2 }), 32).unwrap();
        assert_eq!(t.dim(), 8);
        t.validate().unwrap();
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let r: Result<AlgebraTable<F2>> = build_table(&ex1_10(), 32);
        assert!(matches!(r, Err(Error::InvalidField(_))));
    }

    #[test]
    fn center_of_dual_numbers() {
        let q = Quiver::new(&["x"], &[("d", "x", "x")]).unwrap();
        let pres = Presentation::new("k[d]/d^2", FieldSpec::Rationals, q)
            .relation(&[(1, &["d", "d"])])
            .unwrap();
        let t: AlgebraTable<Q> = build_table(&pres, 32).unwrap();
        assert_eq!(t.center_dim(), 2);
        assert_eq!(t.commutator_dim(), 0);
        assert!(t.is_local_direct_sum());
    }
}
