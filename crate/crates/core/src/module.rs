//! Finite-dimensional left modules as representations of an algebra table.
//!
//! A module is stored by its vertex dimensions and one global action matrix per basis
//! element of the algebra. Coordinates are grouped by vertex, so `e_v M` is a contiguous
//! coordinate range. Submodules are graded subspaces of the global coordinate space.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraTable, Decision};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, unit_vec, Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Clone)]
pub struct Rep<K> {
    algebra: Arc<AlgebraTable<K>>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    actions: Vec<Matrix<K>>,
}

/// Projective-cover multiplicities and the projectivity verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveDecomposition {
    /// `m_v` = dimension of the vertex-`v` part of the top.
    pub multiplicities: Vec<usize>,
    pub projective: bool,
}

/// Limits for the isomorphism search.
#[derive(Debug, Clone, Copy)]
pub struct IsoBudget {
    /// Maximal number of coefficient vectors enumerated over a finite field.
    pub exhaustive_limit: u64,
    pub random_trials: usize,
    pub seed: u64,
}

impl Default for IsoBudget {
    fn default() -> Self {
        IsoBudget {
            exhaustive_limit: 1 << 16,
            random_trials: 64,
            seed: 0x5eed,
        }
    }
}

/// Basis elements spanning `A e_v`, in the coordinate order used for `P_v`.
fn projective_elements<K: Scalar>(t: &AlgebraTable<K>, v: usize) -> Vec<usize> {
    let mut elems: Vec<usize> = (0..t.dim()).filter(|&i| t.basis()[i].source == v).collect();
    elems.sort_by_key(|&i| (t.basis()[i].target, i));
    elems
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    for &d in dims {
        off.push(acc);
        acc += d;
    }
    off.push(acc);
    off
}

impl<K: Scalar> Rep<K> {
    /// Builds a module from the actions of the radical basis elements (in the order of
    /// [`AlgebraTable::radical_indices`]), checking every structure constant.
    pub fn new(
        algebra: Arc<AlgebraTable<K>>,
        dims: Vec<usize>,
        radical_actions: Vec<Matrix<K>>,
    ) -> Result<Self> {
        let rad = algebra.radical_indices();
        if dims.len() != algebra.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: algebra.vertex_count(),
                found: dims.len(),
            });
        }
        if radical_actions.len() != rad.len() {
            return Err(Error::DimensionMismatch {
                expected: rad.len(),
                found: radical_actions.len(),
            });
        }
        let total: usize = dims.iter().sum();
        let offsets = offsets_of(&dims);
        let mut actions = vec![Matrix::zeros(total, total); algebra.dim()];
        for (v, &e) in algebra.idempotents().iter().enumerate() {
            for c in offsets[v]..offsets[v + 1] {
                actions[e].set(c, c, K::one());
            }
        }
        for (&i, m) in rad.iter().zip(radical_actions) {
            if m.rows() != total || m.cols() != total {
                return Err(Error::DimensionMismatch {
                    expected: total,
                    found: m.rows().max(m.cols()),
                });
            }
            actions[i] = m;
        }
        let rep = Rep {
            algebra,
            dims,
            offsets,
            actions,
        };
        rep.validate()?;
        Ok(rep)
    }

    /// Checks that the actions form an algebra homomorphism `A -> End(M)`.
    pub fn validate(&self) -> Result<()> {
        let t = &self.algebra;
        for i in 0..t.dim() {
            let b = &t.basis()[i];
            let a = &self.actions[i];
            for r in 0..self.dim() {
                for c in 0..self.dim() {
                    if !a.get(r, c).is_zero()
                        && (self.vertex_of(r) != b.target || self.vertex_of(c) != b.source)
                    {
                        return Err(Error::InvalidModule(format!(
                            "action of {} leaves its block",
                            b.label
                        )));
                    }
                }
            }
        }
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                let lhs = self.actions[i].mul(&self.actions[j]);
                let mut rhs = Matrix::zeros(self.dim(), self.dim());
                for (k, c) in t.product(i, j) {
                    rhs = rhs.add(&self.actions[*k].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "actions violate the product {} * {}",
                        t.basis()[i].label,
                        t.basis()[j].label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<AlgebraTable<K>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().expect("offsets are never empty")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Global coordinate range of `e_v M`.
    pub fn range(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn vertex_of(&self, coord: usize) -> usize {
        self.offsets.partition_point(|&o| o <= coord) - 1
    }

    /// Action matrix of basis element `i`.
    pub fn action(&self, i: usize) -> &Matrix<K> {
        &self.actions[i]
    }

    /// `b_i * v`.
    pub fn act(&self, i: usize, v: &[K]) -> Vec<K> {
        self.actions[i].mul_vec(v)
    }

    /// `a * v` for an algebra element `a`.
    pub fn act_element(&self, a: &[K], v: &[K]) -> Vec<K> {
        let mut out = vec![K::zero(); self.dim()];
        for (i, c) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            axpy(&mut out, c, &self.act(i, v));
        }
        out
    }

    fn same_algebra(&self, other: &Rep<K>) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::PreconditionViolated("modules over different algebras".into()))
        }
    }

    pub fn zero(algebra: Arc<AlgebraTable<K>>) -> Self {
        let n = algebra.vertex_count();
        Self::from_global(algebra, vec![0; n], |_| Matrix::zeros(0, 0))
    }

    /// Assembles a module from a closure giving the global action of each basis element.
    fn from_global(
        algebra: Arc<AlgebraTable<K>>,
        dims: Vec<usize>,
        mut action: impl FnMut(usize) -> Matrix<K>,
    ) -> Self {
        let offsets = offsets_of(&dims);
        let actions = (0..algebra.dim()).map(&mut action).collect();
        Rep {
            algebra,
            dims,
            offsets,
            actions,
        }
    }

    /// The simple module `S_v`.
    pub fn simple(algebra: Arc<AlgebraTable<K>>, v: usize) -> Self {
        let n = algebra.vertex_count();
        let mut dims = vec![0; n];
        dims[v] = 1;
        let e = algebra.idempotent(v);
        Self::from_global(algebra, dims, |i| {
            if i == e {
                Matrix::identity(1)
            } else {
                Matrix::zeros(1, 1)
            }
        })
    }

    /// `P_v = A e_v`, with the coordinate of `e_v`.
    ///
    /// Coordinates are the basis elements with source `v`, grouped by target.
    pub fn projective_with_generator(algebra: Arc<AlgebraTable<K>>, v: usize) -> (Self, usize) {
        let elems = projective_elements(&algebra, v);
        let e = algebra.idempotent(v);
        let (rep, coord) = Self::left_ideal_module(algebra, &elems);
        (rep, coord[e].expect("e_v lies in A e_v"))
    }

    pub fn projective(algebra: Arc<AlgebraTable<K>>, v: usize) -> Self {
        Self::projective_with_generator(algebra, v).0
    }

    /// The left regular module; `coord[i]` is the coordinate of basis element `i`.
    pub fn regular(algebra: Arc<AlgebraTable<K>>) -> (Self, Vec<usize>) {
        let t = algebra.clone();
        let mut elems: Vec<usize> = (0..t.dim()).collect();
        elems.sort_by_key(|&i| (t.basis()[i].target, i));
        let (rep, coord) = Self::left_ideal_module(algebra, &elems);
        (rep, coord.into_iter().map(|c| c.expect("every element present")).collect())
    }

    /// The left ideal spanned by the given basis elements, which must be closed under
    /// left multiplication and sorted by target vertex.
    fn left_ideal_module(algebra: Arc<AlgebraTable<K>>, elems: &[usize]) -> (Self, Vec<Option<usize>>) {
        let t = algebra.clone();
        let mut dims = vec![0; t.vertex_count()];
        for &i in elems {
            dims[t.basis()[i].target] += 1;
        }
        let mut coord = vec![None; t.dim()];
        for (c, &i) in elems.iter().enumerate() {
            coord[i] = Some(c);
        }
        let m = elems.len();
        let rep = Self::from_global(algebra, dims, |a| {
            let mut mat = Matrix::zeros(m, m);
            for (c, &j) in elems.iter().enumerate() {
                for (k, s) in t.product(a, j) {
                    let row = coord[*k].expect("left ideal is closed under multiplication");
                    mat.set(row, c, s.clone());
                }
            }
            mat
        });
        (rep, coord)
    }

    pub fn direct_sum(algebra: Arc<AlgebraTable<K>>, ms: &[Rep<K>]) -> Result<Self> {
        for m in ms {
            if !(Arc::ptr_eq(&algebra, &m.algebra) || *algebra == *m.algebra) {
                return Err(Error::PreconditionViolated("modules over different algebras".into()));
            }
        }
        let n = algebra.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| ms.iter().map(|m| m.dims[v]).sum()).collect();
        let offsets = offsets_of(&dims);
        // position of (summand, local coordinate) in the sum
        let mut place: Vec<Vec<usize>> = Vec::new();
        let mut fill = offsets.clone();
        let mut per: Vec<Vec<usize>> = ms.iter().map(|m| vec![0; m.dim()]).collect();
        for v in 0..n {
            for (s, m) in ms.iter().enumerate() {
                for c in m.range(v) {
                    per[s][c] = fill[v];
                    fill[v] += 1;
                }
            }
        }
        place.extend(per);
        let total = offsets[n];
        Ok(Self::from_global(algebra, dims, |a| {
            let mut mat = Matrix::zeros(total, total);
            for (s, m) in ms.iter().enumerate() {
                let act = &m.actions[a];
                for r in 0..m.dim() {
                    for c in 0..m.dim() {
                        let x = act.get(r, c);
                        if !x.is_zero() {
                            mat.set(place[s][r], place[s][c], x.clone());
                        }
                    }
                }
            }
            mat
        }))
    }

    /// Inclusion matrices of the summands of [`Rep::direct_sum`], in the same order.
    pub fn direct_sum_inclusions(ms: &[Rep<K>]) -> Vec<Matrix<K>> {
        let Some(first) = ms.first() else {
            return Vec::new();
        };
        let n = first.dims.len();
        let dims: Vec<usize> = (0..n).map(|v| ms.iter().map(|m| m.dims[v]).sum()).collect();
        let offsets = offsets_of(&dims);
        let total = offsets[n];
        let mut fill = offsets;
        let mut incl: Vec<Matrix<K>> = ms.iter().map(|m| Matrix::zeros(total, m.dim())).collect();
        for v in 0..n {
            for (s, m) in ms.iter().enumerate() {
                for c in m.range(v) {
                    incl[s].set(fill[v], c, K::one());
                    fill[v] += 1;
                }
            }
        }
        incl
    }

    /// Homogeneous components of `v`.
    pub fn components(&self, v: &[K]) -> Vec<Vec<K>> {
        (0..self.dims.len())
            .filter_map(|u| {
                let mut w = vec![K::zero(); self.dim()];
                for c in self.range(u) {
                    w[c] = v[c].clone();
                }
                (!is_zero_vec(&w)).then_some(w)
            })
            .collect()
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated(&self, gens: &[Vec<K>]) -> Subspace<K> {
        let rad = self.algebra.radical_indices();
        let mut s = Subspace::zero(self.dim());
        let mut work: Vec<Vec<K>> = gens.iter().flat_map(|g| self.components(g)).collect();
        while let Some(v) = work.pop() {
            if !s.insert(&v) {
                continue;
            }
            for &i in &rad {
                let w = self.act(i, &v);
                if !is_zero_vec(&w) && !s.contains(&w) {
                    work.push(w);
                }
            }
        }
        s
    }

    /// Submodule generated by `e_v M`.
    pub fn generated_by_vertex(&self, v: usize) -> Subspace<K> {
        let gens: Vec<Vec<K>> = self.range(v).map(|c| unit_vec(self.dim(), c)).collect();
        self.generated(&gens)
    }

    /// Whether a subspace is closed under the action.
    pub fn is_submodule(&self, s: &Subspace<K>) -> bool {
        s.basis().iter().all(|v| {
            self.components(v).iter().all(|c| s.contains(c))
                && self.algebra.radical_indices().iter().all(|&i| s.contains(&self.act(i, v)))
        })
    }

    /// Vertex dimensions of a graded subspace.
    pub fn graded_dims(&self, s: &Subspace<K>) -> Vec<usize> {
        let mut d = vec![0; self.dims.len()];
        for &p in s.pivots() {
            d[self.vertex_of(p)] += 1;
        }
        d
    }

    /// `M / S` together with the projection matrix.
    pub fn quotient(&self, s: &Subspace<K>) -> (Rep<K>, Matrix<K>) {
        let keep = s.non_pivots();
        let mut dims = vec![0; self.dims.len()];
        for &c in &keep {
            dims[self.vertex_of(c)] += 1;
        }
        let project = |v: &[K]| -> Vec<K> {
            let r = s.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let proj = Matrix::from_columns(
            keep.len(),
            &(0..self.dim()).map(|c| project(&unit_vec(self.dim(), c))).collect::<Vec<_>>(),
        );
        let q = keep.len();
        let rep = Self::from_global(self.algebra.clone(), dims, |a| {
            let cols: Vec<Vec<K>> = keep
                .iter()
                .map(|&c| project(&self.act(a, &unit_vec(self.dim(), c))))
                .collect();
            Matrix::from_columns(q, &cols)
        });
        (rep, proj)
    }

    /// The submodule `S` as a module, with its inclusion matrix.
    pub fn restrict(&self, s: &Subspace<K>) -> (Rep<K>, Matrix<K>) {
        let mut dims = vec![0; self.dims.len()];
        for &p in s.pivots() {
            dims[self.vertex_of(p)] += 1;
        }
        let incl = Matrix::from_columns(self.dim(), s.basis());
        let k = s.dim();
        let rep = Self::from_global(self.algebra.clone(), dims, |a| {
            let cols: Vec<Vec<K>> = s
                .basis()
                .iter()
                .map(|v| s.coordinates(&self.act(a, v)).expect("submodule is closed"))
                .collect();
            Matrix::from_columns(k, &cols)
        });
        (rep, incl)
    }

    /// Basis of `Hom_A(self, n)`; each map is an `n.dim() x self.dim()` matrix.
    pub fn hom_space(&self, n: &Rep<K>) -> Result<Vec<Matrix<K>>> {
        self.same_algebra(n)?;
        let nv = self.dims.len();
        // unknown f_v is an n_v x m_v block; var(v, r, c) indexes its entries
        let mut var_off = Vec::with_capacity(nv + 1);
        let mut acc = 0;
        for v in 0..nv {
            var_off.push(acc);
            acc += n.dims[v] * self.dims[v];
        }
        let unknowns = acc;
        if unknowns == 0 {
            return Ok(Vec::new());
        }
        let var = |v: usize, r: usize, c: usize| var_off[v] + r * self.dims[v] + c;
        let t = &self.algebra;
        let mut rows: Vec<Vec<K>> = Vec::new();
        for i in t.generator_indices() {
            let (s, tg) = (t.basis()[i].source, t.basis()[i].target);
            let (ma, na) = (&self.actions[i], &n.actions[i]);
            // f_tg * M_i = N_i * f_s on the (tg, s) block
            for r in 0..n.dims[tg] {
                for c in 0..self.dims[s] {
                    let mut eq = vec![K::zero(); unknowns];
                    for k in 0..self.dims[tg] {
                        let x = ma.get(self.offsets[tg] + k, self.offsets[s] + c);
                        if !x.is_zero() {
                            let idx = var(tg, r, k);
                            eq[idx] = eq[idx].clone() + x.clone();
                        }
                    }
                    for k in 0..n.dims[s] {
                        let x = na.get(n.offsets[tg] + r, n.offsets[s] + k);
                        if !x.is_zero() {
                            let idx = var(s, k, c);
                            eq[idx] = eq[idx].clone() - x.clone();
                        }
                    }
                    if !is_zero_vec(&eq) {
                        rows.push(eq);
                    }
                }
            }
        }
        let ker = Matrix::from_rows(unknowns, rows).kernel();
        Ok(ker
            .basis()
            .iter()
            .map(|x| {
                let mut f = Matrix::zeros(n.dim(), self.dim());
                for v in 0..nv {
                    for r in 0..n.dims[v] {
                        for c in 0..self.dims[v] {
                            f.set(n.offsets[v] + r, self.offsets[v] + c, x[var(v, r, c)].clone());
                        }
                    }
                }
                f
            })
            .collect())
    }

    /// Whether a matrix is a module homomorphism `self -> n`.
    pub fn is_homomorphism(&self, n: &Rep<K>, f: &Matrix<K>) -> bool {
        f.rows() == n.dim()
            && f.cols() == self.dim()
            && (0..self.algebra.dim()).all(|i| f.mul(&self.actions[i]) == n.actions[i].mul(f))
    }

    /// `tr_self(n)`: the sum of the images of all homomorphisms `self -> n`.
    pub fn trace_in(&self, n: &Rep<K>) -> Result<Subspace<K>> {
        let mut s = Subspace::zero(n.dim());
        for f in self.hom_space(n)? {
            for c in 0..f.cols() {
                s.insert(&f.column(c));
            }
        }
        Ok(s)
    }

    /// `rad M`, the sum of the images of the radical basis elements.
    pub fn radical(&self) -> Subspace<K> {
        let mut s = Subspace::zero(self.dim());
        for i in self.algebra.radical_indices() {
            for c in 0..self.dim() {
                s.insert(&self.actions[i].column(c));
            }
        }
        s
    }

    /// Vertex dimensions of `M / rad M`.
    pub fn top_dims(&self) -> Vec<usize> {
        let rd = self.graded_dims(&self.radical());
        self.dims.iter().zip(rd).map(|(a, b)| a - b).collect()
    }

    /// Vertex dimensions of the layers `rad^k M / rad^(k+1) M`.
    pub fn loewy_layers(&self) -> Vec<Vec<usize>> {
        let rad = self.algebra.radical_indices();
        let mut layers = Vec::new();
        let mut cur = Subspace::full(self.dim());
        while !cur.is_zero() {
            let mut next = Subspace::zero(self.dim());
            for v in cur.basis() {
                for &i in &rad {
                    next.insert(&self.act(i, v));
                }
            }
            let a = self.graded_dims(&cur);
            let b = self.graded_dims(&next);
            layers.push(a.iter().zip(&b).map(|(x, y)| x - y).collect());
            cur = next;
        }
        layers
    }

    /// The projective cover `P -> M` built from a basis of a complement of `rad M`.
    pub fn projective_cover(&self) -> (Rep<K>, Matrix<K>) {
        let rad = self.radical();
        let gens: Vec<usize> = rad.non_pivots();
        let mut summands = Vec::new();
        let mut images: Vec<Matrix<K>> = Vec::new();
        for &g in &gens {
            let v = self.vertex_of(g);
            let gv = unit_vec(self.dim(), g);
            let (p, _) = Self::projective_with_generator(self.algebra.clone(), v);
            // P_v coordinates are basis elements b with source v, sorted by (target, index)
            let elems = projective_elements(&self.algebra, v);
            let cols: Vec<Vec<K>> = elems.iter().map(|&b| self.act(b, &gv)).collect();
            images.push(Matrix::from_columns(self.dim(), &cols));
            summands.push(p);
        }
        let cover = Self::direct_sum(self.algebra.clone(), &summands).expect("same algebra");
        let incl = Self::direct_sum_inclusions(&summands);
        let mut map = Matrix::zeros(self.dim(), cover.dim());
        for (img, inc) in images.iter().zip(&incl) {
            map = map.add(&img.mul(&inc.transpose()));
        }
        (cover, map)
    }

    pub fn is_projective(&self) -> ProjectiveDecomposition {
        let top = self.top_dims();
        let pdims = self.algebra.projective_dims();
        let cover: usize = top.iter().zip(&pdims).map(|(m, d)| m * d).sum();
        ProjectiveDecomposition {
            projective: cover == self.dim(),
            multiplicities: top,
        }
    }

    /// Kernel of the projective cover.
    pub fn syzygy(&self) -> Rep<K> {
        let (cover, map) = self.projective_cover();
        let ker = map.kernel();
        cover.restrict(&ker).0
    }

    /// Whether the projective dimension is at most `n`.
    pub fn pd_at_most(&self, n: usize) -> bool {
        let mut m = self.clone();
        for _ in 0..n {
            if m.is_projective().projective {
                return true;
            }
            m = m.syzygy();
        }
        m.is_projective().projective
    }

    pub fn end_dim(&self) -> usize {
        self.hom_space(self).expect("same algebra").len()
    }

    /// Three-valued isomorphism test; `Yes` carries a verified invertible homomorphism.
    pub fn is_isomorphic(&self, n: &Rep<K>, budget: IsoBudget) -> Result<Decision<Matrix<K>>> {
        self.same_algebra(n)?;
        if self.dims != n.dims {
            return Ok(Decision::No(format!(
                "dimension vectors differ: {:?} vs {:?}",
                self.dims, n.dims
            )));
        }
        if self.top_dims() != n.top_dims() {
            return Ok(Decision::No("tops differ".into()));
        }
        if self.loewy_layers() != n.loewy_layers() {
            return Ok(Decision::No("radical layers differ".into()));
        }
        let hom = self.hom_space(n)?;
        let end = self.end_dim();
        if hom.len() != end {
            return Ok(Decision::No(format!(
                "dim Hom(M, N) = {} but dim End(M) = {end}",
                hom.len()
            )));
        }
        if self.dim() == 0 {
            return Ok(Decision::Yes(Matrix::zeros(0, 0)));
        }
        let k = hom.len();
        let combine = |coef: &[K]| -> Matrix<K> {
            let mut f = Matrix::zeros(n.dim(), self.dim());
            for (c, h) in coef.iter().zip(&hom) {
                if !c.is_zero() {
                    f = f.add(&h.scale(c));
                }
            }
            f
        };
        let accept = |f: Matrix<K>| -> Option<Matrix<K>> {
            (f.is_invertible() && self.is_homomorphism(n, &f)).then_some(f)
        };
        for i in 0..k {
            if let Some(f) = accept(hom[i].clone()) {
                return Ok(Decision::Yes(f));
            }
        }
        if let Some(elems) = K::elements() {
            let q = elems.len() as u64;
            let count = u32::try_from(k).ok().and_then(|e| q.checked_pow(e));
            if let Some(total) = count.filter(|&c| c <= budget.exhaustive_limit) {
                let mut digits = vec![0usize; k];
                for _ in 0..total {
                    let coef: Vec<K> = digits.iter().map(|&d| elems[d].clone()).collect();
                    if let Some(f) = accept(combine(&coef)) {
                        return Ok(Decision::Yes(f));
                    }
                    for d in digits.iter_mut() {
                        *d += 1;
                        if *d < elems.len() {
                            break;
                        }
                        *d = 0;
                    }
                }
                return Ok(Decision::No("no invertible map in an exhaustive Hom search".into()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let range = 2 * self.dim().max(4) as i64;
        for _ in 0..budget.random_trials {
            let coef: Vec<K> = (0..k)
                .map(|_| match K::elements() {
                    Some(_) => K::sample(&mut rng),
                    None => K::from_i64(rng.gen_range(-range..=range)),
                })
                .collect();
            if let Some(f) = accept(combine(&coef)) {
                return Ok(Decision::Yes(f));
            }
        }
        Ok(Decision::Undecided(format!(
            "no invertible map among {} random combinations",
            budget.random_trials
        )))
    }
}

impl<K: Scalar> fmt::Debug for Rep<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep over {} with dims {:?}", self.algebra.name(), self.dims)
    }
}

/// The submodule `J = ⊕_{λ≠μ} e_μ A e_λ` of the regular module.
///
/// Only a left ideal when the off-diagonal pattern is directed; `None` otherwise.
pub fn off_diagonal_ideal<K: Scalar>(algebra: &Arc<AlgebraTable<K>>) -> Option<Rep<K>> {
    let (reg, coord) = Rep::regular(algebra.clone());
    let j = Subspace::from_vectors(
        reg.dim(),
        algebra
            .off_diagonal_indices()
            .into_iter()
            .map(|i| unit_vec(reg.dim(), coord[i])),
    );
    reg.is_submodule(&j).then(|| reg.restrict(&j).0)
}
