//! The associated graded algebra of a directed algebra with respect to the ideal `J`
//! spanned by the off-diagonal blocks, tensor-algebra tests and the quiver of bimodules.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{algebras_isomorphic, AlgebraTable, BasisElement, Decision, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, unit_vec, Matrix, Subspace};
use crate::module::{off_diagonal_ideal, Rep};
use crate::orders::{all_orders_scan, theorem01_check};
use crate::scalar::Scalar;

const LIFT_SEED: u64 = 0x9e37_79b9;

/// `Ǎ = ⊕ J^i / J^{i+1}` with chosen lifts of its basis into `A`.
#[derive(Clone)]
pub struct GradedAlgebra<K> {
    /// `Ǎ` as an ungraded algebra.
    pub table: Arc<AlgebraTable<K>>,
    /// Degree of every basis element of `table`.
    pub degrees: Vec<usize>,
    /// Representative in `A` of every basis element of `table`.
    pub lifts: Vec<Vec<K>>,
}

impl<K: Scalar> GradedAlgebra<K> {
    /// `dim Ǎ_i` for `i = 0..=top`.
    pub fn component_dims(&self) -> Vec<usize> {
        let top = self.degrees.iter().copied().max().map_or(0, |m| m + 1);
        let mut dims = vec![0; top];
        for &d in &self.degrees {
            dims[d] += 1;
        }
        dims
    }

    pub fn component(&self, i: usize) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&k| self.degrees[k] == i).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// The opposite graded algebra.
    pub fn opposite(&self) -> Self {
        GradedAlgebra {
            table: Arc::new(self.table.opposite()),
            degrees: self.degrees.clone(),
            lifts: self.lifts.clone(),
        }
    }

    fn indices(&self, deg: usize, target: Option<usize>, source: Option<usize>) -> Vec<usize> {
        let basis = self.table.basis();
        (0..basis.len())
            .filter(|&k| {
                self.degrees[k] == deg
                    && target.is_none_or(|t| basis[k].target == t)
                    && source.is_none_or(|s| basis[k].source == s)
            })
            .collect()
    }
}

/// `J^0 = A, J^1 = J, ...` up to and including the first zero power.
fn j_powers<K: Scalar>(t: &AlgebraTable<K>) -> Vec<Subspace<K>> {
    let d = t.dim();
    let j = Subspace::from_vectors(d, t.off_diagonal_indices().into_iter().map(|i| unit_vec(d, i)));
    let mut powers = vec![Subspace::full(d), j.clone()];
    while !powers.last().unwrap().is_zero() {
        let next = t.product_space(&j, powers.last().unwrap());
        powers.push(next);
    }
    powers
}

/// Block of a homogeneous nonzero vector.
fn block_of<K: Scalar>(t: &AlgebraTable<K>, v: &[K]) -> (usize, usize) {
    let k = v.iter().position(|c| !c.is_zero()).expect("nonzero vector");
    (t.basis()[k].target, t.basis()[k].source)
}

/// Lifts of a basis of `upper / lower`: unit vectors first, in basis order, then the
/// echelon rows of `upper`.
fn choose_lifts<K: Scalar>(upper: &Subspace<K>, lower: &Subspace<K>) -> Vec<Vec<K>> {
    let d = upper.ambient();
    let mut span = lower.clone();
    let mut out = Vec::new();
    let candidates = (0..d)
        .map(|i| unit_vec(d, i))
        .filter(|u| upper.contains(u))
        .chain(upper.basis().iter().cloned());
    for c in candidates {
        if out.len() == upper.dim() - lower.dim() {
            break;
        }
        if span.insert(&c) {
            out.push(c);
        }
    }
    out
}

fn combination_label<K: Scalar>(t: &AlgebraTable<K>, v: &[K]) -> String {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if nz.len() == 1 && v[nz[0]] == K::one() {
        return t.basis()[nz[0]].label.clone();
    }
    let terms: Vec<String> = nz
        .iter()
        .map(|&i| format!("{}*{}", v[i], t.basis()[i].label))
        .collect();
    format!("({})", terms.join(" + "))
}

/// Coordinates of `v` in `J^k` with respect to the degree-`k` lifts, modulo `J^{k+1}`.
fn graded_coordinates<K: Scalar>(
    lifts: &[Vec<K>],
    lower: &Subspace<K>,
    v: &[K],
) -> Option<Vec<K>> {
    let mut cols: Vec<Vec<K>> = lifts.to_vec();
    cols.extend(lower.basis().iter().cloned());
    if cols.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    let m = Matrix::from_columns(v.len(), &cols);
    m.solve(v).map(|x| x[..lifts.len()].to_vec())
}

/// Structure constants of `Ǎ` for lifts grouped by degree.
fn graded_products<K: Scalar>(
    t: &AlgebraTable<K>,
    powers: &[Subspace<K>],
    by_degree: &[Vec<Vec<K>>],
) -> Result<Vec<Vec<SparseVec<K>>>> {
    let offsets: Vec<usize> = by_degree
        .iter()
        .scan(0, |acc, l| {
            let o = *acc;
            *acc += l.len();
            Some(o)
        })
        .collect();
    let flat: Vec<(usize, &Vec<K>)> = by_degree
        .iter()
        .enumerate()
        .flat_map(|(deg, l)| l.iter().map(move |v| (deg, v)))
        .collect();
    let mut products = Vec::with_capacity(flat.len());
    for &(da, a) in &flat {
        let mut row = Vec::with_capacity(flat.len());
        for &(db, b) in &flat {
            let p = t.multiply(a, b);
            let k = da + db;
            if k >= by_degree.len() {
                if !is_zero_vec(&p) {
                    return Err(Error::PropertyViolation(
                        "product of lifts leaves the J-adic filtration".into(),
                    ));
                }
                row.push(Vec::new());
                continue;
            }
            let c = graded_coordinates(&by_degree[k], &powers[k + 1], &p).ok_or_else(|| {
                Error::PropertyViolation("product of lifts leaves the J-adic filtration".into())
            })?;
            row.push(
                c.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (offsets[k] + i, x))
                    .collect(),
            );
        }
        products.push(row);
    }
    Ok(products)
}

/// The associated graded algebra; fails with [`Error::NotDirected`] on non-directed input.
///
/// The induced multiplication is recomputed with a second, randomly perturbed choice of
/// lifts and must agree.
pub fn associated_graded<K: Scalar>(t: &AlgebraTable<K>) -> Result<GradedAlgebra<K>> {
    if !t.directedness().is_directed() {
        return Err(Error::NotDirected);
    }
    let powers = j_powers(t);
    let top = powers.len() - 1;
    let by_degree: Vec<Vec<Vec<K>>> = (0..top)
        .map(|i| choose_lifts(&powers[i], &powers[i + 1]))
        .collect();
    let products = graded_products(t, &powers, &by_degree)?;

    let mut rng = ChaCha8Rng::seed_from_u64(LIFT_SEED);
    let perturbed: Vec<Vec<Vec<K>>> = by_degree
        .iter()
        .enumerate()
        .map(|(i, lifts)| {
            lifts
                .iter()
                .map(|v| {
                    let blk = block_of(t, v);
                    let mut w = v.clone();
                    for r in powers[i + 1].basis() {
                        if block_of(t, r) == blk {
                            axpy(&mut w, &K::sample(&mut rng), r);
                        }
                    }
                    w
                })
                .collect()
        })
        .collect();
    if graded_products(t, &powers, &perturbed)? != products {
        return Err(Error::PropertyViolation(
            "graded multiplication depends on the choice of lifts".into(),
        ));
    }

    let lifts: Vec<Vec<K>> = by_degree.into_iter().flatten().collect();
    let degrees: Vec<usize> = (0..top)
        .flat_map(|i| std::iter::repeat_n(i, powers[i].dim() - powers[i + 1].dim()))
        .collect();
    let basis: Vec<BasisElement> = lifts
        .iter()
        .map(|v| {
            let (target, source) = block_of(t, v);
            BasisElement {
                label: combination_label(t, v),
                source,
                target,
            }
        })
        .collect();
    let idempotents = (0..t.vertex_count())
        .map(|v| {
            let e = unit_vec(t.dim(), t.idempotent(v));
            lifts.iter().position(|l| *l == e).expect("idempotents are degree-0 lifts")
        })
        .collect();
    let table = AlgebraTable::from_structure(
        &format!("gr({})", t.name()),
        t.vertices().to_vec(),
        basis,
        idempotents,
        products,
    )?;
    Ok(GradedAlgebra {
        table: Arc::new(table),
        degrees,
        lifts,
    })
}

/// One side of the tensor-algebra test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSide {
    /// Every block of `Ǎ_1` is free over the local algebra acting on it.
    pub degree_one_projective: bool,
    /// `Ǎ_1 ⊗_{A_0} Ǎ_i -> Ǎ_{i+1}` is bijective for every `i ≥ 1`.
    pub multiplication_bijective: bool,
    pub failures: Vec<String>,
}

impl TensorSide {
    pub fn holds(&self) -> bool {
        self.degree_one_projective && self.multiplication_bijective
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorVerdict {
    pub left: bool,
    pub right: bool,
    pub left_detail: TensorSide,
    pub right_detail: TensorSide,
}

/// Whether `e_mu Ǎ_1 e_lambda` is free as a left `e_mu Ǎ_0 e_mu`-module.
fn degree_one_block_free<K: Scalar>(g: &GradedAlgebra<K>, mu: usize, lambda: usize) -> bool {
    let t = &g.table;
    let x = g.indices(1, Some(mu), Some(lambda));
    let b = g.indices(0, Some(mu), Some(mu));
    let mut radx = Subspace::zero(t.dim());
    for &r in b.iter().filter(|&&r| !t.is_idempotent_index(r)) {
        for &m in &x {
            radx.insert(&t.basis_product(r, m));
        }
    }
    x.len() == b.len() * (x.len() - radx.dim())
}

/// `dim Ǎ_1 ⊗_{A_0} Ǎ_i`, computed blockwise over the local algebras `e_v Ǎ_0 e_v`.
fn tensor_dim<K: Scalar>(g: &GradedAlgebra<K>, i: usize) -> usize {
    let t = &g.table;
    let mut total = 0;
    for v in 0..t.vertex_count() {
        let xs = g.indices(1, None, Some(v));
        let ys = g.indices(i, Some(v), None);
        let n = xs.len() * ys.len();
        if n == 0 {
            continue;
        }
        let mut rel = Subspace::zero(n);
        for b in g.indices(0, Some(v), Some(v)) {
            if t.is_idempotent_index(b) {
                continue;
            }
            for (xi, &x) in xs.iter().enumerate() {
                let xb = t.basis_product(x, b);
                for (yi, &y) in ys.iter().enumerate() {
                    let by = t.basis_product(b, y);
                    // (x b) ⊗ y - x ⊗ (b y)
                    let mut r = vec![K::zero(); n];
                    for (xj, &x2) in xs.iter().enumerate() {
                        if !xb[x2].is_zero() {
                            r[xj * ys.len() + yi] = r[xj * ys.len() + yi].clone() + xb[x2].clone();
                        }
                    }
                    for (yj, &y2) in ys.iter().enumerate() {
                        if !by[y2].is_zero() {
                            r[xi * ys.len() + yj] = r[xi * ys.len() + yj].clone() - by[y2].clone();
                        }
                    }
                    rel.insert(&r);
                }
            }
        }
        total += n - rel.dim();
    }
    total
}

fn tensor_side<K: Scalar>(g: &GradedAlgebra<K>) -> TensorSide {
    let t = &g.table;
    let names = t.vertices();
    let n = t.vertex_count();
    let mut failures = Vec::new();
    let mut projective = true;
    for mu in 0..n {
        for lambda in 0..n {
            if mu != lambda && !degree_one_block_free(g, mu, lambda) {
                projective = false;
                failures.push(format!(
                    "e_{} Ǎ_1 e_{} is not free over e_{} Ǎ_0 e_{}",
                    names[mu], names[lambda], names[mu], names[mu]
                ));
            }
        }
    }
    let mut bijective = true;
    let top = g.top_degree();
    let deg1 = g.indices(1, None, None);
    for i in 1..=top.max(1) {
        let target_dim = g.indices(i + 1, None, None).len();
        let mut image = Subspace::zero(t.dim());
        for &x in &deg1 {
            for y in g.indices(i, None, None) {
                image.insert(&t.basis_product(x, y));
            }
        }
        let td = tensor_dim(g, i);
        if td != target_dim || image.dim() != target_dim {
            bijective = false;
            failures.push(format!(
                "Ǎ_1 ⊗ Ǎ_{i} has dimension {td}, image {} in Ǎ_{} of dimension {target_dim}",
                image.dim(),
                i + 1
            ));
        }
    }
    TensorSide {
        degree_one_projective: projective,
        multiplication_bijective: bijective,
        failures,
    }
}

/// Whether `Ǎ` is the tensor algebra of `Ǎ_1` over `A_0` with `Ǎ_1` projective, on the
/// left and, through the opposite, on the right.
pub fn tensor_algebra_check<K: Scalar>(g: &GradedAlgebra<K>) -> TensorVerdict {
    let left_detail = tensor_side(g);
    let right_detail = tensor_side(&g.opposite());
    TensorVerdict {
        left: left_detail.holds(),
        right: right_detail.holds(),
        left_detail,
        right_detail,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalVertex {
    pub name: String,
    /// `dim e_v Ǎ_0 e_v`.
    pub local_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleArrow {
    pub source: String,
    pub target: String,
    /// `dim e_target Ǎ_1 e_source`.
    pub dim: usize,
    pub left_free: bool,
    pub right_free: bool,
}

/// The quiver of bimodules of `Ǎ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleQuiver {
    pub vertices: Vec<LocalVertex>,
    pub arrows: Vec<BimoduleArrow>,
    /// `Ǎ` is generated freely by the arrows: the multiplication maps are bijective.
    pub free: bool,
    pub left_regular: bool,
    pub regular: bool,
}

impl BimoduleQuiver {
    /// Graphviz rendering: vertices labelled by local dimension, edges by bimodule dimension.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bimodules {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{}\" [label=\"{} ({})\"];", v.name, v.name, v.local_dim);
        }
        for a in &self.arrows {
            let style = if a.left_free { "solid" } else { "dashed" };
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\", style={style}];",
                a.source, a.target, a.dim
            );
        }
        s.push_str("}\n");
        s
    }
}

pub fn bimodule_quiver<K: Scalar>(g: &GradedAlgebra<K>) -> BimoduleQuiver {
    let t = &g.table;
    let names = t.vertices();
    let n = t.vertex_count();
    let op = g.opposite();
    let vertices = (0..n)
        .map(|v| LocalVertex {
            name: names[v].clone(),
            local_dim: g.indices(0, Some(v), Some(v)).len(),
        })
        .collect();
    let mut arrows = Vec::new();
    for lambda in 0..n {
        for mu in 0..n {
            let dim = g.indices(1, Some(mu), Some(lambda)).len();
            if mu != lambda && dim > 0 {
                arrows.push(BimoduleArrow {
                    source: names[lambda].clone(),
                    target: names[mu].clone(),
                    dim,
                    left_free: degree_one_block_free(g, mu, lambda),
                    right_free: degree_one_block_free(&op, lambda, mu),
                });
            }
        }
    }
    let tv = tensor_algebra_check(g);
    let free = tv.left_detail.multiplication_bijective;
    let left_regular = free && arrows.iter().all(|a: &BimoduleArrow| a.left_free);
    let regular = left_regular
        && tv.right_detail.multiplication_bijective
        && arrows.iter().all(|a| a.right_free);
    BimoduleQuiver {
        vertices,
        arrows,
        free,
        left_regular,
        regular,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedEquivalenceReport {
    pub component_dims: Vec<usize>,
    /// `(A, Ǎ)`.
    pub ss_all_orders: (bool, bool),
    pub properly_all_orders: (bool, bool),
    pub tensor: TensorVerdict,
    pub left_regular: bool,
    pub regular: bool,
    /// Whether `Ǎ ≅ A`: `"yes"`, `"no: ..."` or `"undecided: ..."`.
    pub isomorphic: String,
}

pub fn isomorphism_label(d: &Decision<()>) -> String {
    match d {
        Decision::Yes(()) => "yes".into(),
        Decision::No(r) => format!("no: {r}"),
        Decision::Undecided(r) => format!("undecided: {r}"),
    }
}

/// Cross-checks the all-orders verdicts of `A` and `Ǎ` against each other, against the
/// tensor-algebra test and against the regularity of the bimodule quiver.
pub fn graded_equivalence_check<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    max_vertices: usize,
) -> Result<GradedEquivalenceReport> {
    let g = associated_graded(t)?;
    let a = all_orders_scan(t, true, max_vertices)?;
    let b = all_orders_scan(&g.table, true, max_vertices)?;
    theorem01_check(t, max_vertices)?;
    theorem01_check(&g.table, max_vertices)?;
    let tensor = tensor_algebra_check(&g);
    let quiver = bimodule_quiver(&g);
    let a_proper = a.properly_all_orders == Some(true);
    let b_proper = b.properly_all_orders == Some(true);
    let checks = [
        (a.ss_all_orders == b.ss_all_orders, "A and Ǎ differ on stratification for all orders"),
        (a_proper == b_proper, "A and Ǎ differ on proper stratification for all orders"),
        (tensor.left == b.ss_all_orders, "left tensor test disagrees with Ǎ"),
        ((tensor.left && tensor.right) == b_proper, "two-sided tensor test disagrees with Ǎ"),
        (quiver.left_regular == a.ss_all_orders, "left regularity disagrees with A"),
        (quiver.regular == a_proper, "regularity disagrees with A"),
    ];
    if let Some((_, msg)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::EquivalenceViolation(format!("{}: {msg}", t.name())));
    }
    Ok(GradedEquivalenceReport {
        component_dims: g.component_dims(),
        ss_all_orders: (a.ss_all_orders, b.ss_all_orders),
        properly_all_orders: (a_proper, b_proper),
        tensor,
        left_regular: quiver.left_regular,
        regular: quiver.regular,
        isomorphic: isomorphism_label(&algebras_isomorphic(t, &g.table)),
    })
}

/// The graded module `⊕ J^i M / J^{i+1} M` over `Ǎ`.
pub fn graded_module<K: Scalar>(g: &GradedAlgebra<K>, m: &Rep<K>) -> Result<Rep<K>> {
    let a = m.algebra();
    let n = m.dim();
    let off = a.off_diagonal_indices();
    let mut filt = vec![Subspace::full(n)];
    while !filt.last().unwrap().is_zero() {
        let mut next = Subspace::zero(n);
        for v in filt.last().unwrap().basis() {
            for &j in &off {
                next.insert(&m.act(j, v));
            }
        }
        filt.push(next);
    }
    let top = filt.len() - 1;
    let by_degree: Vec<Vec<Vec<K>>> = (0..top).map(|i| choose_lifts(&filt[i], &filt[i + 1])).collect();
    // new coordinates grouped by vertex, then by degree
    let mut order: Vec<(usize, usize, usize)> = Vec::new();
    for (deg, lifts) in by_degree.iter().enumerate() {
        for (k, v) in lifts.iter().enumerate() {
            let c = v.iter().position(|x| !x.is_zero()).expect("nonzero lift");
            order.push((m.vertex_of(c), deg, k));
        }
    }
    order.sort();
    let position = |deg: usize, k: usize| order.iter().position(|&(_, d, j)| d == deg && j == k).unwrap();
    let nv = g.table.vertex_count();
    let mut dims = vec![0; nv];
    for &(v, _, _) in &order {
        dims[v] += 1;
    }
    let mut actions = Vec::new();
    for b in g.table.radical_indices() {
        let mut mat = Matrix::zeros(n, n);
        let db = g.degrees[b];
        for (col, &(_, dm, km)) in order.iter().enumerate() {
            let k = db + dm;
            let w = m.act_element(&g.lifts[b], &by_degree[dm][km]);
            if k >= top {
                if !is_zero_vec(&w) {
                    return Err(Error::PropertyViolation("J-adic filtration of a module is not respected".into()));
                }
                continue;
            }
            let c = graded_coordinates(&by_degree[k], &filt[k + 1], &w).ok_or_else(|| {
                Error::PropertyViolation("J-adic filtration of a module is not respected".into())
            })?;
            for (j, x) in c.into_iter().enumerate() {
                if !x.is_zero() {
                    mat.set(position(k, j), col, x);
                }
            }
        }
        actions.push(mat);
    }
    Rep::new(g.table.clone(), dims, actions)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedModuleCheck {
    pub module: String,
    pub projective: bool,
    pub graded_projective: bool,
}

/// Projectivity of `M` against projectivity of its graded module, for `J`, the
/// indecomposable projectives and the simples.
pub fn graded_module_spotcheck<K: Scalar>(t: &Arc<AlgebraTable<K>>) -> Result<Vec<GradedModuleCheck>> {
    let g = associated_graded(t)?;
    let names = t.vertices();
    let mut modules: Vec<(String, Rep<K>)> = Vec::new();
    if let Some(j) = off_diagonal_ideal(t) {
        modules.push(("J".into(), j));
    }
    for v in 0..t.vertex_count() {
        modules.push((format!("P_{}", names[v]), Rep::projective(t.clone(), v)));
        modules.push((format!("S_{}", names[v]), Rep::simple(t.clone(), v)));
    }
    let mut out = Vec::new();
    for (name, m) in modules {
        let gm = graded_module(&g, &m)?;
        let c = GradedModuleCheck {
            module: name,
            projective: m.is_projective().projective,
            graded_projective: gm.is_projective().projective,
        };
        if c.projective != c.graded_projective {
            return Err(Error::PropertyViolation(format!(
                "{} is {}projective but its graded module is {}projective",
                c.module,
                if c.projective { "" } else { "not " },
                if c.graded_projective { "" } else { "not " }
            )));
        }
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Q;

    #[test]
    fn ex1_10_graded() {
        let t = fixtures::table::<Q>("ex1_10").unwrap();
        let g = associated_graded(&t).unwrap();
        assert_eq!(g.component_dims(), vec![4, 3, 1]);
        let tv = tensor_algebra_check(&g);
        assert!(tv.left, "{:?}", tv.left_detail);
        assert!(!tv.right);
        assert!(algebras_isomorphic(&t, &g.table).is_no());
        let q = bimodule_quiver(&g);
        assert_eq!(q.arrows.len(), 3);
        assert!(q.left_regular && !q.regular);
    }

    #[test]
    fn a2_is_its_own_graded() {
        let t = fixtures::table::<Q>("hereditary_a2").unwrap();
        let g = associated_graded(&t).unwrap();
        assert_eq!(g.component_dims(), vec![2, 1]);
        assert!(algebras_isomorphic(&t, &g.table).is_yes());
    }

    #[test]
    fn cycle_is_rejected() {
        let t = fixtures::table::<Q>("s4_6").unwrap();
        assert!(matches!(associated_graded(&t), Err(Error::NotDirected)));
    }

    #[test]
    fn dot_export() {
        let t = fixtures::table::<Q>("ex1_10").unwrap();
        let dot = bimodule_quiver(&associated_graded(&t).unwrap()).to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("\"x\" [label=\"x (2)\"]"));
    }
}
