//! Standard modules and stratification verdicts for one linear order.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::module::Rep;
use crate::scalar::Scalar;

/// A linear order on vertex names, listed from maximal to minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearOrder(Vec<String>);

impl LinearOrder {
    /// Checks that `names` is a permutation of the vertices of `t`.
    pub fn new<K: Scalar>(t: &AlgebraTable<K>, names: Vec<String>) -> Result<Self> {
        let mut sorted = names.clone();
        sorted.sort();
        let mut verts = t.vertices().to_vec();
        verts.sort();
        if sorted != verts {
            return Err(Error::InvalidOrder(format!(
                "[{}] is not a permutation of the vertices [{}]",
                names.join(","),
                t.vertices().join(",")
            )));
        }
        Ok(LinearOrder(names))
    }

    /// Parses names separated by `,` or `>`, maximal first.
    pub fn parse<K: Scalar>(t: &AlgebraTable<K>, s: &str) -> Result<Self> {
        let names = s
            .split([',', '>'])
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(String::from)
            .collect();
        Self::new(t, names)
    }

    pub fn from_indices<K: Scalar>(t: &AlgebraTable<K>, idx: &[usize]) -> Self {
        LinearOrder(idx.iter().map(|&i| t.vertices()[i].clone()).collect())
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Vertex indices of `t`, maximal first; names missing from `t` are skipped.
    pub fn indices<K: Scalar>(&self, t: &AlgebraTable<K>) -> Vec<usize> {
        self.0.iter().filter_map(|n| t.vertex(n)).collect()
    }

    /// Position from the top; smaller means larger in the order.
    pub fn rank_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// `a ≻ b`.
    pub fn greater(&self, a: &str, b: &str) -> bool {
        match (self.rank_of(a), self.rank_of(b)) {
            (Some(x), Some(y)) => x < y,
            _ => false,
        }
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(">"))
    }
}

/// `Δ_λ` with its presentation as a quotient of `P_λ`.
#[derive(Clone)]
pub struct StandardModule<K> {
    pub vertex: usize,
    pub delta: Rep<K>,
    pub projective: Rep<K>,
    /// `K_λ = Σ_{μ≻λ} tr_{P_μ}(P_λ)` inside `P_λ`.
    pub kernel: Subspace<K>,
    /// `P_λ -> Δ_λ`.
    pub projection: Matrix<K>,
}

#[derive(Clone)]
pub struct StandardFamily<K> {
    pub order: LinearOrder,
    /// Indexed by vertex.
    pub modules: Vec<StandardModule<K>>,
}

impl<K: Scalar> fmt::Debug for StandardFamily<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StandardFamily({}, dims {:?})", self.order, self.dims())
    }
}

impl<K: Scalar> StandardFamily<K> {
    /// `dim Δ_λ` by vertex index.
    pub fn dims(&self) -> Vec<usize> {
        self.modules.iter().map(|s| s.delta.dim()).collect()
    }

    /// `dim Δ_λ` listed along the order, maximal first.
    pub fn dims_along_order(&self, t: &AlgebraTable<K>) -> Vec<usize> {
        self.order.indices(t).iter().map(|&v| self.modules[v].delta.dim()).collect()
    }
}

pub fn standard_modules<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    ord: &LinearOrder,
) -> Result<StandardFamily<K>> {
    let ord = LinearOrder::new(t, ord.names().to_vec())?;
    let idx = ord.indices(t);
    let modules = (0..t.vertex_count())
        .map(|v| {
            let p = Rep::projective(t.clone(), v);
            let pos = idx.iter().position(|&u| u == v).expect("order is a permutation");
            let mut kernel = Subspace::zero(p.dim());
            for &mu in &idx[..pos] {
                kernel = kernel
                    .sum(&p.generated_by_vertex(mu))
                    .expect("same ambient space");
            }
            let (delta, projection) = p.quotient(&kernel);
            StandardModule {
                vertex: v,
                delta,
                projective: p,
                kernel,
                projection,
            }
        })
        .collect();
    Ok(StandardFamily {
        order: ord,
        modules,
    })
}

/// One step of the inductive test: traces of the current maximal projective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub vertex: String,
    /// `(μ, m_μ)` with `tr_{P_λ}(P_μ) ≅ P_λ^{m_μ}`, or `None` when that trace is not of
    /// this form.
    pub traces: Vec<(String, Option<usize>)>,
}

impl TraceStep {
    pub fn passed(&self) -> bool {
        self.traces.iter().all(|(_, m)| m.is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationVerdict {
    pub order: LinearOrder,
    pub standardly_stratified: bool,
    pub properly_stratified: bool,
    pub quasi_hereditary: bool,
    /// `dim Δ_λ` by vertex name.
    pub standard_dims: Vec<(String, usize)>,
    pub steps: Vec<TraceStep>,
}

/// `tr_{P_λ}(M)` as the submodule generated by `e_λ M`, with its multiplicity `m` when it
/// is isomorphic to `P_λ^m`.
pub fn trace_multiplicity<K: Scalar>(m: &Rep<K>, lambda: usize) -> (Subspace<K>, Option<usize>) {
    let tr = m.generated_by_vertex(lambda);
    let (sub, _) = m.restrict(&tr);
    let k = sub.top_dims()[lambda];
    let pdim = m.algebra().projective_dims()[lambda];
    let ok = sub.dim() == k * pdim;
    (tr, ok.then_some(k))
}

/// Inductive test: for the maximal `λ`, every `tr_{P_λ}(P_μ)` must be a sum of copies
/// of `P_λ`, and the quotient by `A e_λ A` must again be standardly stratified.
pub fn standardly_stratified_steps<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    ord: &LinearOrder,
) -> Result<(bool, Vec<TraceStep>)> {
    LinearOrder::new(t, ord.names().to_vec())?;
    let mut cur = t.clone();
    let mut steps = Vec::new();
    for name in ord.names() {
        let lambda = cur.vertex(name).expect("order restricted to remaining vertices");
        let traces = (0..cur.vertex_count())
            .map(|mu| {
                let p = Rep::projective(cur.clone(), mu);
                (cur.vertices()[mu].clone(), trace_multiplicity(&p, lambda).1)
            })
            .collect();
        let step = TraceStep {
            vertex: name.clone(),
            traces,
        };
        let ok = step.passed();
        steps.push(step);
        if !ok {
            return Ok((false, steps));
        }
        cur = Arc::new(cur.quotient_by_idempotent(lambda).0);
    }
    Ok((true, steps))
}

pub fn is_standardly_stratified<K: Scalar>(t: &Arc<AlgebraTable<K>>, ord: &LinearOrder) -> Result<bool> {
    Ok(standardly_stratified_steps(t, ord)?.0)
}

/// Both the algebra and its opposite are standardly stratified for `ord`.
pub fn is_properly_stratified<K: Scalar>(t: &Arc<AlgebraTable<K>>, ord: &LinearOrder) -> Result<bool> {
    Ok(is_standardly_stratified(t, ord)?
        && is_standardly_stratified(&Arc::new(t.opposite()), ord)?)
}

/// Standardly stratified with one-dimensional endomorphism algebras of all `Δ_λ`.
pub fn is_quasi_hereditary<K: Scalar>(t: &Arc<AlgebraTable<K>>, ord: &LinearOrder) -> Result<bool> {
    if !is_standardly_stratified(t, ord)? {
        return Ok(false);
    }
    let fam = standard_modules(t, ord)?;
    Ok(fam.modules.iter().all(|s| s.delta.end_dim() == 1))
}

pub fn stratification_verdict<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    ord: &LinearOrder,
) -> Result<StratificationVerdict> {
    let (ss, steps) = standardly_stratified_steps(t, ord)?;
    let fam = standard_modules(t, ord)?;
    let proper = ss && is_standardly_stratified(&Arc::new(t.opposite()), ord)?;
    let qh = ss && fam.modules.iter().all(|s| s.delta.end_dim() == 1);
    Ok(StratificationVerdict {
        order: fam.order.clone(),
        standardly_stratified: ss,
        properly_stratified: proper,
        quasi_hereditary: qh,
        standard_dims: fam
            .modules
            .iter()
            .map(|s| (t.vertices()[s.vertex].clone(), s.delta.dim()))
            .collect(),
        steps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationResult {
    pub member: bool,
    /// `[M : Δ_λ]` by vertex name, for the steps that were completed.
    pub multiplicities: Vec<(String, usize)>,
    /// Vertex at which the greedy descent failed.
    pub failed_at: Option<String>,
}

impl FiltrationResult {
    /// `l(M) = Σ_λ [M : Δ_λ]`.
    pub fn length(&self) -> usize {
        self.multiplicities.iter().map(|(_, k)| k).sum()
    }
}

/// Greedy Δ-filtration test without checking stratification first.
///
/// Walking down the order, `T` is the submodule generated by `e_λ M'`; it must be a sum
/// of copies of `Δ_λ`, and the walk continues with `M' / T`.
pub fn greedy_filtration<K: Scalar>(fam: &StandardFamily<K>, m: &Rep<K>) -> FiltrationResult {
    let t = m.algebra();
    let mut cur = m.clone();
    let mut mult = Vec::new();
    for v in fam.order.indices(t) {
        let name = t.vertices()[v].clone();
        let tr = cur.generated_by_vertex(v);
        let (sub, _) = cur.restrict(&tr);
        let k = sub.top_dims()[v];
        let top_only_here = sub.top_dims().iter().enumerate().all(|(u, &x)| u == v || x == 0);
        if !top_only_here || sub.dim() != k * fam.modules[v].delta.dim() {
            return FiltrationResult {
                member: false,
                multiplicities: mult,
                failed_at: Some(name),
            };
        }
        mult.push((name, k));
        cur = cur.quotient(&tr).0;
    }
    debug_assert!(cur.is_zero(), "every idempotent has been killed");
    FiltrationResult {
        member: true,
        multiplicities: mult,
        failed_at: None,
    }
}

/// Δ-filtration membership; requires the algebra to be standardly stratified for the
/// family's order.
pub fn filtration_membership<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    fam: &StandardFamily<K>,
    m: &Rep<K>,
) -> Result<FiltrationResult> {
    if !is_standardly_stratified(t, &fam.order)? {
        return Err(Error::PreconditionViolated(format!(
            "not standardly stratified for {}",
            fam.order
        )));
    }
    Ok(greedy_filtration(fam, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_table, DEFAULT_LENGTH_CAP};
    use crate::quiver::{Presentation, Quiver};
    use crate::scalar::{FieldSpec, Q};

    fn a2() -> Arc<AlgebraTable<Q>> {
        let q = Quiver::new(&["x", "y"], &[("a", "x", "y")]).unwrap();
        Arc::new(build_table(&Presentation::new("a2", FieldSpec::Rationals, q), DEFAULT_LENGTH_CAP).unwrap())
    }

    fn dual() -> Arc<AlgebraTable<Q>> {
        let q = Quiver::new(&["x"], &[("d", "x", "x")]).unwrap();
        let p = Presentation::new("dual", FieldSpec::Rationals, q)
            .relation(&[(1, &["d", "d"])])
            .unwrap();
        Arc::new(build_table(&p, DEFAULT_LENGTH_CAP).unwrap())
    }

    #[test]
    fn order_parsing() {
        let t = a2();
        assert!(LinearOrder::parse(&*t, "x,y").is_ok());
        assert!(LinearOrder::parse(&*t, "x").is_err());
        assert!(LinearOrder::parse(&*t, "x,x").is_err());
        let o = LinearOrder::parse(&*t, "y, x").unwrap();
        assert!(o.greater("y", "x"));
        assert_eq!(o.to_string(), "y>x");
    }

    #[test]
    fn hereditary_a2() {
        let t = a2();
        for s in ["x,y", "y,x"] {
            let o = LinearOrder::parse(&*t, s).unwrap();
            assert!(is_quasi_hereditary(&t, &o).unwrap());
        }
        let src_first = LinearOrder::parse(&*t, "x,y").unwrap();
        assert!(is_properly_stratified(&t, &src_first).unwrap());
        assert_eq!(standard_modules(&t, &src_first).unwrap().dims(), vec![2, 1]);
        let sink_first = LinearOrder::parse(&*t, "y,x").unwrap();
        assert_eq!(standard_modules(&t, &sink_first).unwrap().dims(), vec![1, 1]);
    }

    #[test]
    fn local_algebra_is_not_quasi_hereditary() {
        let t = dual();
        let o = LinearOrder::parse(&*t, "x").unwrap();
        let v = stratification_verdict(&t, &o).unwrap();
        assert!(v.standardly_stratified && v.properly_stratified && !v.quasi_hereditary);
    }

    #[test]
    fn regular_module_filtration() {
        let t = a2();
        let o = LinearOrder::parse(&*t, "y,x").unwrap();
        let fam = standard_modules(&t, &o).unwrap();
        let (reg, _) = Rep::regular(t.clone());
        let r = filtration_membership(&t, &fam, &reg).unwrap();
        assert!(r.member);
        assert_eq!(r.length(), 3);
        let d = greedy_filtration(&fam, &fam.modules[0].delta);
        assert!(d.member && d.length() == 1);
    }
}
