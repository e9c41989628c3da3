//! Closure of `F(Δ)` under cokernels of monomorphisms.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTable, Directedness};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::module::Rep;
use crate::scalar::Scalar;
use crate::stratification::{
    greedy_filtration, is_quasi_hereditary, is_standardly_stratified, standard_modules,
    FiltrationResult, LinearOrder, StandardFamily,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureMode {
    ExactQh,
    BoundedSearch,
}

/// Summands allowed in the targets of a monomorphism search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetFamily {
    /// `⊕ P_μ^{k_μ}`.
    Projective,
    /// Projectives together with the standard modules that are not projective.
    ProjectiveAndStandard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closed {
    True,
    False,
    NoCounterexampleUpToBound,
}

/// A monomorphism `Δ_λ -> P` whose cokernel has no Δ-filtration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub vertex: String,
    /// Multiplicity of every summand kind (`P_μ`, or `Δ_μ`) in the target.
    pub target: Vec<(String, usize)>,
    /// Matrix of the monomorphism, `dim P` rows by `dim Δ_λ` columns.
    pub hom: Vec<Vec<String>>,
    pub delta_dim: usize,
    pub target_dim: usize,
    pub cokernel_dims: Vec<(String, usize)>,
    /// Loewy layers of the cokernel, as dimension vectors by vertex.
    pub cokernel_layers: Vec<Vec<usize>>,
    pub filtration: FiltrationResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureVerdict {
    pub order: LinearOrder,
    pub mode: ClosureMode,
    pub targets: TargetFamily,
    pub closed: Closed,
    /// Field the search ran over.
    pub field: String,
    /// Monomorphisms whose cokernels were tested.
    pub monomorphisms_tested: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Per-vertex multiplicity caps; `None` uses `dim Hom(Δ_λ, P_μ)`.
    pub caps: Option<Vec<usize>>,
    /// Maximum number of homomorphisms examined over all targets.
    pub budget: usize,
    /// Random homomorphisms per target when the field is infinite.
    pub samples: usize,
    pub seed: u64,
    pub targets: TargetFamily,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            caps: None,
            budget: 2_000_000,
            samples: 200,
            seed: 0x5eed,
            targets: TargetFamily::Projective,
        }
    }
}

fn field_name<K: Scalar>() -> String {
    K::field().to_string()
}

/// The exact criterion for quasi-hereditary algebras: closed iff the ordinary quiver has
/// no oriented cycles and every standard module is simple.
pub fn qh_closure_criterion<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    ord: &LinearOrder,
) -> Result<ClosureVerdict> {
    if !is_quasi_hereditary(t, ord)? {
        return Err(Error::PreconditionViolated(format!(
            "not quasi-hereditary for {ord}"
        )));
    }
    let q = t.ordinary_quiver();
    let n = t.vertex_count();
    let edges: Vec<Vec<bool>> = (0..n).map(|m| (0..n).map(|l| q[m][l] > 0).collect()).collect();
    let acyclic = is_acyclic(&edges);
    let fam = standard_modules(t, ord)?;
    let simple = fam.dims().iter().all(|&d| d == 1);
    let closed = acyclic && simple;
    let mut v = ClosureVerdict {
        order: fam.order.clone(),
        mode: ClosureMode::ExactQh,
        targets: TargetFamily::Projective,
        closed: if closed { Closed::True } else { Closed::False },
        field: field_name::<K>(),
        monomorphisms_tested: 0,
        counterexample: None,
    };
    if !closed {
        // attach a witness when a search finds one
        if let Ok(s) = bounded_mono_search(t, ord, &SearchBounds::default()) {
            v.monomorphisms_tested = s.monomorphisms_tested;
            v.counterexample = s.counterexample;
        }
    }
    Ok(v)
}

/// `edges[mu][lambda]` for an arrow `lambda -> mu`; loops count as cycles.
fn is_acyclic(edges: &[Vec<bool>]) -> bool {
    let n = edges.len();
    let mut placed = vec![false; n];
    for _ in 0..n {
        let next = (0..n).find(|&v| !placed[v] && (0..n).all(|m| placed[m] || !edges[m][v]));
        match next {
            Some(v) => placed[v] = true,
            None => return false,
        }
    }
    true
}

/// Targets `(k_μ)` with `0 ≤ k_μ ≤ cap_μ`, nonzero, by total dimension then lexicographically.
fn targets(caps: &[usize], pdims: &[usize]) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    for &c in caps {
        all = all
            .into_iter()
            .flat_map(|k: Vec<usize>| {
                (0..=c).map(move |x| {
                    let mut k = k.clone();
                    k.push(x);
                    k
                })
            })
            .collect();
    }
    all.retain(|k| k.iter().any(|&x| x > 0));
    all.sort_by_key(|k| (k.iter().zip(pdims).map(|(a, b)| a * b).sum::<usize>(), k.clone()));
    all
}

/// Enumerates `count`-long coefficient vectors lexicographically over `elements`.
struct Odometer<'a, K> {
    elements: &'a [K],
    digits: Vec<usize>,
    done: bool,
}

impl<K: Scalar> Iterator for Odometer<'_, K> {
    type Item = Vec<K>;
    fn next(&mut self) -> Option<Vec<K>> {
        if self.done {
            return None;
        }
        let out = self.digits.iter().map(|&d| self.elements[d].clone()).collect();
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.elements.len() {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

fn matrix_strings<K: Scalar>(m: &Matrix<K>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_string()).collect())
        .collect()
}

struct Instance<K> {
    hom: Matrix<K>,
    cokernel: Rep<K>,
    filtration: FiltrationResult,
}

/// Cokernel and filtration test of `f: Δ_λ -> P`, or `None` if `f` is not injective.
fn test_hom<K: Scalar>(
    fam: &StandardFamily<K>,
    p: &Rep<K>,
    delta: &Rep<K>,
    f: Matrix<K>,
) -> Option<Instance<K>> {
    if f.rank() != delta.dim() {
        return None;
    }
    let image = Subspace::from_vectors(p.dim(), (0..f.cols()).map(|c| f.column(c)));
    let (cokernel, _) = p.quotient(&image);
    let filtration = greedy_filtration(fam, &cokernel);
    Some(Instance {
        hom: f,
        cokernel,
        filtration,
    })
}

/// Searches monomorphisms `Δ_λ -> ⊕ P_μ^{k_μ}` for a cokernel outside `F(Δ)`; with
/// [`TargetFamily::ProjectiveAndStandard`] the non-projective `Δ_μ` are added as summands.
///
/// Over a finite field every homomorphism is enumerated; over `Q` the homomorphisms are
/// sampled. Homomorphisms with a zero component into some summand are skipped, since
/// their cokernels split off that summand and already occur for a smaller target.
pub fn bounded_mono_search<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    ord: &LinearOrder,
    bounds: &SearchBounds,
) -> Result<ClosureVerdict> {
    if !is_standardly_stratified(t, ord)? {
        return Err(Error::PreconditionViolated(format!(
            "not standardly stratified for {ord}"
        )));
    }
    let fam = standard_modules(t, ord)?;
    let names = t.vertices();
    let n = t.vertex_count();
    if let Some(c) = &bounds.caps {
        if c.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.len(),
            });
        }
    }
    let mut summand_kinds: Vec<(String, Rep<K>, Option<usize>)> = (0..n)
        .map(|v| {
            let cap = bounds.caps.as_ref().map(|c| c[v]);
            (format!("P_{}", names[v]), Rep::projective(t.clone(), v), cap)
        })
        .collect();
    if bounds.targets == TargetFamily::ProjectiveAndStandard {
        for s in &fam.modules {
            if s.delta.dim() < s.projective.dim() {
                summand_kinds.push((format!("Δ_{}", names[s.vertex]), s.delta.clone(), None));
            }
        }
    }
    let sdims: Vec<usize> = summand_kinds.iter().map(|(_, m, _)| m.dim()).collect();
    let elements = K::elements();
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut examined = 0usize;
    let mut tested = 0usize;

    for lambda in fam.order.indices(t) {
        let delta = &fam.modules[lambda].delta;
        let homs: Vec<Vec<Matrix<K>>> = summand_kinds
            .iter()
            .map(|(_, m, _)| delta.hom_space(m))
            .collect::<Result<_>>()?;
        let caps: Vec<usize> = summand_kinds
            .iter()
            .zip(&homs)
            .map(|((_, _, cap), h)| cap.unwrap_or(h.len()))
            .collect();
        for k in targets(&caps, &sdims) {
            // summands in order, each with its hom basis
            let summands: Vec<usize> = (0..k.len()).flat_map(|s| std::iter::repeat_n(s, k[s])).collect();
            if summands.iter().any(|&s| homs[s].is_empty()) {
                continue;
            }
            let parts: Vec<Rep<K>> = summands.iter().map(|&s| summand_kinds[s].1.clone()).collect();
            let p = Rep::direct_sum(t.clone(), &parts)?;
            let ncoef: usize = summands.iter().map(|&s| homs[s].len()).sum();
            let incl = Rep::direct_sum_inclusions(&parts);
            let assemble = |coef: &[K]| -> Option<Matrix<K>> {
                let mut m = Matrix::zeros(p.dim(), delta.dim());
                let mut at = 0;
                for (c, &s) in summands.iter().enumerate() {
                    let mut comp = Matrix::zeros(sdims[s], delta.dim());
                    for h in &homs[s] {
                        comp = comp.add(&h.scale(&coef[at]));
                        at += 1;
                    }
                    if comp.is_zero() {
                        return None;
                    }
                    m = m.add(&incl[c].mul(&comp));
                }
                Some(m)
            };
            let candidates: Box<dyn Iterator<Item = Vec<K>>> = match &elements {
                Some(els) => Box::new(Odometer {
                    elements: els,
                    digits: vec![0; ncoef],
                    done: false,
                }),
                None => Box::new(
                    (0..bounds.samples)
                        .map(|_| (0..ncoef).map(|_| K::sample(&mut rng)).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                        .into_iter(),
                ),
            };
            let label = |k: &[usize]| -> Vec<(String, usize)> {
                summand_kinds.iter().zip(k).map(|((l, _, _), &x)| (l.clone(), x)).collect()
            };
            for coef in candidates {
                examined += 1;
                if examined > bounds.budget {
                    return Err(Error::BudgetExceeded(format!(
                        "{} homomorphisms examined; frontier at Δ_{} into {:?}",
                        bounds.budget,
                        names[lambda],
                        label(&k)
                    )));
                }
                let Some(f) = assemble(&coef) else { continue };
                let Some(inst) = test_hom(&fam, &p, delta, f) else { continue };
                tested += 1;
                if !inst.filtration.member {
                    let cx = certify(t, &fam, &p, delta, lambda, label(&k), inst)?;
                    return Ok(ClosureVerdict {
                        order: fam.order.clone(),
                        mode: ClosureMode::BoundedSearch,
                        targets: bounds.targets,
                        closed: Closed::False,
                        field: field_name::<K>(),
                        monomorphisms_tested: tested,
                        counterexample: Some(cx),
                    });
                }
            }
        }
    }
    Ok(ClosureVerdict {
        order: fam.order,
        mode: ClosureMode::BoundedSearch,
        targets: bounds.targets,
        closed: Closed::NoCounterexampleUpToBound,
        field: field_name::<K>(),
        monomorphisms_tested: tested,
        counterexample: None,
    })
}

/// Re-verifies a failing instance from scratch before it is reported.
fn certify<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    fam: &StandardFamily<K>,
    p: &Rep<K>,
    delta: &Rep<K>,
    lambda: usize,
    target: Vec<(String, usize)>,
    inst: Instance<K>,
) -> Result<Counterexample> {
    let names = t.vertices();
    let ok = delta.is_homomorphism(p, &inst.hom)
        && inst.hom.rank() == delta.dim()
        && inst.cokernel.dim() == p.dim() - delta.dim()
        && greedy_filtration(fam, p).member
        && !greedy_filtration(fam, &inst.cokernel).member;
    if !ok {
        return Err(Error::PropertyViolation(format!(
            "counterexample for Δ_{} failed re-verification",
            names[lambda]
        )));
    }
    Ok(Counterexample {
        vertex: names[lambda].clone(),
        target,
        hom: matrix_strings(&inst.hom),
        delta_dim: delta.dim(),
        target_dim: p.dim(),
        cokernel_dims: names.iter().cloned().zip(inst.cokernel.dims().iter().copied()).collect(),
        cokernel_layers: inst.cokernel.loewy_layers(),
        filtration: inst.filtration,
    })
}

/// Whether `F(Δ)` for `ord_other` is contained in `F(Δ)` for `ord_closed`, tested on the
/// standard modules of `ord_other`.
pub fn containment_check<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    ord_closed: &LinearOrder,
    ord_other: &LinearOrder,
) -> Result<bool> {
    for o in [ord_closed, ord_other] {
        if !is_standardly_stratified(t, o)? {
            return Err(Error::PreconditionViolated(format!(
                "not standardly stratified for {o}"
            )));
        }
    }
    let fam = standard_modules(t, ord_closed)?;
    let other = standard_modules(t, ord_other)?;
    Ok(other.modules.iter().all(|s| greedy_filtration(&fam, &s.delta).member))
}

/// For a directed algebra, searches the order with sinks maximal, where the standard
/// modules are the diagonal blocks and no counterexample may exist.
pub fn directed_order_closure_spotcheck<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    bounds: &SearchBounds,
) -> Result<ClosureVerdict> {
    let order = match t.directedness() {
        Directedness::Directed { order } => LinearOrder::from_indices(t, &order),
        Directedness::Cycle { .. } => return Err(Error::NotDirected),
    };
    let v = bounds_search_checked(t, &order, bounds)?;
    if v.closed == Closed::False {
        return Err(Error::PropertyViolation(format!(
            "directed order {order} admits a cokernel outside F(Δ)"
        )));
    }
    Ok(v)
}

fn bounds_search_checked<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    order: &LinearOrder,
    bounds: &SearchBounds,
) -> Result<ClosureVerdict> {
    if !is_standardly_stratified(t, order)? {
        return Err(Error::PreconditionViolated(format!(
            "the directed order {order} is not standardly stratified"
        )));
    }
    bounded_mono_search(t, order, bounds)
}
