//! Analysis over all linear orders: brute-force scans, the four-way equivalence check
//! and the branching order search.

use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraTable, Directedness};
use crate::error::{Error, Result};
use crate::module::{off_diagonal_ideal, Rep};
use crate::scalar::Scalar;
use crate::stratification::{
    is_standardly_stratified, standard_modules, trace_multiplicity, LinearOrder,
};

/// Largest vertex count accepted by the brute-force scans.
pub const DEFAULT_MAX_VERTICES: usize = 8;

/// Every linear order of the vertices, lexicographic in vertex names.
pub fn all_orders<K: Scalar>(t: &AlgebraTable<K>) -> Vec<LinearOrder> {
    let mut names = t.vertices().to_vec();
    names.sort();
    let n = names.len();
    names
        .into_iter()
        .permutations(n)
        .map(|p| LinearOrder::new(t, p).expect("permutation of the vertices"))
        .collect()
}

fn check_budget<K: Scalar>(t: &AlgebraTable<K>, max_vertices: usize) -> Result<()> {
    if t.vertex_count() > max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "{} vertices exceed the all-orders limit of {max_vertices}",
            t.vertex_count()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub order: LinearOrder,
    pub standardly_stratified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properly_stratified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllOrdersReport {
    pub verdicts: Vec<OrderVerdict>,
    pub ss_all_orders: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properly_all_orders: Option<bool>,
}

impl AllOrdersReport {
    pub fn ss_orders(&self) -> Vec<LinearOrder> {
        self.verdicts
            .iter()
            .filter(|v| v.standardly_stratified)
            .map(|v| v.order.clone())
            .collect()
    }
}

/// Stratification verdicts for every linear order, evaluated in parallel.
pub fn all_orders_scan<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    properly: bool,
    max_vertices: usize,
) -> Result<AllOrdersReport> {
    check_budget(t, max_vertices)?;
    let op = Arc::new(t.opposite());
    let verdicts = all_orders(t)
        .into_par_iter()
        .map(|order| {
            let ss = is_standardly_stratified(t, &order)?;
            let proper = if properly {
                Some(ss && is_standardly_stratified(&op, &order)?)
            } else {
                None
            };
            Ok(OrderVerdict {
                order,
                standardly_stratified: ss,
                properly_stratified: proper,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ss_all_orders = verdicts.iter().all(|v| v.standardly_stratified);
    let properly_all_orders =
        properly.then(|| verdicts.iter().all(|v| v.properly_stratified == Some(true)));
    Ok(AllOrdersReport {
        verdicts,
        ss_all_orders,
        properly_all_orders,
    })
}

/// The four conditions of the equivalence theorem, each computed independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremOneCheck {
    /// Standardly stratified for every linear order.
    pub cond1_bruteforce: bool,
    /// Directed, and `J` projective as a left module.
    pub cond2_directed_and_j_projective: bool,
    /// Every trace `tr_{P_λ}(P_μ)` projective.
    pub cond3_all_traces_projective: bool,
    /// `pd Δ_λ ≤ 1` for every `λ` and every linear order.
    pub cond4_pd_bound: bool,
    /// One line per failed condition.
    pub witnesses: Vec<String>,
}

impl TheoremOneCheck {
    pub fn agree(&self) -> bool {
        let c = [
            self.cond1_bruteforce,
            self.cond2_directed_and_j_projective,
            self.cond3_all_traces_projective,
            self.cond4_pd_bound,
        ];
        c.iter().all(|&x| x == c[0])
    }

    pub fn value(&self) -> bool {
        self.cond1_bruteforce
    }
}

/// Computes the four conditions without comparing them.
pub fn theorem01_conditions<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    max_vertices: usize,
) -> Result<TheoremOneCheck> {
    let mut witnesses = Vec::new();
    let names = t.vertices();

    let scan = all_orders_scan(t, false, max_vertices)?;
    let cond1 = scan.ss_all_orders;
    if let Some(v) = scan.verdicts.iter().find(|v| !v.standardly_stratified) {
        witnesses.push(format!("(1) not standardly stratified for {}", v.order));
    }

    let cond2 = match t.directedness() {
        Directedness::Cycle { cycle } => {
            let c: Vec<&str> = cycle.iter().map(|&i| names[i].as_str()).collect();
            witnesses.push(format!("(2) not directed: cycle {}", c.join("->")));
            false
        }
        Directedness::Directed { .. } => {
            let j = off_diagonal_ideal(t).expect("directed, so J is a left ideal");
            let proj = j.is_projective().projective;
            if !proj {
                witnesses.push("(2) J is not a projective left module".into());
            }
            proj
        }
    };

    let n = t.vertex_count();
    let projectives: Vec<Rep<K>> = (0..n).map(|v| Rep::projective(t.clone(), v)).collect();
    let mut cond3 = true;
    'outer: for lambda in 0..n {
        for (mu, p) in projectives.iter().enumerate() {
            if trace_multiplicity(p, lambda).1.is_none() {
                witnesses.push(format!(
                    "(3) tr_P{}(P{}) is not projective",
                    names[lambda], names[mu]
                ));
                cond3 = false;
                break 'outer;
            }
        }
    }

    let failures: Vec<String> = all_orders(t)
        .into_par_iter()
        .map(|order| -> Result<Option<String>> {
            let fam = standard_modules(t, &order)?;
            Ok(fam
                .modules
                .iter()
                .find(|s| !s.delta.pd_at_most(1))
                .map(|s| format!("(4) pd Δ_{} > 1 for {}", names[s.vertex], order)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let cond4 = failures.is_empty();
    witnesses.extend(failures.into_iter().take(1));

    Ok(TheoremOneCheck {
        cond1_bruteforce: cond1,
        cond2_directed_and_j_projective: cond2,
        cond3_all_traces_projective: cond3,
        cond4_pd_bound: cond4,
        witnesses,
    })
}

/// The four conditions; disagreement is an [`Error::EquivalenceViolation`].
pub fn theorem01_check<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    max_vertices: usize,
) -> Result<TheoremOneCheck> {
    let c = theorem01_conditions(t, max_vertices)?;
    if !c.agree() {
        return Err(Error::EquivalenceViolation(format!(
            "{}: conditions (1)-(4) = ({}, {}, {}, {}); {}",
            t.name(),
            c.cond1_bruteforce,
            c.cond2_directed_and_j_projective,
            c.cond3_all_traces_projective,
            c.cond4_pd_bound,
            c.witnesses.join("; ")
        )));
    }
    Ok(c)
}

/// One node of the order search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStep {
    /// Vertices already placed, maximal first.
    pub prefix: Vec<String>,
    pub o1: Vec<String>,
    /// Pairs `(λ, μ)` with `λ <' μ`, that is `λ != μ` and `tr_{P_μ}(P_λ) != 0`.
    pub below: Vec<(String, String)>,
    pub maximal: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSearchResult {
    /// Every chain produced, complete or not.
    pub chains: Vec<Vec<String>>,
    /// The chains of full length.
    pub orders: Vec<LinearOrder>,
    pub steps: Vec<SearchStep>,
    /// Failures of antisymmetry or transitivity of `≤'`.
    pub alarms: Vec<String>,
}

/// Branching order search: place an element of `O_1` that is maximal for `≤'`, pass to
/// the quotient by its idempotent ideal, and repeat; every maximal choice is explored.
pub fn orders_algorithm<K: Scalar>(t: &Arc<AlgebraTable<K>>) -> OrderSearchResult {
    let mut res = OrderSearchResult {
        chains: Vec::new(),
        orders: Vec::new(),
        steps: Vec::new(),
        alarms: Vec::new(),
    };
    search(t.clone(), Vec::new(), &mut res);
    let n = t.vertex_count();
    res.orders = res
        .chains
        .iter()
        .filter(|c| c.len() == n)
        .map(|c| LinearOrder::new(t, c.clone()).expect("a full chain is a permutation"))
        .collect();
    res
}

fn search<K: Scalar>(cur: Arc<AlgebraTable<K>>, prefix: Vec<String>, res: &mut OrderSearchResult) {
    let n = cur.vertex_count();
    let names = cur.vertices().to_vec();
    let projectives: Vec<Rep<K>> = (0..n).map(|v| Rep::projective(cur.clone(), v)).collect();
    let o1: Vec<usize> = (0..n)
        .filter(|&l| projectives.iter().all(|p| trace_multiplicity(p, l).1.is_some()))
        .collect();
    if o1.is_empty() {
        res.chains.push(prefix);
        return;
    }
    let blocks = cur.block_dims();
    // l <=' m iff tr_{P_m}(P_l) != 0 iff e_m A e_l != 0
    let le = |l: usize, m: usize| l == m || blocks[m][l] > 0;
    for &a in &o1 {
        for &b in &o1 {
            if a < b && le(a, b) && le(b, a) {
                res.alarms.push(format!(
                    "<=' not antisymmetric on {{{}, {}}} after [{}]",
                    names[a],
                    names[b],
                    prefix.join(",")
                ));
            }
            for &c in &o1 {
                if le(a, b) && le(b, c) && !le(a, c) {
                    res.alarms.push(format!(
                        "<=' not transitive on {} <= {} <= {} after [{}]",
                        names[a],
                        names[b],
                        names[c],
                        prefix.join(",")
                    ));
                }
            }
        }
    }
    let maximal: Vec<usize> = o1
        .iter()
        .copied()
        .filter(|&m| o1.iter().all(|&o| o == m || !le(m, o)))
        .collect();
    res.steps.push(SearchStep {
        prefix: prefix.clone(),
        o1: o1.iter().map(|&i| names[i].clone()).collect(),
        below: o1
            .iter()
            .flat_map(|&a| o1.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a != b && le(a, b))
            .map(|(a, b)| (names[a].clone(), names[b].clone()))
            .collect(),
        maximal: maximal.iter().map(|&i| names[i].clone()).collect(),
    });
    if maximal.is_empty() {
        res.chains.push(prefix);
        return;
    }
    for m in maximal {
        let (q, _) = cur.quotient_by_idempotent(m);
        let mut next = prefix.clone();
        next.push(names[m].clone());
        search(Arc::new(q), next, res);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPropertiesReport {
    /// Orders of the search result confirmed standardly stratified.
    pub stratified: Vec<LinearOrder>,
    /// Orders certified closed by the caller, confirmed to lie in the search result.
    pub closed_in_l: Vec<LinearOrder>,
}

/// Every order found by the search must be standardly stratified, and every
/// standardly stratified order certified cokernel-closed must have been found.
pub fn verify_l_properties<K: Scalar>(
    t: &Arc<AlgebraTable<K>>,
    res: &OrderSearchResult,
    closed_orders: &[LinearOrder],
) -> Result<LPropertiesReport> {
    if let Some(a) = res.alarms.first() {
        return Err(Error::PropertyViolation(a.clone()));
    }
    for o in &res.orders {
        if !is_standardly_stratified(t, o)? {
            return Err(Error::PropertyViolation(format!(
                "order {o} was found by the search but is not standardly stratified"
            )));
        }
    }
    for o in closed_orders {
        if is_standardly_stratified(t, o)? && !res.orders.contains(o) {
            return Err(Error::PropertyViolation(format!(
                "order {o} is closed under cokernels but missing from the search result"
            )));
        }
    }
    Ok(LPropertiesReport {
        stratified: res.orders.clone(),
        closed_in_l: closed_orders.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Q;

    #[test]
    fn lexicographic_orders() {
        let t = fixtures::table::<Q>("ex1_10").unwrap();
        let all: Vec<String> = all_orders(&*t).iter().map(|o| o.to_string()).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], "x>y>z");
        assert_eq!(all[5], "z>y>x");
    }

    #[test]
    fn single_vertex() {
        let t = fixtures::table::<Q>("local_dual_numbers").unwrap();
        let c = theorem01_check(&t, DEFAULT_MAX_VERTICES).unwrap();
        assert!(c.value());
        let r = orders_algorithm(&t);
        assert_eq!(r.orders.len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let t = fixtures::table::<Q>("s4_2").unwrap();
        assert!(matches!(all_orders_scan(&t, false, 3), Err(Error::BudgetExceeded(_))));
    }
}
