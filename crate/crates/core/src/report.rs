//! Machine-readable analysis of a presented algebra.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_table, AlgebraTable, Directedness, DEFAULT_LENGTH_CAP};
use crate::closure::{bounded_mono_search, Closed, ClosureVerdict, SearchBounds, TargetFamily};
use crate::error::{Error, Result};
use crate::graded::{associated_graded, bimodule_quiver, graded_equivalence_check, BimoduleQuiver, GradedEquivalenceReport};
use crate::module::Rep;
use crate::orders::{
    all_orders_scan, orders_algorithm, theorem01_check, verify_l_properties, AllOrdersReport,
    LPropertiesReport, OrderSearchResult, TheoremOneCheck, DEFAULT_MAX_VERTICES,
};
use crate::quiver::Presentation;
use crate::scalar::{FieldSpec, Scalar};
use crate::stratification::LinearOrder;
use crate::with_field;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSummary {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub vertices: Vec<String>,
    pub basis: Vec<BasisSummary>,
    /// `block_dims[mu][lambda] = dim e_mu A e_lambda`.
    pub block_dims: Vec<Vec<usize>>,
    pub projective_dims: Vec<usize>,
    pub right_projective_dims: Vec<usize>,
    pub loewy_length: usize,
    /// Loewy layers of every `P_λ`, each layer a dimension vector by vertex.
    pub projective_layers: Vec<Vec<Vec<usize>>>,
}

impl AlgebraSummary {
    pub fn of<K: Scalar>(t: &Arc<AlgebraTable<K>>) -> Self {
        let names = t.vertices();
        AlgebraSummary {
            name: t.name().to_string(),
            field: K::field(),
            dim: t.dim(),
            vertices: names.to_vec(),
            basis: t
                .basis()
                .iter()
                .map(|b| BasisSummary {
                    label: b.label.clone(),
                    source: names[b.source].clone(),
                    target: names[b.target].clone(),
                })
                .collect(),
            block_dims: t.block_dims(),
            projective_dims: t.projective_dims(),
            right_projective_dims: t.right_projective_dims(),
            loewy_length: t.loewy_length(),
            projective_layers: (0..t.vertex_count())
                .map(|v| Rep::projective(t.clone(), v).loewy_layers())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectednessSummary {
    pub directed: bool,
    /// Maximal first, when directed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
}

impl DirectednessSummary {
    pub fn of<K: Scalar>(t: &AlgebraTable<K>) -> Self {
        let names = |v: &[usize]| v.iter().map(|&i| t.vertices()[i].clone()).collect();
        match t.directedness() {
            Directedness::Directed { order } => DirectednessSummary {
                directed: true,
                order: Some(names(&order)),
                cycle: None,
            },
            Directedness::Cycle { cycle } => DirectednessSummary {
                directed: false,
                order: None,
                cycle: Some(names(&cycle)),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSummary {
    pub equivalence: GradedEquivalenceReport,
    pub bimodule_quiver: BimoduleQuiver,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub algebra: AlgebraSummary,
    pub directedness: DirectednessSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_orders: Option<AllOrdersReport>,
    pub order_search: OrderSearchResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem1: Option<TheoremOneCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded: Option<GradedSummary>,
    /// Bounded searches for every standardly stratified order: projective targets first,
    /// then projective and standard targets if the first search found nothing.
    pub closure: Vec<ClosureVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_properties: Option<LPropertiesReport>,
    /// Sections that were skipped, with the reason.
    pub skipped: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            message: e.to_string(),
            line: e.line(),
            column: e.column(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    pub max_vertices: usize,
    /// Field of the closure searches when the algebra is over `Q`.
    pub prime: u64,
    pub bounds: SearchBounds,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_vertices: DEFAULT_MAX_VERTICES,
            prime: 2,
            bounds: SearchBounds::default(),
        }
    }
}

/// Runs every analysis that applies. Soundness alarms abort the report.
pub fn analysis_report(pres: &Presentation, opts: &ReportOptions) -> Result<AnalysisReport> {
    let mut report = with_field!(pres.field, K => {
        let t: Arc<AlgebraTable<K>> = Arc::new(build_table(pres, DEFAULT_LENGTH_CAP)?);
        base_report(&t, opts)?
    })?;
    let closure_field = match pres.field {
        FieldSpec::Rationals => FieldSpec::prime(opts.prime)?,
        f => f,
    };
    let ss_orders: Vec<Vec<String>> = match &report.all_orders {
        Some(a) => a.ss_orders().into_iter().map(|o| o.names().to_vec()).collect(),
        None => report.order_search.orders.iter().map(|o| o.names().to_vec()).collect(),
    };
    let over = pres.over(closure_field);
    report.closure = with_field!(closure_field, K => {
        let t: Arc<AlgebraTable<K>> = Arc::new(build_table(&over, DEFAULT_LENGTH_CAP)?);
        let mut out = Vec::new();
        for names in &ss_orders {
            let ord = LinearOrder::new(&t, names.clone())?;
            for targets in [TargetFamily::Projective, TargetFamily::ProjectiveAndStandard] {
                let bounds = SearchBounds { targets, ..opts.bounds.clone() };
                match bounded_mono_search(&t, &ord, &bounds) {
                    Ok(v) => {
                        let found = v.closed == Closed::False;
                        out.push(v);
                        if found {
                            break;
                        }
                    }
                    Err(Error::BudgetExceeded(m)) => {
                        report.skipped.push(format!("closure search for {ord}: {m}"));
                        break;
                    }
                    Err(Error::PreconditionViolated(m)) => {
                        report.skipped.push(format!("closure search for {ord} over {closure_field}: {m}"));
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        out
    })?;
    // orders where both target families came back empty
    let closed: Vec<LinearOrder> = report
        .closure
        .iter()
        .filter(|v| v.targets == TargetFamily::ProjectiveAndStandard && v.closed != Closed::False)
        .map(|v| v.order.clone())
        .collect();
    report.l_properties = Some(with_field!(pres.field, K => {
        let t: Arc<AlgebraTable<K>> = Arc::new(build_table(pres, DEFAULT_LENGTH_CAP)?);
        verify_l_properties(&t, &report.order_search, &closed)?
    })?);
    Ok(report)
}

fn base_report<K: Scalar>(t: &Arc<AlgebraTable<K>>, opts: &ReportOptions) -> Result<AnalysisReport> {
    let mut skipped = Vec::new();
    let all_orders = match all_orders_scan(t, true, opts.max_vertices) {
        Ok(a) => Some(a),
        Err(Error::BudgetExceeded(m)) => {
            skipped.push(format!("all-orders scan: {m}"));
            None
        }
        Err(e) => return Err(e),
    };
    let theorem1 = if all_orders.is_some() {
        Some(theorem01_check(t, opts.max_vertices)?)
    } else {
        skipped.push("theorem check: needs the all-orders scan".into());
        None
    };
    let graded = if !t.directedness().is_directed() {
        skipped.push("graded structure: the category is not directed".into());
        None
    } else if all_orders.is_none() {
        skipped.push("graded structure: needs the all-orders scan".into());
        None
    } else {
        let g = associated_graded(t)?;
        Some(GradedSummary {
            equivalence: graded_equivalence_check(t, opts.max_vertices)?,
            bimodule_quiver: bimodule_quiver(&g),
        })
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        algebra: AlgebraSummary::of(t),
        directedness: DirectednessSummary::of(t),
        all_orders,
        order_search: orders_algorithm(t),
        theorem1,
        graded,
        closure: Vec::new(),
        l_properties: None,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ex1_10_report_round_trips() {
        let p = fixtures::presentation("ex1_10").unwrap().unwrap();
        let r = analysis_report(&p, &ReportOptions::default()).unwrap();
        let a = r.all_orders.as_ref().unwrap();
        assert!(a.ss_all_orders);
        assert_eq!(a.properly_all_orders, Some(false));
        let json = r.to_json();
        assert_eq!(AnalysisReport::from_json(&json).unwrap(), r);
        assert_eq!(analysis_report(&p, &ReportOptions::default()).unwrap().to_json(), json);
    }

    #[test]
    fn zero_algebra_report() {
        let p = fixtures::presentation("zero").unwrap().unwrap();
        let r = analysis_report(&p, &ReportOptions::default()).unwrap();
        assert_eq!(r.algebra.dim, 0);
        assert_eq!(r.order_search.orders.len(), 1);
    }
}
