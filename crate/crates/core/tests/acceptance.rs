//! One PASS/FAIL line per acceptance criterion. Exits with 10 when the four conditions
//! disagree anywhere (or any other soundness alarm fires), with 1 on other failures.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use strata::algebra::{algebras_isomorphic, Directedness};
use strata::closure::{bounded_mono_search, containment_check, Closed, ClosureVerdict, SearchBounds, TargetFamily};
use strata::graded::{associated_graded, graded_equivalence_check, graded_module_spotcheck, tensor_algebra_check};
use strata::module::{off_diagonal_ideal, Rep};
use strata::orders::{all_orders_scan, orders_algorithm, theorem01_conditions, verify_l_properties, DEFAULT_MAX_VERTICES};
use strata::stratification::{greedy_filtration, is_standardly_stratified, standard_modules, LinearOrder};
use strata::{fixtures, with_field, AlgebraTable, Error, Scalar, Subspace, F2, F3, Q};

enum Failure {
    Alarm(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_alarm() {
            Failure::Alarm(e.to_string())
        } else {
            Failure::Failed(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Failure::Failed(format!($($fmt)+)));
        }
    };
}

fn order<K: Scalar>(t: &AlgebraTable<K>, s: &str) -> Result<LinearOrder, Failure> {
    Ok(LinearOrder::parse(t, s)?)
}

fn names(orders: &[LinearOrder]) -> Vec<String> {
    let mut v: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
    v.sort();
    v
}

fn search<K: Scalar>(t: &Arc<AlgebraTable<K>>, ord: &LinearOrder, targets: TargetFamily) -> Result<ClosureVerdict, Failure> {
    Ok(bounded_mono_search(t, ord, &SearchBounds { targets, ..SearchBounds::default() })?)
}

/// No counterexample against either target family.
fn no_counterexample<K: Scalar>(t: &Arc<AlgebraTable<K>>, ord: &LinearOrder) -> Result<usize, Failure> {
    let mut tested = 0;
    for targets in [TargetFamily::Projective, TargetFamily::ProjectiveAndStandard] {
        let v = search(t, ord, targets)?;
        ensure!(v.closed != Closed::False, "{} {ord} over {}: counterexample {:?}", t.name(), v.field, v.counterexample);
        tested += v.monomorphisms_tested;
    }
    Ok(tested)
}

fn criterion1() -> Outcome {
    let t = fixtures::table::<Q>("ex1_10")?;
    ensure!(t.dim() == 8, "dim A = {}", t.dim());
    let j = off_diagonal_ideal(&t).ok_or_else(|| Failure::Failed("J is not a left ideal".into()))?;
    let d = j.is_projective();
    ensure!(d.projective && d.multiplicities == [0, 1, 2], "J: {d:?}");
    let a = all_orders_scan(&t, true, DEFAULT_MAX_VERTICES)?;
    ensure!(a.ss_all_orders, "not stratified for every order");
    let op = Arc::new(t.opposite());
    let right = off_diagonal_ideal(&op).map(|j| j.is_projective().projective);
    ensure!(right == Some(false), "right J projective: {right:?}");
    ensure!(a.properly_all_orders == Some(false), "properly all orders: {:?}", a.properly_all_orders);
    Ok("dim 8, J = P_y + P_z^2, stratified for all orders, right J not projective, not properly stratified for all orders".into())
}

fn four_way<K: Scalar>(t: &Arc<AlgebraTable<K>>) -> Result<bool, Failure> {
    let c = theorem01_conditions(t, DEFAULT_MAX_VERTICES)?;
    if !c.agree() {
        return Err(Failure::Alarm(format!("{}: conditions disagree: {:?}", t.name(), c)));
    }
    Ok(c.value())
}

fn criterion2() -> Outcome {
    let mut holds = 0;
    let mut total = 0;
    for p in fixtures::all() {
        let h = with_field!(p.field, K => {
            let t = Arc::new(strata::build_table::<K>(&p, strata::algebra::DEFAULT_LENGTH_CAP)?);
            four_way(&t)?
        })?;
        holds += h as usize;
        total += 1;
    }
    for t in common::random_algebras::<Q>(100, 0) {
        holds += four_way(&t)? as usize;
        total += 1;
    }
    for t in common::random_algebras::<F2>(30, 50_000) {
        holds += four_way(&t)? as usize;
        total += 1;
    }
    Ok(format!("{total} algebras (10 fixtures, 130 random), conditions agree everywhere, {holds} satisfy them"))
}

fn criterion3() -> Outcome {
    let t = fixtures::table::<Q>("ex1_10")?;
    let g = associated_graded(&t)?;
    ensure!(g.component_dims() == [4, 3, 1], "graded dims {:?}", g.component_dims());
    let tv = tensor_algebra_check(&g);
    ensure!(tv.left && !tv.right, "tensor check left {} right {}", tv.left, tv.right);
    let rep = graded_equivalence_check(&t, DEFAULT_MAX_VERTICES)?;
    ensure!(rep.isomorphic.starts_with("no"), "isomorphism: {}", rep.isomorphic);
    ensure!(algebras_isomorphic(&t, &g.table).is_no(), "isomorphism not refuted");
    Ok(format!("graded dims (4,3,1), tensor (left, not right), isomorphic: {}", rep.isomorphic))
}

fn criterion4() -> Outcome {
    let t = fixtures::table::<Q>("s4_2")?;
    let res = orders_algorithm(&t);
    let expected = ["y>x>z>w", "y>x>w>z", "y>z>x>w", "y>z>w>x", "y>w>z>x", "y>w>x>z"];
    let mut exp: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    exp.sort();
    ensure!(names(&res.orders) == exp, "search result {:?}", names(&res.orders));
    for o in &res.orders {
        ensure!(is_standardly_stratified(&t, o)?, "{o} not stratified");
        let dims = standard_modules(&t, o)?.dims();
        ensure!(dims == [2, 3, 2, 2], "{o}: standard dims {dims:?}");
    }
    let t2 = fixtures::table::<F2>("s4_2")?;
    let mut tested = 0;
    for o in &res.orders {
        tested += no_counterexample(&t2, &LinearOrder::new(&t2, o.names().to_vec())?)?;
    }
    for a in &res.orders {
        for b in &res.orders {
            ensure!(containment_check(&t, a, b)?, "F({b}) not inside F({a})");
        }
    }
    Ok(format!("six y-first orders, standard dims (2,3,2,2), {tested} monomorphisms over F_2 without counterexample, pairwise containment"))
}

fn criterion5() -> Outcome {
    let t = fixtures::table::<Q>("s4_3")?;
    let res = orders_algorithm(&t);
    let (a, b) = (order(&t, "x>z>y")?, order(&t, "y>x>z")?);
    ensure!(res.orders.contains(&a) && res.orders.contains(&b), "search result {:?}", names(&res.orders));
    let (da, db) = (standard_modules(&t, &a)?.dims(), standard_modules(&t, &b)?.dims());
    ensure!(da == [2, 1, 2] && db == [2, 3, 2], "standard dims {da:?} vs {db:?}");
    let t2 = fixtures::table::<F2>("s4_3")?;
    let tested = no_counterexample(&t2, &order(&t2, "x>z>y")?)?;
    Ok(format!("both orders found, dims (x,y,z) = (2,1,2) vs (2,3,2), x>z>y: {tested} monomorphisms over F_2 without counterexample"))
}

fn criterion6() -> Outcome {
    let t = fixtures::table::<Q>("s4_4")?;
    let res = orders_algorithm(&t);
    ensure!(names(&res.orders) == ["y>x>z"], "search result {:?}", names(&res.orders));
    let (good, bad) = (order(&t, "y>x>z")?, order(&t, "x>z>y")?);
    ensure!(is_standardly_stratified(&t, &bad)?, "x>z>y not stratified");
    ensure!(!containment_check(&t, &good, &bad)?, "F(x>z>y) inside F(y>x>z)");
    ensure!(!containment_check(&t, &bad, &good)?, "F(y>x>z) inside F(x>z>y)");
    let t2 = fixtures::table::<F2>("s4_4")?;
    for o in ["y>x>z", "x>z>y"] {
        let v = search(&t2, &order(&t2, o)?, TargetFamily::Projective)?;
        ensure!(v.closed == Closed::False, "no counterexample for {o}");
    }
    Ok("search result {y>x>z}, x>z>y stratified but excluded, containment fails both ways, counterexamples for both orders".into())
}

fn s4_5_counterexample<K: Scalar>() -> Outcome {
    let t = fixtures::table::<K>("s4_5")?;
    let a = all_orders_scan(&t, false, DEFAULT_MAX_VERTICES)?;
    let ss = a.ss_orders();
    ensure!(!ss.is_empty(), "no stratified order");
    let proj = t.projective_dims();
    ensure!(proj == [6, 3, 2], "projective dims {proj:?}");
    let mut found = Vec::new();
    for o in &ss {
        let dims = standard_modules(&t, o)?.dims();
        ensure!(dims == proj, "{o}: standard dims {dims:?}");
        let v = search(&t, o, TargetFamily::Projective)?;
        let Some(c) = v.counterexample else {
            return Err(Failure::Failed(format!("{o} over {}: no counterexample", v.field)));
        };
        let coker: Vec<usize> = c.cokernel_dims.iter().map(|(_, d)| *d).collect();
        ensure!(coker == [1, 2, 0], "{o}: cokernel dims {:?}", c.cokernel_dims);
        ensure!(!c.filtration.member, "{o}: cokernel has a filtration");
        found.push(format!("{o}: Δ_{} -> {:?}", c.vertex, c.target));
    }
    Ok(format!("{} {}", K::field(), found.join(", ")))
}

fn criterion7() -> Outcome {
    let a = s4_5_counterexample::<F2>()?;
    let b = s4_5_counterexample::<F3>()?;
    Ok(format!("standard dims = projective dims (6,3,2); cokernel (x:1, y:2) outside F over {a} and {b}"))
}

fn criterion8() -> Outcome {
    let t = fixtures::table::<Q>("s4_6")?;
    match t.directedness() {
        Directedness::Cycle { cycle } => ensure!(cycle.len() == 3, "cycle witness {cycle:?}"),
        Directedness::Directed { .. } => return Err(Failure::Failed("reported directed".into())),
    }
    let o = order(&t, "x>z>y")?;
    let along = standard_modules(&t, &o)?.dims_along_order(&t);
    ensure!(along == [2, 1, 2], "standard dims along x>z>y: {along:?}");
    let mut tested = 0;
    let t2 = fixtures::table::<F2>("s4_6")?;
    tested += no_counterexample(&t2, &order(&t2, "x>z>y")?)?;
    let t3 = fixtures::table::<F3>("s4_6")?;
    tested += no_counterexample(&t3, &order(&t3, "x>z>y")?)?;
    let res = orders_algorithm(&t);
    let l = verify_l_properties(&t, &res, std::slice::from_ref(&o))?;
    ensure!(l.closed_in_l.contains(&o) && res.orders.contains(&o), "x>z>y not in the search result");
    Ok(format!("3-cycle witness, dims (Δ_x, Δ_z, Δ_y) = (2,1,2), {tested} monomorphisms over F_2 and F_3 without counterexample, x>z>y confirmed in the search result"))
}

fn subspace_fuzz(rounds: usize) -> Result<(), Failure> {
    fn one<K: Scalar>(rng: &mut impl Rng) -> Result<(), Failure> {
        let n = rng.gen_range(1..7);
        let mut gen = |k: usize| -> Subspace<K> {
            Subspace::from_vectors(n, (0..k).map(|_| (0..n).map(|_| K::from_i64(rng.gen_range(-2..=2))).collect::<Vec<K>>()))
        };
        let (u, w) = (gen(n / 2 + 1), gen(n / 2));
        let (s, i) = (u.sum(&w)?, u.intersect(&w)?);
        ensure!(s.dim() + i.dim() == u.dim() + w.dim(), "dimension formula fails over {}", K::field());
        Ok(())
    }
    let mut rng = common::rng(0xacce);
    for _ in 0..rounds {
        one::<Q>(&mut rng)?;
        one::<F2>(&mut rng)?;
        one::<F3>(&mut rng)?;
    }
    Ok(())
}

fn criterion9() -> Outcome {
    let mut counts = [0usize; 5];
    let fail = Failure::Failed;
    let mut rng = common::rng(9);
    for t in common::random_algebras::<Q>(100, 90_000) {
        for _ in 0..3 {
            let m = common::random_module(&t, &mut rng);
            common::check_trace_oracles(&m).map_err(fail)?;
            common::check_hom_from_projective(&m).map_err(fail)?;
            counts[0] += 1;
        }
    }
    for p in fixtures::all() {
        counts[1] += with_field!(p.field, K => {
            let t = Arc::new(strata::build_table::<K>(&p, strata::algebra::DEFAULT_LENGTH_CAP)?);
            let (reg, _) = Rep::regular(t.clone());
            common::check_trace_oracles(&reg).map_err(fail)?;
            common::check_ss_oracles_all_orders(&t).map_err(fail)?
        })?;
    }
    let fixture_tables: Vec<_> = fixtures::names().map(fixtures::table::<Q>).collect::<Result<_, _>>()?;
    for t in &fixture_tables {
        counts[2] += common::check_directed_standard_modules(t).map_err(fail)?;
    }
    let randoms = common::random_algebras::<Q>(100, 91_000);
    for t in fixture_tables.iter().chain(&randoms).filter(|t| t.directedness().is_directed()) {
        graded_module_spotcheck(t)?;
        associated_graded(&**t)?;
        counts[3] += 1;
    }
    subspace_fuzz(500)?;
    counts[4] = 500;
    // the greedy test on a module known to have no filtration
    let t = fixtures::table::<Q>("s4_5")?;
    let fam = standard_modules(&t, &order(&t, "x>y>z")?)?;
    ensure!(!greedy_filtration(&fam, &Rep::simple(t.clone(), 1)).member, "S_y filtered by standard modules of s4_5");
    Ok(format!(
        "{} random modules, {} (fixture, order) oracle pairs, {} directed linear extensions, {} graded spot-checks, {} fuzz rounds",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("ex1_10 stratification", criterion1),
        ("four conditions agree", criterion2),
        ("ex1_10 graded algebra", criterion3),
        ("s4_2 search and closure", criterion4),
        ("s4_3 two orders", criterion5),
        ("s4_4 single order", criterion6),
        ("s4_5 counterexample", criterion7),
        ("s4_6 cycle", criterion8),
        ("property suites", criterion9),
    ];
    let mut code = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_millis();
        match out {
            Ok(msg) => println!("criterion {} PASS [{name}] ({ms} ms): {msg}", i + 1),
            Err(Failure::Failed(msg)) => {
                println!("criterion {} FAIL [{name}] ({ms} ms): {msg}", i + 1);
                if code == 0 {
                    code = 1;
                }
            }
            Err(Failure::Alarm(msg)) => {
                println!("criterion {} FAIL [{name}] ({ms} ms): ALARM {msg}", i + 1);
                code = 10;
            }
        }
    }
    ExitCode::from(code)
}
