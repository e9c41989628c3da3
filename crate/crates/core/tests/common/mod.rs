#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strata::algebra::{build_table, AlgebraTable, Directedness, DEFAULT_LENGTH_CAP};
use strata::module::Rep;
use strata::orders::all_orders;
use strata::stratification::{greedy_filtration, is_standardly_stratified, standard_modules, LinearOrder};
use strata::{Presentation, Quiver, Scalar};

pub const MAX_DIM: usize = 12;
pub const MAX_VERTICES: usize = 4;

/// A random presentation: either an acyclic path algebra, or a quiver with loops and
/// cycles where every path of length 3 vanishes and some length-2 paths are killed or
/// identified.
pub fn random_presentation<K: Scalar>(seed: u64) -> Presentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=MAX_VERTICES);
    let names: Vec<String> = ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let acyclic = rng.gen_bool(0.25);
    if acyclic {
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.4) {
                    arrows.push((format!("a{}", arrows.len()), i, j));
                }
            }
        }
    } else {
        for _ in 0..rng.gen_range(0..=4) {
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            arrows.push((format!("a{}", arrows.len()), s, t));
        }
    }
    let spec: Vec<(String, String, String)> = arrows
        .iter()
        .map(|(a, s, t)| (a.clone(), names[*s].clone(), names[*t].clone()))
        .collect();
    let q = Quiver::new(&names, &spec).expect("generated quiver is valid");
    let mut p = Presentation::new(&format!("random_{seed}"), K::field(), q);
    if acyclic {
        return p;
    }
    // paths in composition order: the arrow applied first is last
    let mut len2: Vec<(Vec<String>, usize, usize)> = Vec::new();
    for (a, s, t) in &arrows {
        for (b, s2, u) in &arrows {
            if s2 == t {
                len2.push((vec![b.clone(), a.clone()], *s, *u));
            }
        }
    }
    for (p2, _, t) in &len2 {
        for (c, s3, _) in &arrows {
            if s3 == t {
                let path = [c.as_str(), p2[0].as_str(), p2[1].as_str()];
                p = p.relation(&[(1, &path)]).expect("monomial relation");
            }
        }
    }
    let mut kept = Vec::new();
    for (path, s, t) in len2 {
        if rng.gen_bool(0.3) {
            let refs: Vec<&str> = path.iter().map(String::as_str).collect();
            p = p.relation(&[(1, &refs)]).expect("monomial relation");
        } else {
            kept.push((path, s, t));
        }
    }
    for i in 0..kept.len() {
        for j in i + 1..kept.len() {
            if (kept[i].1, kept[i].2) == (kept[j].1, kept[j].2) && rng.gen_bool(0.4) {
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                let a: Vec<&str> = kept[i].0.iter().map(String::as_str).collect();
                let b: Vec<&str> = kept[j].0.iter().map(String::as_str).collect();
                p = p.relation(&[(1, &a), (c, &b)]).expect("binomial relation");
            }
        }
    }
    p
}

/// The first `count` random algebras of dimension at most `MAX_DIM`, from consecutive seeds.
pub fn random_algebras<K: Scalar>(count: usize, first_seed: u64) -> Vec<Arc<AlgebraTable<K>>> {
    let mut out = Vec::new();
    let mut seed = first_seed;
    while out.len() < count {
        let p = random_presentation::<K>(seed);
        seed += 1;
        let t = build_table::<K>(&p, DEFAULT_LENGTH_CAP).expect("random algebras are finite");
        if t.dim() <= MAX_DIM {
            out.push(Arc::new(t));
        }
    }
    out
}

/// A quotient of a sum of indecomposable projectives by a randomly generated submodule.
pub fn random_module<K: Scalar>(t: &Arc<AlgebraTable<K>>, rng: &mut impl Rng) -> Rep<K> {
    let n = t.vertex_count();
    if n == 0 {
        return Rep::zero(t.clone());
    }
    let mut parts = Vec::new();
    for v in 0..n {
        for _ in 0..rng.gen_range(0..=2) {
            parts.push(Rep::projective(t.clone(), v));
        }
    }
    if parts.is_empty() {
        parts.push(Rep::projective(t.clone(), rng.gen_range(0..n)));
    }
    let sum = Rep::direct_sum(t.clone(), &parts).expect("same algebra");
    let gens: Vec<Vec<K>> = (0..rng.gen_range(0..=2))
        .map(|_| (0..sum.dim()).map(|_| K::sample(rng)).collect())
        .collect();
    let sub = sum.generated(&gens);
    sum.quotient(&sub).0
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `dim Hom(P_λ, M) = dim e_λ M` for every vertex.
pub fn check_hom_from_projective<K: Scalar>(m: &Rep<K>) -> Result<(), String> {
    let t = m.algebra();
    for v in 0..t.vertex_count() {
        let homs = Rep::projective(t.clone(), v).hom_space(m).map_err(|e| e.to_string())?;
        if homs.len() != m.dims()[v] {
            return Err(format!("{}: dim Hom(P_{v}, M) = {} but dim e_v M = {}", t.name(), homs.len(), m.dims()[v]));
        }
    }
    Ok(())
}

/// The trace of `P_λ` computed from the hom space equals the submodule generated by `e_λ M`.
pub fn check_trace_oracles<K: Scalar>(m: &Rep<K>) -> Result<(), String> {
    let t = m.algebra();
    for v in 0..t.vertex_count() {
        let by_homs = Rep::projective(t.clone(), v).trace_in(m).map_err(|e| e.to_string())?;
        let by_gens = m.generated_by_vertex(v);
        if by_homs != by_gens {
            return Err(format!("{}: traces of P_{v} differ ({} vs {})", t.name(), by_homs.dim(), by_gens.dim()));
        }
    }
    Ok(())
}

/// The inductive trace criterion agrees with the greedy Δ-filtration of the regular module.
pub fn check_ss_oracles<K: Scalar>(t: &Arc<AlgebraTable<K>>, ord: &LinearOrder) -> Result<(), String> {
    let inductive = is_standardly_stratified(t, ord).map_err(|e| e.to_string())?;
    let fam = standard_modules(t, ord).map_err(|e| e.to_string())?;
    let (reg, _) = Rep::regular(t.clone());
    let greedy = greedy_filtration(&fam, &reg).member;
    if inductive != greedy {
        return Err(format!("{} {ord}: inductive {inductive}, greedy {greedy}", t.name()));
    }
    Ok(())
}

pub fn check_ss_oracles_all_orders<K: Scalar>(t: &Arc<AlgebraTable<K>>) -> Result<usize, String> {
    let orders = all_orders(&**t);
    for o in &orders {
        check_ss_oracles(t, o)?;
    }
    Ok(orders.len())
}

/// Orders in which every nonzero block `e_μ A e_λ` with `λ != μ` has `μ` above `λ`.
pub fn linear_extensions<K: Scalar>(t: &Arc<AlgebraTable<K>>) -> Vec<LinearOrder> {
    let d = t.block_dims();
    all_orders(&**t)
        .into_iter()
        .filter(|o| {
            let idx = o.indices(t);
            let rank = |v: usize| idx.iter().position(|&u| u == v).unwrap();
            (0..d.len()).all(|mu| (0..d.len()).all(|l| mu == l || d[mu][l] == 0 || rank(mu) < rank(l)))
        })
        .collect()
}

/// For a directed algebra and any linear extension: `Δ_λ` is the diagonal block
/// `e_λ A e_λ`, and stratification holds exactly when every block is left free.
pub fn check_directed_standard_modules<K: Scalar>(t: &Arc<AlgebraTable<K>>) -> Result<usize, String> {
    if !matches!(t.directedness(), Directedness::Directed { .. }) {
        return Ok(0);
    }
    let d = t.block_dims();
    let n = t.vertex_count();
    let free = (0..n).all(|mu| (0..n).all(|l| mu == l || t.block_left_free(mu, l)));
    let exts = linear_extensions(t);
    for o in &exts {
        let fam = standard_modules(t, o).map_err(|e| e.to_string())?;
        for v in 0..n {
            if fam.modules[v].delta.dim() != d[v][v] {
                return Err(format!("{} {o}: dim Δ_{v} = {} but dim e_v A e_v = {}", t.name(), fam.modules[v].delta.dim(), d[v][v]));
            }
        }
        let ss = is_standardly_stratified(t, o).map_err(|e| e.to_string())?;
        if ss != free {
            return Err(format!("{} {o}: stratified {ss} but blocks left free {free}", t.name()));
        }
    }
    Ok(exts.len())
}
