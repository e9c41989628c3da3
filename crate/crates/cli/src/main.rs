use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use strata::algebra::DEFAULT_LENGTH_CAP;
use strata::closure::{bounded_mono_search, qh_closure_criterion, ClosureVerdict, SearchBounds, TargetFamily};
use strata::graded::{associated_graded, bimodule_quiver, graded_equivalence_check, tensor_algebra_check};
use strata::module::Rep;
use strata::orders::{all_orders_scan, orders_algorithm, theorem01_check, DEFAULT_MAX_VERTICES};
use strata::report::{analysis_report, AlgebraSummary, ReportOptions};
use strata::stratification::{stratification_verdict, LinearOrder};
use strata::{build_table, fixtures, format, with_field, AlgebraTable, Error, FieldSpec, Presentation, Result, Scalar};

#[derive(Parser)]
#[command(name = "strata", version, about = "Stratification analysis of algebras given by quivers with relations")]
struct Cli {
    /// Output format of every subcommand except `report`, which always writes JSON.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, basis paths and the block table `dim e_mu A e_lambda`.
    Basis { algebra: String },
    /// Dimensions and Loewy layers of the indecomposable projectives.
    Projectives {
        algebra: String,
        /// Right projectives `e_lambda A` instead of left ones.
        #[arg(long)]
        right: bool,
    },
    /// Verdicts and standard modules for one linear order.
    Stratify {
        algebra: String,
        /// Vertex names, maximal first, separated by commas.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        order: String,
        #[arg(long)]
        proper: bool,
        #[arg(long)]
        qh: bool,
    },
    /// Stratification verdicts for every linear order.
    AllOrders {
        algebra: String,
        #[arg(long)]
        properly: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// The four equivalent conditions, computed independently.
    CheckTheorem1 {
        algebra: String,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Branching search for the orders whose filtered category is closed under cokernels.
    OrdersAlgorithm { algebra: String },
    /// Associated graded algebra, tensor-algebra test and bimodule quiver.
    Graded {
        algebra: String,
        /// Write the bimodule quiver in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Search for monomorphisms into sums of projectives with cokernels outside F(Δ).
    CokernelClosure {
        algebra: String,
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        order: String,
        /// Search over F_p; defaults to the algebra's field, or F_2 for algebras over Q.
        #[arg(long)]
        prime: Option<u64>,
        /// Per-vertex multiplicity caps, in vertex order.
        #[arg(long, value_delimiter = ',')]
        caps: Option<Vec<usize>>,
        /// Random homomorphisms per target over Q.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also allow non-projective standard modules as target summands.
        #[arg(long)]
        standard_targets: bool,
        /// Use the exact criterion for quasi-hereditary algebras.
        #[arg(long)]
        exact: bool,
    },
    /// Every applicable analysis as one JSON document.
    Report {
        algebra: String,
        /// Write the report here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Field of the closure searches for algebras over Q.
        #[arg(long, default_value_t = 2)]
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
}

impl Command {
    fn algebra(&self) -> &str {
        match self {
            Command::Basis { algebra }
            | Command::Projectives { algebra, .. }
            | Command::Stratify { algebra, .. }
            | Command::AllOrders { algebra, .. }
            | Command::CheckTheorem1 { algebra, .. }
            | Command::OrdersAlgorithm { algebra }
            | Command::Graded { algebra, .. }
            | Command::CokernelClosure { algebra, .. }
            | Command::Report { algebra, .. } => algebra,
        }
    }
}

/// A file path, or the name of a built-in fixture, optionally prefixed by `fixtures/`.
fn load(arg: &str) -> Result<Presentation> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
        return format::parse(&text);
    }
    let name = arg.strip_prefix("fixtures/").unwrap_or(arg);
    let name = name.strip_suffix(".json").unwrap_or(name);
    fixtures::presentation(name).unwrap_or_else(|| Err(Error::Io(format!("{arg}: no such file or built-in fixture"))))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn layer_string(names: &[String], layers: &[Vec<usize>]) -> String {
    layers
        .iter()
        .map(|layer| {
            layer
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| if d == 1 { names[i].clone() } else { format!("{}^{d}", names[i]) })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn basis<K: Scalar>(t: &Arc<AlgebraTable<K>>, json: bool) -> Result<String> {
    let s = AlgebraSummary::of(t);
    if json {
        return Ok(to_json(&s));
    }
    let mut out = String::new();
    writeln!(out, "algebra {} over {}, dimension {}", s.name, s.field, s.dim).unwrap();
    for b in &s.basis {
        writeln!(out, "  {}: {} -> {}", b.label, b.source, b.target).unwrap();
    }
    writeln!(out, "blocks dim e_mu A e_lambda (rows mu, columns lambda):").unwrap();
    writeln!(out, "  {:>6} {}", "", s.vertices.iter().map(|v| format!("{v:>4}")).collect::<String>()).unwrap();
    for (mu, row) in s.block_dims.iter().enumerate() {
        writeln!(out, "  {:>6} {}", s.vertices[mu], row.iter().map(|d| format!("{d:>4}")).collect::<String>()).unwrap();
    }
    Ok(out)
}

fn projectives<K: Scalar>(t: &Arc<AlgebraTable<K>>, right: bool, json: bool) -> Result<String> {
    let side = if right { Arc::new(t.opposite()) } else { t.clone() };
    let names = t.vertices();
    let rows: Vec<(String, usize, Vec<Vec<usize>>)> = (0..t.vertex_count())
        .map(|v| {
            let p = Rep::projective(side.clone(), v);
            (names[v].clone(), p.dim(), p.loewy_layers())
        })
        .collect();
    if json {
        return Ok(to_json(&rows));
    }
    let mut out = String::new();
    let (label, prefix) = if right { ("right", "Q") } else { ("left", "P") };
    writeln!(out, "{label} projectives of {}", t.name()).unwrap();
    for (v, dim, layers) in &rows {
        writeln!(out, "  {prefix}_{v}: dim {dim}, layers {}", layer_string(names, layers)).unwrap();
    }
    Ok(out)
}

fn stratify<K: Scalar>(t: &Arc<AlgebraTable<K>>, order: &str, proper: bool, qh: bool, json: bool) -> Result<String> {
    let ord = LinearOrder::parse(t, order)?;
    let v = stratification_verdict(t, &ord)?;
    if json {
        return Ok(to_json(&v));
    }
    let mut out = String::new();
    writeln!(out, "order {}", if v.order.is_empty() { "(empty)".to_string() } else { v.order.to_string() }).unwrap();
    writeln!(out, "standardly stratified: {}", yes(v.standardly_stratified)).unwrap();
    if proper {
        writeln!(out, "properly stratified: {}", yes(v.properly_stratified)).unwrap();
    }
    if qh {
        writeln!(out, "quasi-hereditary: {}", yes(v.quasi_hereditary)).unwrap();
    }
    let dims: Vec<String> = v.standard_dims.iter().map(|(n, d)| format!("Δ_{n}={d}")).collect();
    writeln!(out, "standard dims: {}", dims.join(" ")).unwrap();
    for s in &v.steps {
        let tr: Vec<String> = s
            .traces
            .iter()
            .map(|(mu, m)| match m {
                Some(k) => format!("{mu}:{k}"),
                None => format!("{mu}:not projective"),
            })
            .collect();
        writeln!(out, "  traces of P_{}: {}", s.vertex, tr.join(" ")).unwrap();
    }
    Ok(out)
}

fn all_orders<K: Scalar>(t: &Arc<AlgebraTable<K>>, properly: bool, max_vertices: usize, json: bool) -> Result<String> {
    let r = all_orders_scan(t, properly, max_vertices)?;
    if json {
        return Ok(to_json(&r));
    }
    let mut out = String::new();
    for v in &r.verdicts {
        write!(out, "{}: standardly stratified {}", v.order, yes(v.standardly_stratified)).unwrap();
        if let Some(p) = v.properly_stratified {
            write!(out, ", properly stratified {}", yes(p)).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "standardly stratified for all orders: {}", yes(r.ss_all_orders)).unwrap();
    if let Some(p) = r.properly_all_orders {
        writeln!(out, "properly stratified for all orders: {}", yes(p)).unwrap();
    }
    Ok(out)
}

fn check_theorem1<K: Scalar>(t: &Arc<AlgebraTable<K>>, max_vertices: usize, json: bool) -> Result<String> {
    let c = theorem01_check(t, max_vertices)?;
    if json {
        return Ok(to_json(&c));
    }
    let mut out = String::new();
    writeln!(out, "stratified for every order:        {}", yes(c.cond1_bruteforce)).unwrap();
    writeln!(out, "directed with J projective:        {}", yes(c.cond2_directed_and_j_projective)).unwrap();
    writeln!(out, "every trace tr_P(P') projective:   {}", yes(c.cond3_all_traces_projective)).unwrap();
    writeln!(out, "pd Δ <= 1 for every order:         {}", yes(c.cond4_pd_bound)).unwrap();
    for w in &c.witnesses {
        writeln!(out, "  {w}").unwrap();
    }
    Ok(out)
}

fn orders_search<K: Scalar>(t: &Arc<AlgebraTable<K>>, json: bool) -> Result<(String, bool)> {
    let r = orders_algorithm(t);
    let alarm = !r.alarms.is_empty();
    if json {
        return Ok((to_json(&r), alarm));
    }
    let mut out = String::new();
    for s in &r.steps {
        let below: Vec<String> = s.below.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        writeln!(
            out,
            "after [{}]: O_1 = {{{}}}, below = {{{}}}, maximal = {{{}}}",
            s.prefix.join(","),
            s.o1.join(","),
            below.join(","),
            s.maximal.join(",")
        )
        .unwrap();
    }
    writeln!(out, "chains:").unwrap();
    for c in &r.chains {
        writeln!(out, "  {}", c.join(">")).unwrap();
    }
    writeln!(out, "orders ({}):", r.orders.len()).unwrap();
    for o in &r.orders {
        writeln!(out, "  {o}").unwrap();
    }
    for a in &r.alarms {
        writeln!(out, "ALARM: {a}").unwrap();
    }
    Ok((out, alarm))
}

fn graded<K: Scalar>(t: &Arc<AlgebraTable<K>>, dot: Option<&Path>, max_vertices: usize, json: bool) -> Result<String> {
    let g = associated_graded(t)?;
    let q = bimodule_quiver(&g);
    if let Some(p) = dot {
        write_file(p, &q.to_dot())?;
    }
    let eq = graded_equivalence_check(t, max_vertices)?;
    if json {
        return Ok(to_json(&(eq, q)));
    }
    let tv = tensor_algebra_check(&g);
    let mut out = String::new();
    let dims: Vec<String> = g.component_dims().iter().map(|d| d.to_string()).collect();
    writeln!(out, "graded dims: ({})", dims.join(", ")).unwrap();
    writeln!(out, "tensor algebra: left {}, right {}", yes(tv.left), yes(tv.right)).unwrap();
    for f in tv.left_detail.failures.iter().map(|f| ("left", f)).chain(tv.right_detail.failures.iter().map(|f| ("right", f))) {
        writeln!(out, "  {}: {}", f.0, f.1).unwrap();
    }
    writeln!(out, "bimodule quiver: left regular {}, regular {}", yes(q.left_regular), yes(q.regular)).unwrap();
    for a in &q.arrows {
        writeln!(
            out,
            "  {} -> {}: dim {}, left free {}, right free {}",
            a.source,
            a.target,
            a.dim,
            yes(a.left_free),
            yes(a.right_free)
        )
        .unwrap();
    }
    writeln!(out, "isomorphic to the algebra: {}", eq.isomorphic).unwrap();
    Ok(out)
}

fn closure<K: Scalar>(t: &Arc<AlgebraTable<K>>, order: &str, bounds: &SearchBounds, exact: bool) -> Result<ClosureVerdict> {
    let ord = LinearOrder::parse(t, order)?;
    if exact {
        qh_closure_criterion(t, &ord)
    } else {
        bounded_mono_search(t, &ord, bounds)
    }
}

fn closure_text(v: &ClosureVerdict) -> String {
    let mut out = String::new();
    let closed = serde_json::to_value(v.closed).expect("enum serializes");
    writeln!(out, "order {} over {}: closed {}", v.order, v.field, closed.as_str().unwrap_or_default()).unwrap();
    writeln!(out, "monomorphisms tested: {}", v.monomorphisms_tested).unwrap();
    if let Some(c) = &v.counterexample {
        let target: Vec<String> = c.target.iter().filter(|(_, k)| *k > 0).map(|(s, k)| format!("{s}^{k}")).collect();
        let coker: Vec<String> = c.cokernel_dims.iter().map(|(n, d)| format!("{n}:{d}")).collect();
        writeln!(out, "counterexample: Δ_{} -> {} with cokernel ({})", c.vertex, target.join(" + "), coker.join(", ")).unwrap();
        for row in &c.hom {
            writeln!(out, "  [{}]", row.join(" ")).unwrap();
        }
    }
    out
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let pres = load(cli.command.algebra())?;
    let json = cli.format == OutputFormat::Json;
    match &cli.command {
        Command::CokernelClosure { order, prime, caps, samples, budget, seed, standard_targets, exact, .. } => {
            let field = match (prime, pres.field) {
                (Some(p), _) => FieldSpec::prime(*p)?,
                (None, FieldSpec::Rationals) if !exact => FieldSpec::prime(2)?,
                (None, f) => f,
            };
            let d = SearchBounds::default();
            let bounds = SearchBounds {
                caps: caps.clone(),
                budget: budget.unwrap_or(d.budget),
                samples: samples.unwrap_or(d.samples),
                seed: seed.unwrap_or(d.seed),
                targets: if *standard_targets { TargetFamily::ProjectiveAndStandard } else { TargetFamily::Projective },
            };
            let over = pres.over(field);
            let v = with_field!(field, K => {
                let t = Arc::new(build_table::<K>(&over, DEFAULT_LENGTH_CAP)?);
                closure(&t, order, &bounds, *exact)?
            })?;
            Ok((if json { to_json(&v) } else { closure_text(&v) }, false))
        }
        Command::Report { json: path, prime, max_vertices, .. } => {
            let opts = ReportOptions { max_vertices: *max_vertices, prime: *prime, ..ReportOptions::default() };
            let r = analysis_report(&pres, &opts)?;
            let text = r.to_json();
            match path {
                Some(p) => {
                    write_file(p, &text)?;
                    Ok((String::new(), false))
                }
                None => Ok((text, false)),
            }
        }
        cmd => with_field!(pres.field, K => {
            let t = Arc::new(build_table::<K>(&pres, DEFAULT_LENGTH_CAP)?);
            match cmd {
                Command::Basis { .. } => basis(&t, json).map(|s| (s, false)),
                Command::Projectives { right, .. } => projectives(&t, *right, json).map(|s| (s, false)),
                Command::Stratify { order, proper, qh, .. } => stratify(&t, order, *proper, *qh, json).map(|s| (s, false)),
                Command::AllOrders { properly, max_vertices, .. } => {
                    all_orders(&t, *properly, *max_vertices, json).map(|s| (s, false))
                }
                Command::CheckTheorem1 { max_vertices, .. } => check_theorem1(&t, *max_vertices, json).map(|s| (s, false)),
                Command::OrdersAlgorithm { .. } => orders_search(&t, json),
                Command::Graded { dot, max_vertices, .. } => {
                    graded(&t, dot.as_deref(), *max_vertices, json).map(|s| (s, false))
                }
                Command::CokernelClosure { .. } | Command::Report { .. } => unreachable!("handled above"),
            }
        })?,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, alarm)) => {
            print!("{out}");
            if alarm {
                ExitCode::from(10)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("strata: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
