//! Command-line front end: solve, decide, width, kernelize, verify, bench.
//!
//! Machine-readable results go to standard output as one JSON document
//! (schema_version 1); human-readable remarks go to standard error. Exit
//! status: 0 for success or YES, 1 for NO (or an infeasible optimum),
//! 2 for errors. Vertices are 1-based in files and in emitted witnesses.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use vecdom::decomp::{
    branchwidth_exact, construct_heuristic, HeuristicConfig, DEFAULT_EXACT_EDGE_LIMIT,
};
use vecdom::io::{emit_instance, parse_instance, ParsedInstance};
use vecdom::oracle::{brute_min, OracleResult};
use vecdom::planar::{decide_with, kernelize, DecideConfig, Diagnostics};
use vecdom::solver::{solve_with, SolveConfig};
use vecdom::{bench, check_domination, Instance, ProblemKind, Vertex};

#[derive(Parser)]
#[command(
    name = "vecdom",
    about = "Vector domination solvers over branch decompositions",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Vector,
    Total,
    Multiple,
}

impl KindArg {
    fn kind(self) -> ProblemKind {
        match self {
            KindArg::Vector => ProblemKind::Vector,
            KindArg::Total => ProblemKind::TotalVector,
            KindArg::Multiple => ProblemKind::Multiple,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance to optimality.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Vector)]
        kind: KindArg,
    },
    /// Decide whether a solution of size at most K exists.
    Decide {
        file: PathBuf,
        #[arg(short)]
        k: u32,
        #[arg(long, value_enum, default_value_t = KindArg::Vector)]
        kind: KindArg,
    },
    /// Print the width of a constructed branch decomposition.
    Bw {
        file: PathBuf,
        /// Exact branchwidth (only under the edge cap) instead of the
        /// heuristic upper bound.
        #[arg(long)]
        exact: bool,
    },
    /// Reduce a vector instance against a budget and print the kernel.
    Kernelize {
        file: PathBuf,
        #[arg(short)]
        k: u32,
        #[arg(long, value_enum, default_value_t = KindArg::Vector)]
        kind: KindArg,
        /// Print only the reduced instance text, no JSON wrapper.
        #[arg(long)]
        raw: bool,
    },
    /// Cross-check the solver against the brute-force oracle.
    Verify {
        /// A single instance file.
        file: Option<PathBuf>,
        /// A directory of instance files, processed concurrently.
        #[arg(long, conflicts_with = "file")]
        dir: Option<PathBuf>,
        /// Restrict to one kind; all three are checked by default.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Worker threads for directory mode.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run the scaling suite on generated grids and cycles, emitting CSV.
    Bench {
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep only cases whose label starts with this prefix.
        #[arg(long)]
        only: Option<String>,
    },
}

/// The one emitted JSON shape; unused sections stay absent.
#[derive(Serialize, Default)]
struct ResultDocument {
    schema_version: u32,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<&'static str>,
    n: usize,
    m: usize,
    d_star: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimum: Option<u32>,
    /// Present on feasible solves and YES decisions; 1-based ids.
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    infeasible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    width_exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bstar: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<Diagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduced_instance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    forced: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget_after: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rounds: Option<u32>,
    wall_ms: f64,
}

impl ResultDocument {
    fn new(command: &'static str, parsed: &ParsedInstance) -> Self {
        ResultDocument {
            schema_version: 1,
            command,
            n: parsed.graph.vertex_count(),
            m: parsed.graph.edge_count(),
            d_star: parsed.demands.max_demand(),
            ..Default::default()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type AnyError = Box<dyn std::error::Error + Send + Sync>;

/// Heuristic seed from the environment, default 0.
fn seed_from_env() -> Result<u64, AnyError> {
    match std::env::var("VECDOM_SEED") {
        Ok(s) => Ok(s
            .parse::<u64>()
            .map_err(|_| format!("VECDOM_SEED must be an unsigned integer, got {s:?}"))?),
        Err(_) => Ok(0),
    }
}

fn heuristic_config() -> Result<HeuristicConfig, AnyError> {
    Ok(HeuristicConfig {
        seed: seed_from_env()?,
        ..HeuristicConfig::default()
    })
}

fn load(path: &Path) -> Result<ParsedInstance, AnyError> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn one_based(set: &[Vertex]) -> Vec<u32> {
    set.iter().map(|&v| v + 1).collect()
}

fn emit(doc: &ResultDocument) -> Result<(), AnyError> {
    println!("{}", serde_json::to_string_pretty(doc)?);
    Ok(())
}

/// Re-checks a witness right before emission; failure is a solver bug.
fn certify(parsed: &ParsedInstance, kind: ProblemKind, witness: &[Vertex]) -> Result<(), AnyError> {
    let ok = check_domination(&parsed.graph, &parsed.demands, kind, witness)?;
    if !ok {
        return Err(format!("emitted witness {witness:?} fails verification").into());
    }
    Ok(())
}

fn run(cmd: Cmd) -> Result<u8, AnyError> {
    match cmd {
        Cmd::Solve { file, kind } => cmd_solve(&file, kind.kind()),
        Cmd::Decide { file, k, kind } => cmd_decide(&file, k, kind.kind()),
        Cmd::Bw { file, exact } => cmd_bw(&file, exact),
        Cmd::Kernelize { file, k, kind, raw } => cmd_kernelize(&file, k, kind.kind(), raw),
        Cmd::Verify {
            file,
            dir,
            kind,
            threads,
        } => cmd_verify(file, dir, kind.map(KindArg::kind), threads),
        Cmd::Bench { out, only } => cmd_bench(out, only),
    }
}

fn cmd_solve(file: &Path, kind: ProblemKind) -> Result<u8, AnyError> {
    let parsed = load(file)?;
    let cfg = SolveConfig {
        heuristic: heuristic_config()?,
        ..SolveConfig::default()
    };
    let instance = Instance::new(parsed.graph.clone(), parsed.demands.clone(), kind, None)?;
    let start = Instant::now();
    let sol = solve_with(&instance, &cfg)?;
    let mut doc = ResultDocument::new("solve", &parsed);
    doc.kind = Some(kind.name());
    doc.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    doc.width = sol.width;
    doc.width_exact = sol.width.map(|_| sol.width_exact);
    match &sol.optimum {
        Some((size, witness)) => {
            certify(&parsed, kind, witness)?;
            doc.optimum = Some(*size);
            doc.witness = Some(one_based(witness));
            emit(&doc)?;
            eprintln!("optimum {size}, witness of size {}", witness.len());
            Ok(0)
        }
        None => {
            doc.infeasible = Some(true);
            emit(&doc)?;
            eprintln!("infeasible: no set of any size works");
            Ok(1)
        }
    }
}

fn cmd_decide(file: &Path, k: u32, kind: ProblemKind) -> Result<u8, AnyError> {
    let parsed = load(file)?;
    let cfg = DecideConfig {
        heuristic: heuristic_config()?,
        ..DecideConfig::default()
    };
    let instance = Instance::new(parsed.graph.clone(), parsed.demands.clone(), kind, Some(k))?;
    let start = Instant::now();
    let decision = decide_with(&instance, k, &cfg)?;
    let mut doc = ResultDocument::new("decide", &parsed);
    doc.kind = Some(kind.name());
    doc.k = Some(k);
    doc.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    doc.bstar = Some(decision.diagnostics.bstar);
    doc.width = decision.diagnostics.width;
    if decision.yes {
        let witness = decision.witness.as_deref().unwrap_or(&[]);
        certify(&parsed, kind, witness)?;
        doc.verdict = Some("yes");
        doc.witness = Some(one_based(witness));
        doc.diagnostics = Some(decision.diagnostics);
        emit(&doc)?;
        eprintln!("yes: witness of size {} within budget {k}", witness.len());
        Ok(0)
    } else {
        doc.verdict = Some("no");
        doc.diagnostics = Some(decision.diagnostics);
        emit(&doc)?;
        eprintln!("no: nothing of size at most {k}");
        Ok(1)
    }
}

fn cmd_bw(file: &Path, exact: bool) -> Result<u8, AnyError> {
    let parsed = load(file)?;
    let start = Instant::now();
    let width = if parsed.graph.edge_count() < 2 {
        // Convention: graphs without two edges have width zero.
        0
    } else if exact {
        branchwidth_exact(&parsed.graph, DEFAULT_EXACT_EDGE_LIMIT)?
    } else {
        construct_heuristic(&parsed.graph, &heuristic_config()?)?.width()
    };
    let mut doc = ResultDocument::new("bw", &parsed);
    doc.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    doc.width = Some(width);
    doc.width_exact = Some(exact || parsed.graph.edge_count() < 2);
    emit(&doc)?;
    eprintln!(
        "{} width {width}",
        if exact { "exact" } else { "heuristic" }
    );
    Ok(0)
}

fn cmd_kernelize(file: &Path, k: u32, kind: ProblemKind, raw: bool) -> Result<u8, AnyError> {
    let parsed = load(file)?;
    let start = Instant::now();
    let kr = kernelize(&parsed.graph, &parsed.demands, kind, k)?;
    let reduced = emit_instance(&kr.graph, &kr.demands);
    if raw {
        print!("{reduced}");
    } else {
        let mut doc = ResultDocument::new("kernelize", &parsed);
        doc.kind = Some(kind.name());
        doc.k = Some(k);
        doc.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        doc.verdict = kr.verdict.map(|v| if v { "yes" } else { "no" });
        doc.reduced_instance = Some(reduced);
        doc.forced = Some(one_based(&kr.forced));
        doc.budget_after = Some(kr.budget);
        doc.rounds = Some(kr.rounds);
        emit(&doc)?;
    }
    eprintln!(
        "{} rounds, {} forced, budget {} left{}",
        kr.rounds,
        kr.forced.len(),
        kr.budget,
        match kr.verdict {
            Some(true) => ", verdict yes",
            Some(false) => ", verdict no",
            None => "",
        }
    );
    Ok(if kr.verdict == Some(false) { 1 } else { 0 })
}

#[derive(Serialize)]
struct VerifyRow {
    file: String,
    kind: &'static str,
    solver: Option<u32>,
    oracle: Option<u32>,
    matches: bool,
}

fn cmd_verify(
    file: Option<PathBuf>,
    dir: Option<PathBuf>,
    kind: Option<ProblemKind>,
    threads: Option<usize>,
) -> Result<u8, AnyError> {
    let files: Vec<PathBuf> = match (file, dir) {
        (Some(f), None) => vec![f],
        (None, Some(d)) => {
            let mut v: Vec<PathBuf> = fs::read_dir(&d)
                .map_err(|e| format!("cannot read {}: {e}", d.display()))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            v.sort();
            if v.is_empty() {
                return Err(format!("no files in {}", d.display()).into());
            }
            v
        }
        _ => return Err("pass an instance file or --dir".into()),
    };
    let kinds: Vec<ProblemKind> = match kind {
        Some(k) => vec![k],
        None => ProblemKind::ALL.to_vec(),
    };
    let cfg = SolveConfig {
        heuristic: heuristic_config()?,
        ..SolveConfig::default()
    };

    let check_file = |path: &PathBuf| -> Result<Vec<VerifyRow>, AnyError> {
        let parsed = load(path)?;
        let mut rows = Vec::new();
        for &kind in &kinds {
            let instance =
                Instance::new(parsed.graph.clone(), parsed.demands.clone(), kind, None)?;
            let sol = solve_with(&instance, &cfg)?;
            let oracle: OracleResult = brute_min(&instance)?;
            let solver_size = sol.optimum.as_ref().map(|(s, _)| *s);
            let oracle_size = oracle.optimum.as_ref().map(|(s, _)| *s);
            if let Some((_, witness)) = &sol.optimum {
                certify(&parsed, kind, witness)?;
            }
            rows.push(VerifyRow {
                file: path.display().to_string(),
                kind: kind.name(),
                solver: solver_size,
                oracle: oracle_size,
                matches: solver_size == oracle_size,
            });
        }
        Ok(rows)
    };

    let start = Instant::now();
    let results: Vec<Result<Vec<VerifyRow>, AnyError>> = if files.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.unwrap_or(0))
            .build()
            .map_err(|e| format!("thread pool: {e}"))?;
        pool.install(|| {
            use rayon::prelude::*;
            files.par_iter().map(check_file).collect()
        })
    } else {
        files.iter().map(check_file).collect()
    };

    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    let mismatches = rows.iter().filter(|r| !r.matches).count();
    println!("{}", serde_json::to_string_pretty(&rows)?);
    eprintln!(
        "checked {} file(s) x {} kind(s) in {:.1} ms, {mismatches} mismatch(es)",
        files.len(),
        kinds.len(),
        start.elapsed().as_secs_f64() * 1e3
    );
    Ok(if mismatches == 0 { 0 } else { 1 })
}

fn cmd_bench(out: Option<PathBuf>, only: Option<String>) -> Result<u8, AnyError> {
    let cfg = SolveConfig {
        heuristic: heuristic_config()?,
        ..SolveConfig::default()
    };
    let cases: Vec<bench::BenchCase> = bench::default_cases()
        .into_iter()
        .filter(|c| only.as_ref().is_none_or(|p| c.label.starts_with(p)))
        .collect();
    if cases.is_empty() {
        return Err("the --only prefix filtered out every case".into());
    }
    let rows = bench::run_cases(&cases, &cfg)?;
    let csv = bench::to_csv(&rows);
    match out {
        Some(path) => {
            fs::write(&path, &csv).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            eprintln!("{} rows to {}", rows.len(), path.display());
        }
        None => print!("{csv}"),
    }
    Ok(0)
}
