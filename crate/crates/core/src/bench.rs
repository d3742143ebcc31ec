//! Scaling harness over generated instances with known structure.
//!
//! Grids and cycles keep planarity and width under control while the
//! demand level drives the DP's color radix, which is where the runtime
//! lives. Rows record enough to see the width/demand scaling: achieved
//! decomposition width, total merge pairs (the DP's work measure), and
//! wall time.

use crate::generate::{cycle, grid};
use crate::graph::Graph;
use crate::instance::{DemandVector, Instance, ProblemKind};
use crate::solver::{solve_with, SolveConfig, SolveError};
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct BenchCase {
    pub label: String,
    pub graph: Graph,
    pub demand: u32,
    pub kind: ProblemKind,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub label: String,
    pub kind: ProblemKind,
    pub n: usize,
    pub m: usize,
    pub d_star: u32,
    pub width: Option<usize>,
    pub millis: f64,
    pub optimum: Option<u32>,
    /// Total merge pairs enumerated by the DP.
    pub pairs: u64,
}

/// Grids 3x3 and 4x4 plus two cycles, at demand levels 1 and 2, for all
/// three problem kinds.
pub fn default_cases() -> Vec<BenchCase> {
    let shapes: [(&str, Graph); 4] = [
        ("grid3x3", grid(3, 3)),
        ("grid4x4", grid(4, 4)),
        ("cycle8", cycle(8)),
        ("cycle12", cycle(12)),
    ];
    let mut cases = Vec::new();
    for (name, g) in shapes {
        for demand in [1u32, 2] {
            for kind in ProblemKind::ALL {
                cases.push(BenchCase {
                    label: format!("{name}_d{demand}"),
                    graph: g.clone(),
                    demand,
                    kind,
                });
            }
        }
    }
    cases
}

pub fn run_cases(cases: &[BenchCase], cfg: &SolveConfig) -> Result<Vec<BenchRow>, SolveError> {
    let mut rows = Vec::with_capacity(cases.len());
    for case in cases {
        let demands = DemandVector::uniform(case.graph.vertex_count(), case.demand);
        let instance = Instance::new(case.graph.clone(), demands, case.kind, None)
            .expect("demands sized with the graph");
        let start = Instant::now();
        let sol = solve_with(&instance, cfg)?;
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let pairs = sol
            .stats
            .as_ref()
            .map(|s| {
                s.edges
                    .iter()
                    .filter_map(|e| e.merge.as_ref())
                    .map(|m| m.pairs)
                    .sum()
            })
            .unwrap_or(0);
        rows.push(BenchRow {
            label: case.label.clone(),
            kind: case.kind,
            n: case.graph.vertex_count(),
            m: case.graph.edge_count(),
            d_star: instance.demands.max_demand(),
            width: sol.width,
            millis,
            optimum: sol.optimum.map(|(s, _)| s),
            pairs,
        });
    }
    Ok(rows)
}

/// Renders rows as CSV with a header line.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("instance,kind,n,m,d_star,width,millis,optimum,pairs\n");
    for r in rows {
        let width = r.width.map(|w| w.to_string()).unwrap_or_default();
        let optimum = r.optimum.map(|o| o.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.3},{},{}",
            r.label,
            r.kind.name(),
            r.n,
            r.m,
            r.d_star,
            width,
            r.millis,
            optimum,
            r.pairs
        );
    }
    out
}
