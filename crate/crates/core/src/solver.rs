//! One-call optimization facade: decomposition choice, DP dispatch, and
//! witness verification in a single entry point.
//!
//! Branch decompositions only see vertices with incident edges, so isolated
//! vertices are settled here first (forced in, declared infeasible, or
//! dropped, depending on the kind), and residual graphs too small for a
//! decomposition go to the brute-force solver instead.

use crate::decomp::{
    construct_exact, construct_heuristic, DecompError, HeuristicConfig, DEFAULT_EXACT_EDGE_LIMIT,
};
use crate::dp::{self, DpConfig, DpError, DpStats, Mode};
use crate::graph::Vertex;
use crate::instance::{check_domination, DemandVector, Instance, ProblemKind};
use crate::oracle::{brute_min_with, OracleConfig, OracleError};
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct SolveConfig {
    /// Use the exact decomposition up to this many edges, the heuristic
    /// beyond it.
    pub exact_edge_limit: usize,
    pub heuristic: HeuristicConfig,
    pub max_table_len: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            exact_edge_limit: DEFAULT_EXACT_EDGE_LIMIT,
            heuristic: HeuristicConfig::default(),
            max_table_len: DpConfig::default().max_table_len,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// Minimum size and a witness in original ids; `None` when the instance
    /// is infeasible (possible for the total and multiple kinds).
    pub optimum: Option<(u32, Vec<Vertex>)>,
    /// Width of the decomposition the DP ran on, if one was built.
    pub width: Option<usize>,
    /// Whether that width is exact branchwidth.
    pub width_exact: bool,
    /// Per-node DP statistics, when the DP ran.
    pub stats: Option<DpStats>,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Solves the instance to optimality with default configuration.
pub fn solve(instance: &Instance) -> Result<Solution, SolveError> {
    solve_with(instance, &SolveConfig::default())
}

pub fn solve_with(instance: &Instance, cfg: &SolveConfig) -> Result<Solution, SolveError> {
    let g = &instance.graph;
    let demands = &instance.demands;
    let kind = instance.kind;

    // Isolated vertices: members are the only way to meet their demand
    // (vector, multiple with demand 1), or nothing is (total with positive
    // demand, multiple with demand 2+), or they are free to drop.
    let mut forced: Vec<Vertex> = Vec::new();
    let mut keep = vec![true; g.vertex_count()];
    for v in g.vertices() {
        if g.degree(v) > 0 {
            continue;
        }
        keep[v as usize] = false;
        let d = demands.get(v);
        let feasible = match kind {
            ProblemKind::Vector => {
                if d > 0 {
                    forced.push(v);
                }
                true
            }
            ProblemKind::TotalVector => d == 0,
            ProblemKind::Multiple => {
                if d == 1 {
                    forced.push(v);
                }
                d <= 1
            }
        };
        if !feasible {
            return Ok(Solution {
                optimum: None,
                width: None,
                width_exact: false,
                stats: None,
            });
        }
    }

    let (sub, map) = g.induced_subgraph(&keep);
    let sub_demands = DemandVector::new(map.iter().map(|&v| demands.get(v)).collect());

    let (residual, width, width_exact, stats) = if sub.edge_count() == 0 {
        (Some((0, Vec::new())), None, false, None)
    } else if sub.edge_count() < 2 {
        let micro = Instance::new(sub.clone(), sub_demands.clone(), kind, None)
            .expect("demands sized with the graph");
        let cfg = OracleConfig {
            max_vertices: sub.vertex_count(),
            count_optima: false,
        };
        (brute_min_with(&micro, &cfg)?.optimum, None, false, None)
    } else {
        let exact = sub.edge_count() <= cfg.exact_edge_limit;
        let bd = if exact {
            construct_exact(&sub, cfg.exact_edge_limit)?
        } else {
            construct_heuristic(&sub, &cfg.heuristic)?
        };
        let rooted = bd.root_at(0, &sub)?;
        let dp_cfg = DpConfig {
            budget: None,
            max_table_len: cfg.max_table_len,
        };
        let outcome = dp::run(&sub, &sub_demands, Mode::for_kind(kind), &rooted, &dp_cfg)?;
        (
            outcome.optimum,
            Some(bd.width()),
            exact,
            Some(outcome.stats),
        )
    };

    let optimum = match residual {
        None => None,
        Some((size, wit)) => {
            let mut witness = forced;
            witness.extend(wit.iter().map(|&v| map[v as usize]));
            witness.sort_unstable();
            let total = size + witness.len() as u32 - wit.len() as u32;
            debug_assert_eq!(total as usize, witness.len());
            let ok = check_domination(g, demands, kind, &witness)
                .map_err(|e| SolveError::Internal(format!("witness rejected: {e}")))?;
            if !ok {
                return Err(SolveError::Internal(format!(
                    "witness {witness:?} fails verification for {kind:?}"
                )));
            }
            Some((total, witness))
        }
    };

    Ok(Solution {
        optimum,
        width,
        width_exact,
        stats,
    })
}
