//! Decision pipeline for bounded-budget instances.
//!
//! Decides "is there a solution of size at most k" by reducing the instance
//! first and solving the remainder over a branch decomposition. On planar
//! inputs the reduced instance has branchwidth at most `b*(k, z)`, which
//! bounds the table sizes; the pipeline never relies on planarity for
//! correctness, only for that runtime guarantee. Reductions: per-kind
//! handling of isolated vertices, removal of irrelevant vertices (zero
//! demand, all neighbors zero demand), and, for the plain vector problem,
//! repeatedly committing all vertices whose demand exceeds the remaining
//! budget.

use crate::decomp::{
    construct_exact, construct_heuristic, DecompError, HeuristicConfig, DEFAULT_EXACT_EDGE_LIMIT,
};
use crate::dp::{self, DpConfig, DpError, Mode};
use crate::graph::{Graph, Vertex};
use crate::instance::{check_domination, DemandVector, Instance, ProblemKind};
use crate::oracle::{brute_min, OracleError};
use serde::Serialize;
use thiserror::Error;

/// Outcome of [`remove_irrelevant`].
#[derive(Debug, Clone)]
pub struct Removal {
    pub graph: Graph,
    pub demands: DemandVector,
    /// Surviving vertex ids in the input graph, indexed by new id.
    pub map: Vec<Vertex>,
    /// Deleted vertex ids in the input graph.
    pub removed: Vec<Vertex>,
}

/// Deletes vertices with zero demand whose neighbors all have zero demand,
/// repeatedly until none is left. Such a vertex needs nothing and can only
/// help vertices that need nothing, so the optimum of all three problem
/// kinds is unchanged.
pub fn remove_irrelevant(g: &Graph, demands: &DemandVector) -> Removal {
    let n = g.vertex_count();
    let mut keep = vec![true; n];
    let mut removed: Vec<Vertex> = Vec::new();
    loop {
        let mut changed = false;
        for v in g.vertices() {
            if !keep[v as usize] || demands.get(v) != 0 {
                continue;
            }
            let zero_hood = g
                .neighbors(v)
                .iter()
                .all(|&u| !keep[u as usize] || demands.get(u) == 0);
            if zero_hood {
                keep[v as usize] = false;
                removed.push(v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let (graph, map) = g.induced_subgraph(&keep);
    let demands = DemandVector::new(map.iter().map(|&v| demands.get(v)).collect());
    Removal {
        graph,
        demands,
        map,
        removed,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("kernelization applies to the plain vector problem, not {}", .0.name())]
    UnsupportedKind(ProblemKind),
}

/// Outcome of [`kernelize`]. Vertex ids in `forced` refer to the input
/// graph; `map` translates reduced ids back to input ids.
#[derive(Debug, Clone)]
pub struct KernelResult {
    pub graph: Graph,
    pub demands: DemandVector,
    /// Remaining budget after committing the forced vertices.
    pub budget: u32,
    /// Vertices committed to every small-enough solution.
    pub forced: Vec<Vertex>,
    /// Early verdict, when the reduction already decides the instance.
    pub verdict: Option<bool>,
    pub rounds: u32,
    pub map: Vec<Vertex>,
}

/// Budget-driven reduction for the plain vector problem.
///
/// While some demand exceeds the remaining budget, every vertex of maximum
/// demand must belong to any solution within budget (a non-member could
/// never collect that many neighbors from a set smaller than its demand).
/// Each round commits all of them, discharges their neighbors' demands, and
/// shrinks the budget; it ends with max demand at most the leftover budget
/// or with a verdict. Only valid where members need no domination
/// themselves, hence the kind restriction.
pub fn kernelize(
    g: &Graph,
    demands: &DemandVector,
    kind: ProblemKind,
    k: u32,
) -> Result<KernelResult, KernelError> {
    if kind != ProblemKind::Vector {
        return Err(KernelError::UnsupportedKind(kind));
    }
    let mut graph = g.clone();
    let mut demands = demands.clone();
    let mut map: Vec<Vertex> = (0..g.vertex_count() as Vertex).collect();
    let mut forced: Vec<Vertex> = Vec::new();
    let mut budget = k;
    let mut rounds = 0;

    loop {
        let d_star = demands.max_demand();
        if d_star <= budget {
            break;
        }
        rounds += 1;
        let vmax: Vec<Vertex> = graph
            .vertices()
            .filter(|&v| demands.get(v) == d_star)
            .collect();
        if (budget as usize) < vmax.len() {
            return Ok(KernelResult {
                graph,
                demands,
                budget,
                forced,
                verdict: Some(false),
                rounds,
                map,
            });
        }
        forced.extend(vmax.iter().map(|&v| map[v as usize]));
        budget -= vmax.len() as u32;
        if vmax.len() == graph.vertex_count() {
            // Everything is committed; the committed set itself is the
            // witness, so the answer is yes.
            let empty = Graph::new(0, &[]).expect("empty graph");
            return Ok(KernelResult {
                graph: empty,
                demands: DemandVector::new(Vec::new()),
                budget,
                forced,
                verdict: Some(true),
                rounds,
                map: Vec::new(),
            });
        }
        let mut keep = vec![true; graph.vertex_count()];
        for &v in &vmax {
            keep[v as usize] = false;
        }
        let discharged: Vec<u32> = graph
            .vertices()
            .filter(|&v| keep[v as usize])
            .map(|v| {
                let inside = g_count_neighbors(&graph, v, &keep);
                demands.get(v).saturating_sub(inside)
            })
            .collect();
        let (next, sub_map) = graph.induced_subgraph(&keep);
        map = sub_map.iter().map(|&v| map[v as usize]).collect();
        graph = next;
        demands = DemandVector::new(discharged);
    }

    Ok(KernelResult {
        graph,
        demands,
        budget,
        forced,
        verdict: None,
        rounds,
        map,
    })
}

/// Number of `v`'s neighbors about to be deleted (`keep[u]` false).
fn g_count_neighbors(g: &Graph, v: Vertex, keep: &[bool]) -> u32 {
    g.neighbors(v)
        .iter()
        .filter(|&&u| !keep[u as usize])
        .count() as u32
}

/// Width bound for reduced planar instances: `min{12√(k+z)+9, 20√k+17}`,
/// floored since branchwidth is integral.
pub fn bstar(k: u32, z: u32) -> u32 {
    let a = 12.0 * f64::from(k + z).sqrt() + 9.0;
    let b = 20.0 * f64::from(k).sqrt() + 17.0;
    a.min(b).floor() as u32
}

/// How the width bound interacted with the decomposition actually built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthGate {
    /// Achieved width within the bound.
    Passed,
    /// Heuristic width above the bound; not a certificate, so the DP ran
    /// anyway (its answer is exact on any valid decomposition).
    AdvisoryExceeded,
    /// Exact width above the bound: on a planar input that alone refutes
    /// the instance.
    CertifiedNo,
    /// Reduction decided the instance before any decomposition was built.
    Skipped,
}

/// Trace of the pipeline, serialized into machine-readable results.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub kind: ProblemKind,
    /// Vertices deleted as irrelevant or as unneeded isolates (input ids).
    pub removed: Vec<Vertex>,
    /// Vertices committed to the solution during reduction (input ids).
    pub forced: Vec<Vertex>,
    pub kernel_rounds: u32,
    /// Budget left for the residual instance handed to the solver.
    pub residual_budget: u32,
    /// Zero-demand vertices in the residual instance.
    pub z: u32,
    pub bstar: u32,
    /// Width of the decomposition the DP ran on, if one was built.
    pub width: Option<usize>,
    /// Whether that width is exact branchwidth rather than an upper bound.
    pub width_exact: bool,
    pub gate: WidthGate,
}

/// A decision with its witness and trace. `witness` is present exactly on
/// yes-instances and uses the original vertex ids.
#[derive(Debug, Clone)]
pub struct Decision {
    pub yes: bool,
    pub witness: Option<Vec<Vertex>>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Error)]
pub enum DecideError {
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

#[derive(Debug, Clone)]
pub struct DecideConfig {
    /// Use the exact decomposition when the residual has at most this many
    /// edges; the heuristic otherwise.
    pub exact_edge_limit: usize,
    pub heuristic: HeuristicConfig,
    pub max_table_len: u64,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig {
            exact_edge_limit: DEFAULT_EXACT_EDGE_LIMIT,
            heuristic: HeuristicConfig::default(),
            max_table_len: DpConfig::default().max_table_len,
        }
    }
}

/// Decides whether the instance has a solution of size at most `k`.
pub fn decide(instance: &Instance, k: u32) -> Result<Decision, DecideError> {
    decide_with(instance, k, &DecideConfig::default())
}

/// Tracks the shrinking instance together with the translation back to
/// original ids and the budget spent on forced vertices.
struct Pipeline {
    graph: Graph,
    demands: DemandVector,
    map: Vec<Vertex>,
    forced: Vec<Vertex>,
    removed: Vec<Vertex>,
    budget: u32,
    kernel_rounds: u32,
}

impl Pipeline {
    /// Applies the per-kind isolated-vertex policy: an isolated vertex is
    /// deleted, after either committing it (when only membership can meet
    /// its demand) or refuting the instance (when nothing can).
    fn strip_isolated(&mut self, kind: ProblemKind) -> Option<bool> {
        let mut keep = vec![true; self.graph.vertex_count()];
        for v in self.graph.vertices() {
            if self.graph.degree(v) > 0 {
                continue;
            }
            keep[v as usize] = false;
            let d = self.demands.get(v);
            match kind {
                ProblemKind::Vector => {
                    if d > 0 {
                        self.forced.push(self.map[v as usize]);
                    } else {
                        self.removed.push(self.map[v as usize]);
                    }
                }
                ProblemKind::TotalVector => {
                    if d > 0 {
                        return Some(false);
                    }
                    self.removed.push(self.map[v as usize]);
                }
                ProblemKind::Multiple => match d {
                    0 => self.removed.push(self.map[v as usize]),
                    1 => self.forced.push(self.map[v as usize]),
                    _ => return Some(false),
                },
            }
        }
        self.apply_keep(&keep);
        None
    }

    fn apply_keep(&mut self, keep: &[bool]) {
        if keep.iter().all(|&b| b) {
            return;
        }
        let (graph, sub_map) = self.graph.induced_subgraph(keep);
        self.demands = DemandVector::new(
            sub_map
                .iter()
                .map(|&v| self.demands.get(v))
                .collect::<Vec<u32>>(),
        );
        self.map = sub_map.iter().map(|&v| self.map[v as usize]).collect();
        self.graph = graph;
    }
}

pub fn decide_with(
    instance: &Instance,
    k: u32,
    cfg: &DecideConfig,
) -> Result<Decision, DecideError> {
    let kind = instance.kind;
    let mut pipe = Pipeline {
        graph: instance.graph.clone(),
        demands: instance.demands.clone(),
        map: (0..instance.graph.vertex_count() as Vertex).collect(),
        forced: Vec::new(),
        removed: Vec::new(),
        budget: k,
        kernel_rounds: 0,
    };

    let no = |pipe: &Pipeline, gate: WidthGate, z_b: Option<(u32, u32)>, width: Option<usize>| {
        let (z, b) = z_b.unwrap_or((0, 0));
        Decision {
            yes: false,
            witness: None,
            diagnostics: Diagnostics {
                kind,
                removed: pipe.removed.clone(),
                forced: pipe.forced.clone(),
                kernel_rounds: pipe.kernel_rounds,
                residual_budget: pipe.budget,
                z,
                bstar: b,
                width,
                width_exact: false,
                gate,
            },
        }
    };

    // Isolated vertices never appear in a branch decomposition, so they are
    // settled before anything else looks at the graph.
    if pipe.strip_isolated(kind) == Some(false) {
        return Ok(no(&pipe, WidthGate::Skipped, None, None));
    }
    if pipe.forced.len() as u32 > k {
        return Ok(no(&pipe, WidthGate::Skipped, None, None));
    }
    pipe.budget = k - pipe.forced.len() as u32;

    let removal = remove_irrelevant(&pipe.graph, &pipe.demands);
    pipe.removed
        .extend(removal.removed.iter().map(|&v| pipe.map[v as usize]));
    pipe.map = removal.map.iter().map(|&v| pipe.map[v as usize]).collect();
    pipe.graph = removal.graph;
    pipe.demands = removal.demands;

    match kind {
        ProblemKind::Vector => {
            let kr = kernelize(&pipe.graph, &pipe.demands, kind, pipe.budget)
                .expect("kind is vector here");
            pipe.kernel_rounds = kr.rounds;
            pipe.forced
                .extend(kr.forced.iter().map(|&v| pipe.map[v as usize]));
            pipe.budget = kr.budget;
            pipe.map = kr.map.iter().map(|&v| pipe.map[v as usize]).collect();
            pipe.graph = kr.graph;
            pipe.demands = kr.demands;
            match kr.verdict {
                Some(false) => return Ok(no(&pipe, WidthGate::Skipped, None, None)),
                Some(true) => {
                    let witness = pipe.forced.clone();
                    return finish_yes(instance, k, witness, pipe, None);
                }
                None => {}
            }
            // Committing vertices can strand positive-demand isolates.
            if pipe.strip_isolated(kind) == Some(false)
                || pipe.forced.len() as u32 > k
            {
                return Ok(no(&pipe, WidthGate::Skipped, None, None));
            }
            pipe.budget = k - pipe.forced.len() as u32;
        }
        ProblemKind::TotalVector | ProblemKind::Multiple => {
            // Any solution has at least d* vertices: a demand of d needs d
            // distinct set vertices around (or at) its holder.
            if pipe.demands.max_demand() > pipe.budget {
                return Ok(no(&pipe, WidthGate::Skipped, None, None));
            }
        }
    }

    let z = pipe.demands.as_slice().iter().filter(|&&d| d == 0).count() as u32;
    let b = bstar(pipe.budget, z);

    // Residuals too small for a decomposition are solved directly.
    if pipe.graph.vertex_count() == 0 {
        return finish_yes(instance, k, pipe.forced.clone(), pipe, Some((z, b)));
    }
    if pipe.graph.edge_count() < 2 {
        let micro = Instance::new(pipe.graph.clone(), pipe.demands.clone(), kind, None)
            .expect("demands sized with the graph");
        let best = brute_min(&micro)?.optimum;
        return match best {
            Some((size, wit)) if size <= pipe.budget => {
                let mut witness = pipe.forced.clone();
                witness.extend(wit.iter().map(|&v| pipe.map[v as usize]));
                finish_yes(instance, k, witness, pipe, Some((z, b)))
            }
            _ => Ok(no(&pipe, WidthGate::Skipped, Some((z, b)), None)),
        };
    }

    let exact = pipe.graph.edge_count() <= cfg.exact_edge_limit;
    let bd = if exact {
        construct_exact(&pipe.graph, cfg.exact_edge_limit)?
    } else {
        construct_heuristic(&pipe.graph, &cfg.heuristic)?
    };
    let width = bd.width();
    let gate = if width <= b as usize {
        WidthGate::Passed
    } else if exact {
        // Exact width above the bound refutes a planar instance outright.
        let mut d = no(&pipe, WidthGate::CertifiedNo, Some((z, b)), Some(width));
        d.diagnostics.width_exact = true;
        return Ok(d);
    } else {
        WidthGate::AdvisoryExceeded
    };

    let rooted = bd.root_at(0, &pipe.graph)?;
    let dp_cfg = DpConfig {
        budget: Some(pipe.budget),
        max_table_len: cfg.max_table_len,
    };
    let outcome = dp::run(
        &pipe.graph,
        &pipe.demands,
        Mode::for_kind(kind),
        &rooted,
        &dp_cfg,
    )?;
    match outcome.optimum {
        Some((size, wit)) if size <= pipe.budget => {
            let mut witness = pipe.forced.clone();
            witness.extend(wit.iter().map(|&v| pipe.map[v as usize]));
            let mut decision = finish_yes(instance, k, witness, pipe, Some((z, b)))?;
            decision.diagnostics.width = Some(width);
            decision.diagnostics.width_exact = exact;
            decision.diagnostics.gate = gate;
            Ok(decision)
        }
        _ => {
            let mut d = no(&pipe, gate, Some((z, b)), Some(width));
            d.diagnostics.width_exact = exact;
            Ok(d)
        }
    }
}

/// Assembles a YES decision after re-verifying the witness on the original
/// instance; a failure here is a solver bug, not bad input.
fn finish_yes(
    instance: &Instance,
    k: u32,
    witness: Vec<Vertex>,
    pipe: Pipeline,
    z_b: Option<(u32, u32)>,
) -> Result<Decision, DecideError> {
    let mut witness = witness;
    witness.sort_unstable();
    if witness.len() as u32 > k {
        return Err(DecideError::Internal(format!(
            "witness of size {} exceeds the budget {k}",
            witness.len()
        )));
    }
    let ok = check_domination(&instance.graph, &instance.demands, instance.kind, &witness)
        .map_err(|e| DecideError::Internal(format!("witness rejected: {e}")))?;
    if !ok {
        return Err(DecideError::Internal(format!(
            "witness {witness:?} fails verification"
        )));
    }
    let (z, b) = z_b.unwrap_or((0, 0));
    Ok(Decision {
        yes: true,
        witness: Some(witness),
        diagnostics: Diagnostics {
            kind: instance.kind,
            removed: pipe.removed,
            forced: pipe.forced,
            kernel_rounds: pipe.kernel_rounds,
            residual_budget: pipe.budget,
            z,
            bstar: b,
            width: None,
            width_exact: false,
            gate: WidthGate::Skipped,
        },
    })
}
