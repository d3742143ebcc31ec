//! Table computation and answer reconstruction.
//!
//! Leaf edges: the edge's two endpoints are the whole subgraph, so every
//! coloring is checked directly; endpoints outside the order set pick their
//! membership freely and the cheapest feasible choice is kept.
//!
//! Internal edges: for every parent coloring, membership of the boundary
//! vertices is fixed (vertices shared by both children but absent from the
//! parent boundary get theirs from an explicit subset enumeration), each
//! child relaxation is either forced or enumerated by splitting the missing
//! demand between the two subgraphs, and the cheapest consistent pair of
//! child entries wins. Members shared by both children are subtracted once
//! from the combined cardinality.

use super::domain::ColorDomain;
use super::partition::partition_sets;
use super::{DpConfig, DpError, DpStats, EdgeStats, MergeStats, Mode, INFEASIBLE};
use crate::decomp::{RootedDecomposition, RootedNode};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::instance::DemandVector;

/// Result of a DP run: the optimum with a witness when feasible, plus work
/// measurements per processed tree edge.
#[derive(Debug, Clone)]
pub struct DpOutcome {
    pub optimum: Option<(u32, Vec<Vertex>)>,
    pub stats: DpStats,
}

struct DpTable {
    domain: ColorDomain,
    values: Vec<u32>,
    back: Back,
}

enum Back {
    /// Per entry: bitmask over the leaf edge's endpoints outside the order
    /// set, marking those chosen as members.
    Leaf(Vec<u8>),
    /// Per entry: the winning pair of child table indices.
    Merge(Vec<(u32, u32)>),
}

fn internal(msg: impl Into<String>) -> DpError {
    DpError::Internal(msg.into())
}

/// Runs the plain vector domination DP over a rooted decomposition.
pub fn solve_vector(
    g: &Graph,
    demands: &DemandVector,
    rooted: &RootedDecomposition,
    cfg: &DpConfig,
) -> Result<DpOutcome, DpError> {
    run(g, demands, Mode::VECTOR, rooted, cfg)
}

/// Runs the DP for an arbitrary [`Mode`] over a rooted decomposition.
pub fn run(
    g: &Graph,
    demands: &DemandVector,
    mode: Mode,
    rooted: &RootedDecomposition,
    cfg: &DpConfig,
) -> Result<DpOutcome, DpError> {
    debug_assert_eq!(demands.len(), g.vertex_count());
    let cap = cfg.max_table_len.min(u32::MAX as u64);
    let mut tables: Vec<Option<DpTable>> = Vec::new();
    tables.resize_with(rooted.node_count(), || None);
    let mut stats = DpStats::default();

    for &id in rooted.postorder() {
        let node = rooted.node(id);
        let (table, merge) = if node.children.is_empty() {
            let t = leaf_table(g, demands, mode, id, node, cap, cfg.budget)?;
            (t, None)
        } else {
            let t1 = tables[node.children[0]]
                .as_ref()
                .ok_or_else(|| internal(format!("child table of node {id} missing")))?;
            let t2 = tables[node.children[1]]
                .as_ref()
                .ok_or_else(|| internal(format!("child table of node {id} missing")))?;
            let (t, ms) = merge_tables(demands, mode, id, node, t1, t2, cap, cfg.budget)?;
            (t, Some(ms))
        };
        stats.edges.push(EdgeStats {
            node: id,
            boundary: node.w.len(),
            table_len: table.domain.len() as u64,
            merge,
        });
        tables[id] = Some(table);
    }

    let jt = tables[rooted.junction()]
        .as_ref()
        .ok_or_else(|| internal("junction table missing"))?;
    debug_assert_eq!(jt.domain.arity(), 0);
    let value = jt.values[0];
    let optimum = if value == INFEASIBLE {
        None
    } else {
        let witness = reconstruct(g, rooted, &tables)?;
        if witness.len() != value as usize {
            return Err(internal(format!(
                "reconstructed set has {} vertices, table says {value}",
                witness.len()
            )));
        }
        Some((value, witness))
    };
    Ok(DpOutcome { optimum, stats })
}

/// The leaf edge's endpoints that are not part of the order set; their
/// membership is a free choice recorded in [`Back::Leaf`].
fn free_endpoints(g: &Graph, e: EdgeId, domain: &ColorDomain) -> Vec<Vertex> {
    let (a, b) = g.endpoints(e);
    [a, b]
        .into_iter()
        .filter(|&v| domain.position(v).is_none())
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn leaf_table(
    g: &Graph,
    demands: &DemandVector,
    mode: Mode,
    node_id: usize,
    node: &RootedNode,
    cap: u64,
    budget: Option<u32>,
) -> Result<DpTable, DpError> {
    let e = node
        .leaf_edge
        .ok_or_else(|| internal(format!("node {node_id} has no children and no edge")))?;
    let (a, b) = g.endpoints(e);
    debug_assert!(node.w.iter().all(|&v| v == a || v == b));

    let domain = ColorDomain::new(&node.w, demands, mode);
    if domain.len() > cap as u128 {
        return Err(DpError::TableTooLarge {
            node: node_id,
            len: domain.len(),
            cap,
        });
    }
    let len = domain.len() as usize;
    let free = free_endpoints(g, e, &domain);
    let mut values = vec![INFEASIBLE; len];
    let mut chosen = vec![0u8; len];

    for idx in 0..len as u64 {
        let mut best: Option<(u32, u8)> = None;
        for mask in 0..1u8 << free.len() {
            let in_d = |v: Vertex| -> bool {
                if let Some(p) = domain.position(v) {
                    domain.is_member_code(p, domain.code_at(idx, p))
                } else {
                    let bit = free.iter().position(|&x| x == v).unwrap();
                    mask >> bit & 1 == 1
                }
            };
            let satisfied = |v: Vertex, other: Vertex| -> bool {
                let cnt = in_d(other) as u32 + (mode.closed && in_d(v)) as u32;
                match domain.position(v) {
                    Some(p) => {
                        let code = domain.code_at(idx, p);
                        if domain.is_member_code(p, code) && !mode.member_residual {
                            return true;
                        }
                        cnt + domain.residual(p, code) >= domain.demand(p)
                    }
                    None => {
                        if in_d(v) && !mode.member_residual {
                            return true;
                        }
                        cnt >= demands.get(v)
                    }
                }
            };
            if satisfied(a, b) && satisfied(b, a) {
                let size = (0..domain.arity())
                    .filter(|&p| domain.is_member_code(p, domain.code_at(idx, p)))
                    .count() as u32
                    + mask.count_ones();
                if best.map_or(true, |(s, _)| size < s) {
                    best = Some((size, mask));
                }
            }
        }
        if let Some((size, mask)) = best {
            values[idx as usize] = size;
            chosen[idx as usize] = mask;
        }
    }
    if let Some(k) = budget {
        for v in values.iter_mut() {
            if *v != INFEASIBLE && *v > k {
                *v = INFEASIBLE;
            }
        }
    }
    Ok(DpTable {
        domain,
        values,
        back: Back::Leaf(chosen),
    })
}

/// One boundary vertex whose missing demand is split between the children.
///
/// The children's subgraphs partition the edges below the merge, so the
/// neighbors each child certifies for this vertex are disjoint and add up.
/// A pair of child residuals `(c1, c2)` composes soundly exactly when the
/// certified counts cover what the parent coloring still requires; the
/// undominated pairs all lie on the boundary `g1 + g2 = need` with child
/// codes `hi - g`, where a member's self-contribution (closed mode) lowers
/// both the requirement and each child's certificate by one.
struct Split {
    /// Weakest child residual: the demand minus the self-contribution.
    hi: u32,
    /// Units of demand the two subgraphs must still provide between them.
    need: u32,
    /// Membership offset of the packed code (paired layout only).
    off1: u32,
    off2: u32,
    s1: u64,
    s2: u64,
}

struct PairScan<'a> {
    v1: &'a [u32],
    v2: &'a [u32],
    overlap: u32,
    best: u32,
    best_pair: (u32, u32),
    pairs: u64,
}

fn scan_splits(splits: &[Split], k: usize, idx1: u64, idx2: u64, ctx: &mut PairScan) {
    if k == splits.len() {
        ctx.pairs += 1;
        let v1 = ctx.v1[idx1 as usize];
        let v2 = ctx.v2[idx2 as usize];
        if v1 == INFEASIBLE || v2 == INFEASIBLE {
            return;
        }
        let cand = v1 + v2 - ctx.overlap;
        let pair = (idx1 as u32, idx2 as u32);
        if cand < ctx.best || (cand == ctx.best && pair < ctx.best_pair) {
            ctx.best = cand;
            ctx.best_pair = pair;
        }
        return;
    }
    let sp = &splits[k];
    for g1 in 0..=sp.need {
        let c1 = sp.off1 + sp.hi - g1;
        let c2 = sp.off2 + sp.hi - (sp.need - g1);
        scan_splits(
            splits,
            k + 1,
            idx1 + sp.s1 * c1 as u64,
            idx2 + sp.s2 * c2 as u64,
            ctx,
        );
    }
}

/// How one parent domain slot maps onto the child tables.
enum Slot {
    /// Only the left child sees the vertex: its code passes through.
    Left(u64),
    /// Only the right child sees it.
    Right(u64),
    /// Both children see it, so its remaining demand must be split.
    Shared { d: u32, s1: u64, s2: u64 },
}

fn merge_tables(
    demands: &DemandVector,
    mode: Mode,
    node_id: usize,
    node: &RootedNode,
    t1: &DpTable,
    t2: &DpTable,
    cap: u64,
    budget: Option<u32>,
) -> Result<(DpTable, MergeStats), DpError> {
    let parts = partition_sets(&node.w, t1.domain.verts(), t2.domain.verts())?;
    let domain = ColorDomain::new(&node.w, demands, mode);
    if domain.len() > cap as u128 {
        return Err(DpError::TableTooLarge {
            node: node_id,
            len: domain.len(),
            cap,
        });
    }
    let len = domain.len() as usize;

    // The children's edge sets partition this node's, so a vertex one child
    // shares with the parent has all of its visible neighbors inside that
    // child's subgraph: the parent code carries through verbatim. Demands
    // and code layouts agree across the three domains (same demand vector,
    // same mode), which is what makes the pass-through a plain copy.
    let c1_stride = |v: Vertex| t1.domain.stride(t1.domain.position(v).expect("in left order set"));
    let c2_stride =
        |v: Vertex| t2.domain.stride(t2.domain.position(v).expect("in right order set"));
    let slots: Vec<Slot> = domain
        .verts()
        .iter()
        .map(|&v| {
            match (
                t1.domain.position(v).is_some(),
                t2.domain.position(v).is_some(),
            ) {
                (true, false) => Slot::Left(c1_stride(v)),
                (false, true) => Slot::Right(c2_stride(v)),
                // partition_sets guarantees coverage by at least one child.
                _ => Slot::Shared {
                    d: demands.get(v),
                    s1: c1_stride(v),
                    s2: c2_stride(v),
                },
            }
        })
        .collect();

    // Vertices both children see but the parent does not. Their membership
    // is decided here, and their full demand must be met below this node.
    let x4: Vec<(u32, u64, u64)> = parts
        .children_only
        .iter()
        .map(|&v| (demands.get(v), c1_stride(v), c2_stride(v)))
        .collect();

    let paired = mode.member_residual;
    let mut values = vec![INFEASIBLE; len];
    let mut back = vec![(u32::MAX, u32::MAX); len];
    let mut pairs_total: u64 = 0;
    let mut shared: Vec<(bool, u32, u32, u64, u64)> = Vec::new();
    let mut splits: Vec<Split> = Vec::with_capacity(parts.shared_by_all.len() + x4.len());

    for idx in 0..len as u64 {
        // Decode the parent coloring into forced child offsets plus the
        // list of vertices whose demand still has to be divided.
        let mut b1: u64 = 0;
        let mut b2: u64 = 0;
        let mut members_above: u32 = 0;
        shared.clear();
        for (pos, slot) in slots.iter().enumerate() {
            let code = domain.code_at(idx, pos);
            match *slot {
                Slot::Left(s) => b1 += s * code as u64,
                Slot::Right(s) => b2 += s * code as u64,
                Slot::Shared { d, s1, s2 } => {
                    let member = domain.is_member_code(pos, code);
                    if member {
                        members_above += 1;
                    }
                    if member && !paired {
                        // Members carry no residual here: ⊤ on both sides.
                        b1 += s1 * code as u64;
                        b2 += s2 * code as u64;
                    } else {
                        shared.push((member, domain.residual(pos, code), d, s1, s2));
                    }
                }
            }
        }

        let mut ctx = PairScan {
            v1: &t1.values,
            v2: &t2.values,
            overlap: 0,
            best: INFEASIBLE,
            best_pair: (u32::MAX, u32::MAX),
            pairs: 0,
        };

        // Membership of the hidden class is enumerated explicitly; the
        // overlap term keeps |D1 ∪ D2| right, since the children agree on
        // membership exactly over the shared and hidden vertices.
        for s4 in 0..1u64 << x4.len() {
            ctx.overlap = members_above + s4.count_ones() as u32;
            let mut idx1 = b1;
            let mut idx2 = b2;
            splits.clear();

            for &(member, i, d, s1, s2) in &shared {
                let self_cnt = (mode.closed && member) as u32;
                let off = if paired { (member as u32) * (d + 1) } else { 0 };
                splits.push(Split {
                    hi: d.saturating_sub(self_cnt),
                    need: d.saturating_sub(i + self_cnt),
                    off1: off,
                    off2: off,
                    s1,
                    s2,
                });
            }
            for (bit, &(d, s1, s2)) in x4.iter().enumerate() {
                let member = s4 >> bit & 1 == 1;
                if member && !paired {
                    idx1 += s1 * (d as u64 + 1);
                    idx2 += s2 * (d as u64 + 1);
                    continue;
                }
                let self_cnt = (mode.closed && member) as u32;
                let off = if paired { (member as u32) * (d + 1) } else { 0 };
                splits.push(Split {
                    hi: d.saturating_sub(self_cnt),
                    need: d.saturating_sub(self_cnt),
                    off1: off,
                    off2: off,
                    s1,
                    s2,
                });
            }
            scan_splits(&splits, 0, idx1, idx2, &mut ctx);
        }

        pairs_total += ctx.pairs;
        if ctx.best != INFEASIBLE {
            values[idx as usize] = ctx.best;
            back[idx as usize] = ctx.best_pair;
        }
    }

    if let Some(k) = budget {
        for v in values.iter_mut() {
            if *v != INFEASIBLE && *v > k {
                *v = INFEASIBLE;
            }
        }
    }
    let stats = MergeStats {
        sizes: [
            parts.parent_and_left.len(),
            parts.parent_and_right.len(),
            parts.shared_by_all.len(),
            parts.children_only.len(),
        ],
        pairs: pairs_total,
    };
    Ok((
        DpTable {
            domain,
            values,
            back: Back::Merge(back),
        },
        stats,
    ))
}

/// Follows the back pointers from the junction entry down to the leaves and
/// collects the chosen members.
fn reconstruct(
    g: &Graph,
    rooted: &RootedDecomposition,
    tables: &[Option<DpTable>],
) -> Result<Vec<Vertex>, DpError> {
    let mut members = vec![false; g.vertex_count()];
    let mut stack: Vec<(usize, u64)> = vec![(rooted.junction(), 0)];
    while let Some((id, idx)) = stack.pop() {
        let t = tables[id]
            .as_ref()
            .ok_or_else(|| internal(format!("table of node {id} missing during trace")))?;
        if t.values[idx as usize] == INFEASIBLE {
            return Err(internal(format!(
                "trace reached infeasible entry {idx} at node {id}"
            )));
        }
        for pos in 0..t.domain.arity() {
            if t.domain.is_member_code(pos, t.domain.code_at(idx, pos)) {
                members[t.domain.verts()[pos] as usize] = true;
            }
        }
        match &t.back {
            Back::Leaf(choices) => {
                let node = rooted.node(id);
                let e = node
                    .leaf_edge
                    .ok_or_else(|| internal(format!("leaf node {id} has no edge")))?;
                let mask = choices[idx as usize];
                for (bit, v) in free_endpoints(g, e, &t.domain).into_iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        members[v as usize] = true;
                    }
                }
            }
            Back::Merge(pairs) => {
                let (i1, i2) = pairs[idx as usize];
                if i1 == u32::MAX && i2 == u32::MAX {
                    return Err(internal(format!(
                        "dangling back pointer at node {id} entry {idx}"
                    )));
                }
                let node = rooted.node(id);
                stack.push((node.children[0], i1 as u64));
                stack.push((node.children[1], i2 as u64));
            }
        }
    }
    Ok((0..g.vertex_count() as Vertex)
        .filter(|&v| members[v as usize])
        .collect())
}
