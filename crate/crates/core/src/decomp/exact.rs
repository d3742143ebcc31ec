//! Exact branch-decomposition construction by dynamic programming over edge
//! subsets.
//!
//! For an edge subset `S`, `cost(S)` is the best achievable maximum order
//! over a decomposition subtree covering exactly `S`, including the subtree's
//! own top edge (whose order set is the boundary of `S`):
//!
//! ```text
//! cost({e}) = |boundary({e})|
//! cost(S)   = min over bipartitions S = A ∪ B of max(cost(A), cost(B), |boundary(S)|)
//! ```
//!
//! `cost(E)` is the branchwidth (the full edge set has empty boundary), and
//! the recorded choices reconstruct an optimal decomposition. Exponential in
//! the edge count, so gated behind an edge limit.

use super::{assemble, BranchDecomposition, DecompError, SplitTree};
use crate::graph::{EdgeId, Graph};

/// Default edge cap for exact construction.
pub const DEFAULT_EXACT_EDGE_LIMIT: usize = 14;

/// Hard cap: beyond this the subset tables stop being desk-scale.
const MAX_SUPPORTED_EDGES: usize = 20;

/// Exact minimum-width branch decomposition. Ties between bipartitions are
/// broken toward the lexicographically smallest edge subset on the side
/// containing the lowest-numbered edge, so the result is deterministic.
pub fn construct_exact(g: &Graph, max_edges: usize) -> Result<BranchDecomposition, DecompError> {
    let m = g.edge_count();
    if max_edges > MAX_SUPPORTED_EDGES {
        return Err(DecompError::ExactLimitTooLarge(max_edges, MAX_SUPPORTED_EDGES));
    }
    if m < 2 {
        return Err(DecompError::TooFewEdges(m));
    }
    if m > max_edges {
        return Err(DecompError::TooManyEdgesForExact {
            m,
            limit: max_edges,
        });
    }

    // Incidence masks per vertex.
    let inc: Vec<u32> = g
        .vertices()
        .map(|v| {
            g.incident_edges(v)
                .iter()
                .fold(0u32, |acc, &e| acc | (1 << e))
        })
        .collect();
    let full: u32 = if m == 32 { u32::MAX } else { (1 << m) - 1 };

    // Boundary sizes for every subset.
    let size = (full as usize) + 1;
    let mut boundary = vec![0u8; size];
    for mask in 1..=full {
        let mut b = 0u8;
        for &iv in &inc {
            if iv & mask != 0 && iv & !mask & full != 0 {
                b += 1;
            }
        }
        boundary[mask as usize] = b;
    }

    let mut cost = vec![0u8; size];
    let mut choice = vec![0u32; size];
    for mask in 1..=full {
        if mask.count_ones() == 1 {
            cost[mask as usize] = boundary[mask as usize];
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // Every bipartition once: side A carries the lowest edge of the
        // subset, A = low | sub for sub a proper subset of the rest.
        let mut best: Option<(u8, u32)> = None;
        let mut sub = rest & (rest - 1); // skip sub == rest (A == mask)
        loop {
            let a = low | sub;
            let b = mask ^ a;
            let c = cost[a as usize]
                .max(cost[b as usize])
                .max(boundary[mask as usize]);
            let cand = (c, a);
            best = Some(match best {
                None => cand,
                Some(cur) if cand < cur => cand,
                Some(cur) => cur,
            });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        let (c, a) = best.unwrap();
        cost[mask as usize] = c;
        choice[mask as usize] = a;
    }

    fn build(mask: u32, choice: &[u32]) -> SplitTree {
        if mask.count_ones() == 1 {
            return SplitTree::Leaf(mask.trailing_zeros() as EdgeId);
        }
        let a = choice[mask as usize];
        SplitTree::Node(
            Box::new(build(a, choice)),
            Box::new(build(mask ^ a, choice)),
        )
    }

    let a = choice[full as usize];
    let d = assemble(g, &build(a, &choice), &build(full ^ a, &choice))?;
    debug_assert_eq!(d.width(), cost[full as usize] as usize);
    Ok(d)
}

/// Exact branchwidth. Graphs with fewer than two edges have the degenerate
/// width 0.
pub fn branchwidth_exact(g: &Graph, max_edges: usize) -> Result<usize, DecompError> {
    if g.edge_count() < 2 {
        return Ok(0);
    }
    Ok(construct_exact(g, max_edges)?.width())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn known_widths() {
        assert_eq!(branchwidth_exact(&generate::path(4), 14).unwrap(), 2);
        assert_eq!(branchwidth_exact(&generate::star(13), 14).unwrap(), 1);
        for n in 3..=8 {
            assert_eq!(branchwidth_exact(&generate::cycle(n), 14).unwrap(), 2);
        }
        assert_eq!(branchwidth_exact(&generate::path(2), 14).unwrap(), 0);
        assert_eq!(branchwidth_exact(&generate::path(3), 14).unwrap(), 1);
    }

    #[test]
    fn grid_3x3_width_three() {
        let g = generate::grid(3, 3);
        let d = construct_exact(&g, 14).unwrap();
        d.validate(&g).unwrap();
        assert_eq!(d.width(), 3);
    }

    #[test]
    fn k4_width_three() {
        let g = generate::complete(4);
        let d = construct_exact(&g, 14).unwrap();
        d.validate(&g).unwrap();
        assert_eq!(d.width(), 3);
    }

    #[test]
    fn respects_limits() {
        let g = generate::grid(4, 4); // 24 edges
        assert_eq!(
            construct_exact(&g, 14).unwrap_err(),
            DecompError::TooManyEdgesForExact { m: 24, limit: 14 }
        );
        assert_eq!(
            construct_exact(&g, 25).unwrap_err(),
            DecompError::ExactLimitTooLarge(25, 20)
        );
        let tiny = generate::path(2);
        assert_eq!(
            construct_exact(&tiny, 14).unwrap_err(),
            DecompError::TooFewEdges(1)
        );
    }

    #[test]
    fn deterministic() {
        let g = generate::grid(3, 3);
        let a = construct_exact(&g, 14).unwrap();
        let b = construct_exact(&g, 14).unwrap();
        assert_eq!(a.tree_edges(), b.tree_edges());
        assert_eq!(a.order_sets(), b.order_sets());
    }
}
