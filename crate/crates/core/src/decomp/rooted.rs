//! Rooting a branch decomposition for bottom-up dynamic programming.
//!
//! One tree edge `(x1, x2)` is split: a junction node sits between `x1` and
//! `x2`, and a fresh root hangs above the junction. Every node except the
//! root then owns the edge towards its parent. The junction's own edge (the
//! topmost one) has an empty order set, so the table computed there holds
//! the answer for the whole graph. The two edges below the junction both
//! carry the order set of the split edge.

use super::{BranchDecomposition, DecompError};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::util::BitSet;
use std::collections::HashMap;

/// A node of the rooted tree together with the data of its upward edge:
/// the order set `w` and the set `edges` of graph edges at the leaves of
/// its subtree.
#[derive(Debug, Clone)]
pub struct RootedNode {
    pub parent: Option<usize>,
    /// Empty for leaves, two entries for internal nodes (the root has one).
    pub children: Vec<usize>,
    /// The graph edge owned by this node, when it is a leaf.
    pub leaf_edge: Option<EdgeId>,
    /// Order set of the upward edge, sorted ascending. Empty at the
    /// junction (its upward edge separates nothing) and at the root.
    pub w: Vec<Vertex>,
    /// Graph edges in this node's subtree, as a bitset over edge ids.
    pub edges: BitSet,
}

/// Rooted form of a branch decomposition. `postorder` lists every node
/// except the root so that children precede parents; the junction comes
/// last and its table entry is the final answer.
#[derive(Debug, Clone)]
pub struct RootedDecomposition {
    nodes: Vec<RootedNode>,
    postorder: Vec<usize>,
    root: usize,
    junction: usize,
    width: usize,
    edge_count: usize,
}

impl RootedDecomposition {
    pub fn node(&self, i: usize) -> &RootedNode {
        &self.nodes[i]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Every node except the root, children before parents.
    pub fn postorder(&self) -> &[usize] {
        &self.postorder
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// The child of the root; the final DP table lives on its upward edge.
    pub fn junction(&self) -> usize {
        self.junction
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn graph_edge_count(&self) -> usize {
        self.edge_count
    }
}

pub(super) fn root_at(
    d: &BranchDecomposition,
    split: usize,
    g: &Graph,
) -> Result<RootedDecomposition, DecompError> {
    if g.edge_count() < 2 {
        return Err(DecompError::TooFewEdges(g.edge_count()));
    }
    if split >= d.tree_edges().len() {
        return Err(DecompError::TreeEdgeOutOfRange(split));
    }

    let base = d.node_count();
    let junction = base;
    let root = base + 1;
    let (x1, x2) = d.tree_edges()[split];

    let mut adj: Vec<Vec<usize>> = (0..base).map(|v| d.node_neighbors(v).to_vec()).collect();
    adj.push(Vec::new());
    adj.push(Vec::new());
    adj[x1].retain(|&u| u != x2);
    adj[x2].retain(|&u| u != x1);
    adj[junction].extend([x1.min(x2), x1.max(x2), root]);
    adj[x1].push(junction);
    adj[x2].push(junction);
    adj[root].push(junction);

    // Order sets of original tree edges, keyed by normalized endpoints.
    let mut order_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, &(a, b)) in d.tree_edges().iter().enumerate() {
        order_of.insert((a.min(b), a.max(b)), i);
    }

    let mut nodes: Vec<RootedNode> = (0..base + 2)
        .map(|i| RootedNode {
            parent: None,
            children: Vec::new(),
            leaf_edge: if i < base { d.node_graph_edge(i) } else { None },
            w: Vec::new(),
            edges: BitSet::new(g.edge_count()),
        })
        .collect();

    // Orient away from the root and record each node's upward order set.
    let mut stack = vec![root];
    let mut seen = vec![false; base + 2];
    seen[root] = true;
    let mut order = Vec::with_capacity(base + 2);
    while let Some(v) = stack.pop() {
        order.push(v);
        let mut kids: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&u| !seen[u])
            .collect();
        kids.sort_unstable();
        for &u in &kids {
            seen[u] = true;
            nodes[u].parent = Some(v);
            nodes[u].w = if u == junction {
                Vec::new()
            } else if v == junction {
                d.order_set(split).to_vec()
            } else {
                let key = (u.min(v), u.max(v));
                d.order_set(order_of[&key]).to_vec()
            };
            stack.push(u);
        }
        nodes[v].children = kids;
    }
    debug_assert_eq!(order.len(), base + 2, "rooted tree must stay connected");

    // Children were pushed before their parents appear deeper in `order`
    // in DFS discovery order, so a reverse sweep is bottom-up.
    for &v in order.iter().rev() {
        if let Some(e) = nodes[v].leaf_edge {
            nodes[v].edges.insert(e as usize);
        }
        let kids = nodes[v].children.clone();
        for c in kids {
            let child_edges = nodes[c].edges.clone();
            nodes[v].edges.union_with(&child_edges);
        }
    }
    debug_assert_eq!(nodes[junction].edges.count(), g.edge_count());

    let mut postorder = Vec::with_capacity(base + 1);
    let mut walk = vec![(junction, false)];
    while let Some((v, expanded)) = walk.pop() {
        if expanded {
            postorder.push(v);
            continue;
        }
        walk.push((v, true));
        for &c in nodes[v].children.iter().rev() {
            walk.push((c, false));
        }
    }

    Ok(RootedDecomposition {
        nodes,
        postorder,
        root,
        junction,
        width: d.width(),
        edge_count: g.edge_count(),
    })
}
