//! Branch decompositions: structure, validation, construction, rooting.
//!
//! A branch decomposition of a graph `G` is a pair `(T, tau)` where `T` is a
//! tree whose non-leaf nodes all have degree 3 and `tau` is a bijection from
//! the edges of `G` onto the leaves of `T`. Removing a tree edge `f` splits
//! the graph edges into `E_f` and its complement; the *order set* `w(f)` is
//! the set of vertices incident to edges on both sides. The width of the
//! decomposition is the maximum `|w(f)|`.

mod exact;
mod heuristic;
mod rooted;

pub use exact::{branchwidth_exact, construct_exact, DEFAULT_EXACT_EDGE_LIMIT};
pub use heuristic::{construct_heuristic, HeuristicConfig};
pub use rooted::{RootedDecomposition, RootedNode};

use crate::graph::{EdgeId, Graph, Vertex};
use crate::util::BitSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("graph has {0} edges; decomposition needs at least 2")]
    TooFewEdges(usize),
    #[error("graph has {m} edges, above the exact construction limit {limit}")]
    TooManyEdgesForExact { m: usize, limit: usize },
    #[error("exact construction limit {0} exceeds the supported maximum {1}")]
    ExactLimitTooLarge(usize, usize),
    #[error("tree edge index {0} out of range")]
    TreeEdgeOutOfRange(usize),
    #[error("invalid decomposition: {0}")]
    Invalid(#[from] Violation),
}

/// First structural violation found by [`BranchDecomposition::validate`],
/// with enough location information to debug the offending structure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("structure is not a tree ({nodes} nodes, {tree_edges} tree edges)")]
    NotATree { nodes: usize, tree_edges: usize },
    #[error("node {node} has degree {degree}; internal nodes must have degree 3")]
    InternalDegree { node: usize, degree: usize },
    #[error("{leaves} leaves for {edges} graph edges")]
    LeafCount { leaves: usize, edges: usize },
    #[error("leaf assignment is not a bijection at node {node}")]
    LeafAssignment { node: usize },
    #[error("stored order set of tree edge {edge} does not match the order function")]
    OrderMismatch { edge: usize },
    #[error("order containment fails at node {node}: edge {edge}'s order set is not covered by the other two")]
    OrderContainment { node: usize, edge: usize },
    #[error("separation fails at tree edge {edge}: vertex {vertex} lies strictly on both sides")]
    SeparationVertex { edge: usize, vertex: Vertex },
    #[error("separation fails at tree edge {edge}: graph edge ({u}, {v}) joins the two strict sides")]
    SeparationEdge { edge: usize, u: Vertex, v: Vertex },
}

/// An unrooted branch decomposition with precomputed order sets.
#[derive(Debug, Clone)]
pub struct BranchDecomposition {
    adj: Vec<Vec<usize>>,
    leaf_edge: Vec<Option<EdgeId>>,
    leaf_of_edge: Vec<usize>,
    tree_edges: Vec<(usize, usize)>,
    order_sets: Vec<Vec<Vertex>>,
    width: usize,
}

impl BranchDecomposition {
    /// Builds and validates a decomposition from its tree structure.
    ///
    /// `tree_edges` lists the `node_count - 1` tree edges; `leaf_of_edge[e]`
    /// is the tree node carrying graph edge `e`. A single-edge graph yields
    /// the degenerate decomposition (one node, no tree edges, width 0).
    pub fn new(
        g: &Graph,
        node_count: usize,
        tree_edges: Vec<(usize, usize)>,
        leaf_of_edge: Vec<EdgeId>,
    ) -> Result<Self, Violation> {
        let mut adj = vec![Vec::new(); node_count];
        for &(a, b) in &tree_edges {
            if a >= node_count || b >= node_count {
                return Err(Violation::NotATree {
                    nodes: node_count,
                    tree_edges: tree_edges.len(),
                });
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut leaf_edge = vec![None; node_count];
        for (e, &node) in leaf_of_edge.iter().enumerate() {
            let node = node as usize;
            if node >= node_count || leaf_edge[node].is_some() {
                return Err(Violation::LeafAssignment { node });
            }
            leaf_edge[node] = Some(e as EdgeId);
        }
        let leaf_of_edge = leaf_of_edge.iter().map(|&x| x as usize).collect();
        let mut d = BranchDecomposition {
            adj,
            leaf_edge,
            leaf_of_edge,
            tree_edges,
            order_sets: Vec::new(),
            width: 0,
        };
        d.check_shape(g)?;
        d.order_sets = d.compute_order_sets(g);
        d.width = d.order_sets.iter().map(Vec::len).max().unwrap_or(0);
        d.check_order_properties(g)?;
        Ok(d)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    /// Order set `w(f)` of tree edge `f`, sorted.
    pub fn order_set(&self, f: usize) -> &[Vertex] {
        &self.order_sets[f]
    }

    pub fn order_sets(&self) -> &[Vec<Vertex>] {
        &self.order_sets
    }

    /// Maximum order set size; 0 for the degenerate single-edge case.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Tree node carrying graph edge `e`.
    pub fn leaf_node(&self, e: EdgeId) -> usize {
        self.leaf_of_edge[e as usize]
    }

    pub fn node_graph_edge(&self, node: usize) -> Option<EdgeId> {
        self.leaf_edge[node]
    }

    pub fn node_neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    fn check_shape(&self, g: &Graph) -> Result<(), Violation> {
        let nodes = self.adj.len();
        // Connected with nodes - 1 edges <=> tree. The degenerate single
        // node (single-edge graph) passes with 0 tree edges.
        if self.tree_edges.len() + 1 != nodes || !self.tree_connected() {
            return Err(Violation::NotATree {
                nodes,
                tree_edges: self.tree_edges.len(),
            });
        }
        let mut leaves = 0;
        for node in 0..nodes {
            let degree = self.adj[node].len();
            let is_leaf = degree <= 1;
            if is_leaf {
                leaves += 1;
                if self.leaf_edge[node].is_none() {
                    return Err(Violation::LeafAssignment { node });
                }
            } else {
                if self.leaf_edge[node].is_some() {
                    return Err(Violation::LeafAssignment { node });
                }
                if degree != 3 {
                    return Err(Violation::InternalDegree { node, degree });
                }
            }
        }
        if leaves != g.edge_count() {
            return Err(Violation::LeafCount {
                leaves,
                edges: g.edge_count(),
            });
        }
        Ok(())
    }

    fn tree_connected(&self) -> bool {
        let nodes = self.adj.len();
        if nodes == 0 {
            return false;
        }
        let mut seen = vec![false; nodes];
        let mut stack = vec![0];
        seen[0] = true;
        let mut cnt = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    cnt += 1;
                    stack.push(y);
                }
            }
        }
        cnt == nodes
    }

    /// Leaf-edge sets `E_f` for every tree edge, on the side of `child[f]`
    /// under an orientation rooted at node 0.
    fn subtree_edge_sets(&self) -> (Vec<BitSet>, Vec<usize>) {
        let nodes = self.adj.len();
        let m = self.leaf_of_edge.len();
        // Orient the tree away from node 0.
        let mut parent = vec![usize::MAX; nodes];
        let mut order = Vec::with_capacity(nodes);
        let mut stack = vec![0];
        let mut seen = vec![false; nodes];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut subtree: Vec<BitSet> = (0..nodes).map(|_| BitSet::new(m)).collect();
        for &x in order.iter().rev() {
            if let Some(e) = self.leaf_edge[x] {
                subtree[x].insert(e as usize);
            }
            if parent[x] != usize::MAX {
                let s = subtree[x].clone();
                subtree[parent[x]].union_with(&s);
            }
        }
        // For each tree edge pick the child side of the orientation.
        let child_of_edge: Vec<usize> = self
            .tree_edges
            .iter()
            .map(|&(a, b)| if parent[b] == a { b } else { a })
            .collect();
        let sets = child_of_edge.iter().map(|&c| subtree[c].clone()).collect();
        (sets, child_of_edge)
    }

    /// Recomputes the order function from scratch.
    pub fn compute_order_sets(&self, g: &Graph) -> Vec<Vec<Vertex>> {
        let (sets, _) = self.subtree_edge_sets();
        sets.iter()
            .map(|ef| {
                g.vertices()
                    .filter(|&v| {
                        let inc = g.incident_edges(v);
                        let inside = inc.iter().any(|&e| ef.contains(e as usize));
                        let outside = inc.iter().any(|&e| !ef.contains(e as usize));
                        inside && outside
                    })
                    .collect()
            })
            .collect()
    }

    /// Full validation: tree shape, leaf bijection, stored order sets, and
    /// the order-set containment and separation properties.
    pub fn validate(&self, g: &Graph) -> Result<(), Violation> {
        self.check_shape(g)?;
        let recomputed = self.compute_order_sets(g);
        for (f, (stored, fresh)) in self.order_sets.iter().zip(&recomputed).enumerate() {
            if stored != fresh {
                return Err(Violation::OrderMismatch { edge: f });
            }
        }
        self.check_order_properties(g)
    }

    /// Containment at internal nodes (each incident order set is covered by
    /// the union of the other two) and separation across every tree edge.
    fn check_order_properties(&self, g: &Graph) -> Result<(), Violation> {
        // Containment.
        let mut edge_at: Vec<Vec<usize>> = vec![Vec::new(); self.adj.len()];
        for (f, &(a, b)) in self.tree_edges.iter().enumerate() {
            edge_at[a].push(f);
            edge_at[b].push(f);
        }
        for (node, fs) in edge_at.iter().enumerate() {
            if self.adj[node].len() != 3 {
                continue;
            }
            for i in 0..3 {
                let target = &self.order_sets[fs[i]];
                let u1 = &self.order_sets[fs[(i + 1) % 3]];
                let u2 = &self.order_sets[fs[(i + 2) % 3]];
                if target
                    .iter()
                    .any(|v| u1.binary_search(v).is_err() && u2.binary_search(v).is_err())
                {
                    return Err(Violation::OrderContainment {
                        node,
                        edge: fs[i],
                    });
                }
            }
        }

        // Separation.
        let (sets, _) = self.subtree_edge_sets();
        for (f, ef) in sets.iter().enumerate() {
            let w = &self.order_sets[f];
            let n = g.vertex_count();
            let mut side1 = vec![false; n];
            let mut side2 = vec![false; n];
            for e in 0..g.edge_count() {
                let (u, v) = g.endpoints(e as EdgeId);
                let side = if ef.contains(e) {
                    &mut side1
                } else {
                    &mut side2
                };
                side[u as usize] = true;
                side[v as usize] = true;
            }
            let strict1: Vec<bool> = (0..n)
                .map(|v| side1[v] && w.binary_search(&(v as Vertex)).is_err())
                .collect();
            let strict2: Vec<bool> = (0..n)
                .map(|v| side2[v] && w.binary_search(&(v as Vertex)).is_err())
                .collect();
            for v in 0..n {
                if strict1[v] && strict2[v] {
                    return Err(Violation::SeparationVertex {
                        edge: f,
                        vertex: v as Vertex,
                    });
                }
            }
            for &(u, v) in g.edges() {
                let (u, v) = (u as usize, v as usize);
                if (strict1[u] && strict2[v]) || (strict2[u] && strict1[v]) {
                    return Err(Violation::SeparationEdge {
                        edge: f,
                        u: u as Vertex,
                        v: v as Vertex,
                    });
                }
            }
        }
        Ok(())
    }

    /// GraphViz rendering with order sets on the tree edges.
    pub fn to_dot(&self, g: &Graph) -> String {
        use std::fmt::Write;
        let mut out = String::from("graph branch_decomposition {\n");
        for node in 0..self.adj.len() {
            match self.leaf_edge[node] {
                Some(e) => {
                    let (u, v) = g.endpoints(e);
                    let _ = writeln!(out, "  n{node} [shape=box, label=\"e{e}: {u}-{v}\"];");
                }
                None => {
                    let _ = writeln!(out, "  n{node} [shape=point];");
                }
            }
        }
        for (f, &(a, b)) in self.tree_edges.iter().enumerate() {
            let w: Vec<String> = self.order_sets[f].iter().map(u32::to_string).collect();
            let _ = writeln!(out, "  n{a} -- n{b} [label=\"{{{}}}\"];", w.join(","));
        }
        out.push_str("}\n");
        out
    }

    /// Roots the decomposition at tree edge `split` (see [`RootedDecomposition`]).
    pub fn root_at(&self, split: usize, g: &Graph) -> Result<RootedDecomposition, DecompError> {
        rooted::root_at(self, split, g)
    }
}

/// Hierarchical bipartition of the graph edges; the shape shared by all
/// construction strategies before materializing tree nodes.
#[derive(Debug, Clone)]
pub(crate) enum SplitTree {
    Leaf(EdgeId),
    Node(Box<SplitTree>, Box<SplitTree>),
}

/// Materializes the top split `(a, b)` into a branch decomposition: the two
/// subtrees are built recursively and joined by a single tree edge.
pub(crate) fn assemble(
    g: &Graph,
    a: &SplitTree,
    b: &SplitTree,
) -> Result<BranchDecomposition, Violation> {
    let mut tree_edges = Vec::new();
    let mut leaf_of_edge = vec![0 as EdgeId; g.edge_count()];
    let mut next = 0usize;
    fn emit(
        t: &SplitTree,
        next: &mut usize,
        tree_edges: &mut Vec<(usize, usize)>,
        leaf_of_edge: &mut [EdgeId],
    ) -> usize {
        let id = *next;
        *next += 1;
        match t {
            SplitTree::Leaf(e) => leaf_of_edge[*e as usize] = id as EdgeId,
            SplitTree::Node(l, r) => {
                let li = emit(l, next, tree_edges, leaf_of_edge);
                tree_edges.push((id, li));
                let ri = emit(r, next, tree_edges, leaf_of_edge);
                tree_edges.push((id, ri));
            }
        }
        id
    }
    let na = emit(a, &mut next, &mut tree_edges, &mut leaf_of_edge);
    let nb = emit(b, &mut next, &mut tree_edges, &mut leaf_of_edge);
    tree_edges.push((na, nb));
    BranchDecomposition::new(g, next, tree_edges, leaf_of_edge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    /// Star-shaped decomposition for a 3-edge graph: one internal node,
    /// three leaves.
    fn star_decomp(g: &Graph) -> BranchDecomposition {
        assert_eq!(g.edge_count(), 3);
        BranchDecomposition::new(g, 4, vec![(3, 0), (3, 1), (3, 2)], vec![0, 1, 2]).unwrap()
    }

    #[test]
    fn two_edge_path_has_single_tree_edge() {
        let g = generate::path(3);
        let d = BranchDecomposition::new(&g, 2, vec![(0, 1)], vec![0, 1]).unwrap();
        assert_eq!(d.order_set(0), &[1]);
        assert_eq!(d.width(), 1);
        d.validate(&g).unwrap();
    }

    #[test]
    fn triangle_star_order_sets() {
        let g = generate::cycle(3);
        let d = star_decomp(&g);
        // Each leaf's order set is exactly its edge's endpoints.
        for f in 0..3 {
            let (a, b) = d.tree_edges()[f];
            let leaf = if d.node_graph_edge(a).is_some() { a } else { b };
            let e = d.node_graph_edge(leaf).unwrap();
            let (u, v) = g.endpoints(e);
            assert_eq!(d.order_set(f), &[u, v]);
        }
        assert_eq!(d.width(), 2);
        d.validate(&g).unwrap();
    }

    #[test]
    fn p4_star_width_two() {
        let g = generate::path(4);
        let d = star_decomp(&g);
        // Middle edge separates {0,1} from {2,3}: order set {1, 2}.
        assert_eq!(d.width(), 2);
        d.validate(&g).unwrap();
    }

    #[test]
    fn degenerate_single_edge() {
        let g = generate::path(2);
        let d = BranchDecomposition::new(&g, 1, vec![], vec![0]).unwrap();
        assert_eq!(d.width(), 0);
        d.validate(&g).unwrap();
    }

    #[test]
    fn rejects_internal_degree_two() {
        // Path of three nodes: middle node has degree 2.
        let g = generate::path(3);
        let err =
            BranchDecomposition::new(&g, 3, vec![(0, 1), (1, 2)], vec![0, 2]).unwrap_err();
        assert_eq!(err, Violation::InternalDegree { node: 1, degree: 2 });
    }

    #[test]
    fn rejects_wrong_leaf_count() {
        let g = generate::cycle(3);
        let err = BranchDecomposition::new(&g, 2, vec![(0, 1)], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Violation::LeafAssignment { .. } | Violation::LeafCount { .. }));
    }

    #[test]
    fn rejects_non_tree() {
        let g = generate::cycle(3);
        let err = BranchDecomposition::new(
            &g,
            4,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![0, 1, 2],
        )
        .unwrap_err();
        assert!(matches!(err, Violation::NotATree { .. }));
    }

    #[test]
    fn detects_corrupted_order_set() {
        let g = generate::path(3);
        let mut d = BranchDecomposition::new(&g, 2, vec![(0, 1)], vec![0, 1]).unwrap();
        d.order_sets[0] = vec![0, 1];
        assert_eq!(d.validate(&g), Err(Violation::OrderMismatch { edge: 0 }));
    }

    #[test]
    fn dot_mentions_all_nodes() {
        let g = generate::cycle(3);
        let d = star_decomp(&g);
        let dot = d.to_dot(&g);
        assert!(dot.contains("n3"));
        assert!(dot.contains("--"));
    }
}
