//! Undirected simple graphs with dense vertex ids.

use thiserror::Error;

/// Vertices are dense indices `0..n`.
pub type Vertex = u32;
/// Edges are identified by their index in the normalized edge list.
pub type EdgeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {vertex} out of range (vertex count {n})")]
    EndpointOutOfRange { vertex: Vertex, n: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
}

/// An undirected simple graph. Edges are stored normalized (`u < v`) and
/// sorted lexicographically; neighbor lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    inc: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Rejects out-of-range
    /// endpoints, self-loops, and duplicate edges (in either orientation).
    pub fn new(n: u32, edge_list: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b) in edge_list {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut adj = vec![Vec::new(); n as usize];
        let mut inc = vec![Vec::new(); n as usize];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            inc[u as usize].push(id as EdgeId);
            inc[v as usize].push(id as EdgeId);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Graph { n, edges, adj, inc })
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n
    }

    /// Normalized, lexicographically sorted edge list.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e as usize]
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Id of the edge `{u, v}` if present.
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok().map(|i| i as EdgeId)
    }

    /// Ids of the edges incident to `v`, in increasing order.
    pub fn incident_edges(&self, v: Vertex) -> &[EdgeId] {
        &self.inc[v as usize]
    }

    /// Subgraph induced by the vertices with `keep[v] == true`, together with
    /// the map from new vertex ids to the original ones.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<Vertex>) {
        assert_eq!(keep.len(), self.n as usize);
        let to_old: Vec<Vertex> = (0..self.n).filter(|&v| keep[v as usize]).collect();
        let mut to_new = vec![u32::MAX; self.n as usize];
        for (new, &old) in to_old.iter().enumerate() {
            to_new[old as usize] = new as u32;
        }
        let edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u as usize] && keep[v as usize])
            .map(|&(u, v)| (to_new[u as usize], to_new[v as usize]))
            .collect();
        let g = Graph::new(to_old.len() as u32, &edges).expect("induced subgraph is valid");
        (g, to_old)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n as usize];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut cnt = 1;
        while let Some(v) = stack.pop() {
            for &u in self.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    cnt += 1;
                    stack.push(u);
                }
            }
        }
        cnt == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_path_graph() {
        let g = Graph::new(3, &[(1, 0), (1, 2)]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.degree(0), 1);
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.edge_id(2, 1), Some(1));
        assert_eq!(g.incident_edges(1), &[0, 1]);
        assert_eq!(g.endpoints(0), (0, 1));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::EndpointOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn induced_subgraph_remaps_ids() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let (h, map) = g.induced_subgraph(&[true, false, true, true]);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(map, vec![0, 2, 3]);
        assert_eq!(h.edges(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn connectivity() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(g.is_connected());
        let g = Graph::new(0, &[]).unwrap();
        assert!(g.is_connected());
    }
}
