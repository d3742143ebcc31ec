//! Graph generators for tests and benchmarks.

use crate::graph::{Graph, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn path(n: u32) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn cycle(n: u32) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::new(n, &edges).unwrap()
}

/// Star `K_{1,t}`; vertex 0 is the center.
pub fn star(t: u32) -> Graph {
    let edges: Vec<_> = (1..=t).map(|v| (0, v)).collect();
    Graph::new(t + 1, &edges).unwrap()
}

pub fn complete(n: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// `w x h` grid; vertex `(r, c)` has id `r * w + c`.
pub fn grid(w: u32, h: u32) -> Graph {
    let mut edges = Vec::new();
    for r in 0..h {
        for c in 0..w {
            let v = r * w + c;
            if c + 1 < w {
                edges.push((v, v + 1));
            }
            if r + 1 < h {
                edges.push((v, v + w));
            }
        }
    }
    Graph::new(w * h, &edges).unwrap()
}

/// Uniform random tree on `n` vertices (random parent attachment over a
/// shuffled order).
pub fn random_tree<R: Rng>(n: u32, rng: &mut R) -> Graph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n as usize {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    Graph::new(n, &edges).unwrap()
}

/// Random graph with exactly `m` distinct edges.
pub fn random_graph<R: Rng>(n: u32, m: usize, rng: &mut R) -> Graph {
    let mut all = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            all.push((u, v));
        }
    }
    assert!(m <= all.len(), "too many edges requested");
    all.shuffle(rng);
    Graph::new(n, &all[..m]).unwrap()
}

/// Random connected graph: a random tree plus `m - (n-1)` extra edges.
/// Requires `m >= n - 1`.
pub fn random_connected<R: Rng>(n: u32, m: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    assert!(m + 1 >= n as usize, "connected graph needs at least n-1 edges");
    let tree = random_tree(n, rng);
    let mut edges: Vec<_> = tree.edges().to_vec();
    let mut extra: Vec<_> = {
        let mut all = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !tree.has_edge(u, v) {
                    all.push((u, v));
                }
            }
        }
        all
    };
    assert!(m <= edges.len() + extra.len(), "too many edges requested");
    extra.shuffle(rng);
    edges.extend(extra.drain(..m - edges.len()));
    Graph::new(n, &edges).unwrap()
}
