//! Solvers for vector domination problems on undirected graphs.
//!
//! Given a graph `G = (V, E)` and a demand function `d: V -> N`, a set
//! `S ⊆ V` is a
//!
//! * *d-vector dominating set* if every vertex `v ∉ S` has at least `d(v)`
//!   neighbors in `S`,
//! * *d-total vector dominating set* if every vertex (member or not) has at
//!   least `d(v)` neighbors in `S`,
//! * *d-multiple dominating set* if every vertex has at least `d(v)` vertices
//!   of `S` in its closed neighborhood.
//!
//! The crate provides exact solvers for all three variants based on dynamic
//! programming over branch decompositions ([`dp`], [`variants`]), exact and
//! heuristic branch-decomposition construction ([`decomp`]), a kernelization
//! and decision pipeline aimed at planar inputs ([`planar`]), a brute-force
//! oracle for cross-checking ([`oracle`]), instance file parsing ([`io`]),
//! and a convenience facade that wires the pieces together ([`solver`]).

pub mod bench;
pub mod decomp;
pub mod dp;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod planar;
pub mod solver;
mod util;
pub mod variants;

pub use graph::{EdgeId, Graph, GraphError, Vertex};
pub use instance::{check_domination, DemandVector, Instance, ProblemKind};
