//! Problem instances: demand vectors, problem kinds, and the domination
//! predicate all solvers and oracles are checked against.

use crate::graph::{Graph, Vertex};
use serde::Serialize;
use thiserror::Error;

/// Per-vertex demands `d(v) >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandVector {
    demands: Vec<u32>,
    d_star: u32,
}

impl DemandVector {
    pub fn new(demands: Vec<u32>) -> Self {
        let d_star = demands.iter().copied().max().unwrap_or(0);
        DemandVector { demands, d_star }
    }

    pub fn uniform(n: usize, d: u32) -> Self {
        DemandVector::new(vec![d; n])
    }

    pub fn len(&self) -> usize {
        self.demands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.demands.is_empty()
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.demands[v as usize]
    }

    /// Maximum demand `d*`.
    pub fn max_demand(&self) -> u32 {
        self.d_star
    }

    /// Number of vertices with demand zero.
    pub fn zero_count(&self) -> usize {
        self.demands.iter().filter(|&&d| d == 0).count()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.demands
    }
}

/// The three domination variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    /// Only non-members need `d(v)` neighbors in the set (open neighborhood).
    Vector,
    /// Every vertex needs `d(v)` neighbors in the set (open neighborhood).
    #[serde(rename = "total")]
    TotalVector,
    /// Every vertex needs `d(v)` set vertices in its closed neighborhood.
    Multiple,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 3] = [
        ProblemKind::Vector,
        ProblemKind::TotalVector,
        ProblemKind::Multiple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Vector => "vector",
            ProblemKind::TotalVector => "total",
            ProblemKind::Multiple => "multiple",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("demand vector length {demands} does not match vertex count {n}")]
    DemandLengthMismatch { demands: usize, n: usize },
    #[error("candidate set vertex {0} out of range")]
    SetVertexOutOfRange(Vertex),
    #[error("candidate set contains duplicate vertex {0}")]
    SetDuplicate(Vertex),
}

/// A graph, demands, and problem kind, plus an optional decision budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub demands: DemandVector,
    pub kind: ProblemKind,
    pub budget: Option<u32>,
}

impl Instance {
    pub fn new(
        graph: Graph,
        demands: DemandVector,
        kind: ProblemKind,
        budget: Option<u32>,
    ) -> Result<Instance, InstanceError> {
        if demands.len() != graph.vertex_count() {
            return Err(InstanceError::DemandLengthMismatch {
                demands: demands.len(),
                n: graph.vertex_count(),
            });
        }
        Ok(Instance {
            graph,
            demands,
            kind,
            budget,
        })
    }

    /// Checks whether `set` dominates this instance (see [`check_domination`]).
    pub fn check(&self, set: &[Vertex]) -> Result<bool, InstanceError> {
        check_domination(&self.graph, &self.demands, self.kind, set)
    }
}

/// Decides whether `set` is a feasible solution for the given kind.
///
/// Rejects out-of-range or duplicate vertices in `set` instead of guessing.
pub fn check_domination(
    graph: &Graph,
    demands: &DemandVector,
    kind: ProblemKind,
    set: &[Vertex],
) -> Result<bool, InstanceError> {
    let n = graph.vertex_count();
    let mut mask = vec![false; n];
    for &v in set {
        if v as usize >= n {
            return Err(InstanceError::SetVertexOutOfRange(v));
        }
        if mask[v as usize] {
            return Err(InstanceError::SetDuplicate(v));
        }
        mask[v as usize] = true;
    }
    Ok(check_domination_mask(graph, demands, kind, &mask))
}

/// Mask-based variant used in enumeration hot loops.
pub(crate) fn check_domination_mask(
    graph: &Graph,
    demands: &DemandVector,
    kind: ProblemKind,
    mask: &[bool],
) -> bool {
    for v in graph.vertices() {
        let member = mask[v as usize];
        if kind == ProblemKind::Vector && member {
            continue;
        }
        let d = demands.get(v);
        if d == 0 {
            continue;
        }
        let mut have = match kind {
            ProblemKind::Multiple if member => 1u32,
            _ => 0,
        };
        if have < d {
            for &u in graph.neighbors(v) {
                if mask[u as usize] {
                    have += 1;
                    if have >= d {
                        break;
                    }
                }
            }
        }
        if have < d {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn p3_center_by_kind() {
        let g = p3();
        let d = DemandVector::uniform(3, 1);
        let s = [1u32];
        assert!(check_domination(&g, &d, ProblemKind::Vector, &s).unwrap());
        assert!(!check_domination(&g, &d, ProblemKind::TotalVector, &s).unwrap());
        assert!(check_domination(&g, &d, ProblemKind::Multiple, &s).unwrap());
    }

    #[test]
    fn full_set_is_vector_feasible() {
        let g = p3();
        let d = DemandVector::new(vec![7, 7, 7]);
        assert!(check_domination(&g, &d, ProblemKind::Vector, &[0, 1, 2]).unwrap());
        // Not so for the total variant: demands exceed degrees.
        assert!(!check_domination(&g, &d, ProblemKind::TotalVector, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn rejects_bad_sets() {
        let g = p3();
        let d = DemandVector::uniform(3, 1);
        assert_eq!(
            check_domination(&g, &d, ProblemKind::Vector, &[3]),
            Err(InstanceError::SetVertexOutOfRange(3))
        );
        assert_eq!(
            check_domination(&g, &d, ProblemKind::Vector, &[1, 1]),
            Err(InstanceError::SetDuplicate(1))
        );
    }

    #[test]
    fn instance_length_check() {
        let g = p3();
        let err = Instance::new(
            g,
            DemandVector::uniform(2, 1),
            ProblemKind::Vector,
            None,
        )
        .unwrap_err();
        assert_eq!(
            err,
            InstanceError::DemandLengthMismatch { demands: 2, n: 3 }
        );
    }

    #[test]
    fn zero_demands_always_dominated() {
        let g = Graph::new(5, &[(0, 1), (2, 3)]).unwrap();
        let d = DemandVector::uniform(5, 0);
        for kind in ProblemKind::ALL {
            assert!(check_domination(&g, &d, kind, &[]).unwrap());
        }
        assert_eq!(d.zero_count(), 5);
    }
}
