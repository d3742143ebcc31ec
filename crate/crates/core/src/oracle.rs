//! Brute-force reference solver.
//!
//! Enumerates candidate sets by increasing cardinality and tests each one
//! through [`check_domination`]'s predicate, so oracle feasibility agrees
//! with the public predicate by construction. Intended for cross-checking
//! the DP solvers on small instances.

use crate::graph::Vertex;
use crate::instance::{check_domination_mask, Instance, ProblemKind};
use crate::util::for_each_combination;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the oracle cap {cap}")]
    TooLarge { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    /// Refuse instances with more vertices than this.
    pub max_vertices: usize,
    /// Also count the optimal solutions (scans the whole optimal layer).
    pub count_optima: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_vertices: 20,
            count_optima: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Minimum size and the lexicographically first optimal set, or `None`
    /// if the instance is infeasible.
    pub optimum: Option<(u32, Vec<Vertex>)>,
    /// Number of optimal solutions, when requested.
    pub optimal_count: Option<u64>,
}

/// Minimum solution by exhaustive search, smallest cardinality first.
pub fn brute_min(instance: &Instance) -> Result<OracleResult, OracleError> {
    brute_min_with(instance, &OracleConfig::default())
}

pub fn brute_min_with(
    instance: &Instance,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    let g = &instance.graph;
    let n = g.vertex_count();
    if n > cfg.max_vertices {
        return Err(OracleError::TooLarge {
            n,
            cap: cfg.max_vertices,
        });
    }

    // For the vector variant a vertex whose demand exceeds its degree can
    // never be dominated from outside, so it belongs to every solution.
    let mut forced: Vec<Vertex> = Vec::new();
    if instance.kind == ProblemKind::Vector {
        forced = g
            .vertices()
            .filter(|&v| instance.demands.get(v) as usize > g.degree(v))
            .collect();
    }
    let free: Vec<Vertex> = g
        .vertices()
        .filter(|v| !forced.contains(v))
        .collect();

    let mut mask = vec![false; n];
    for &v in &forced {
        mask[v as usize] = true;
    }

    let mut best: Option<(u32, Vec<Vertex>)> = None;
    let mut count: u64 = 0;
    for extra in 0..=free.len() {
        let size = (forced.len() + extra) as u32;
        for_each_combination(free.len(), extra, |chosen| {
            for &i in chosen {
                mask[free[i] as usize] = true;
            }
            let feasible =
                check_domination_mask(g, &instance.demands, instance.kind, &mask);
            if feasible {
                if best.is_none() {
                    let set: Vec<Vertex> =
                        (0..n as u32).filter(|&v| mask[v as usize]).collect();
                    best = Some((size, set));
                }
                count += 1;
            }
            for &i in chosen {
                mask[free[i] as usize] = false;
            }
            // Without counting, the first feasible set of the layer wins;
            // with counting, finish the layer.
            !(feasible && !cfg.count_optima)
        });
        if best.is_some() {
            break;
        }
    }

    Ok(OracleResult {
        optimum: best,
        optimal_count: if cfg.count_optima && count > 0 {
            Some(count)
        } else if cfg.count_optima {
            None
        } else {
            None
        },
    })
}

/// Decision version: is there a feasible set of size at most `k`?
pub fn brute_decide(instance: &Instance, k: u32) -> Result<bool, OracleError> {
    let res = brute_min(instance)?;
    Ok(matches!(res.optimum, Some((size, _)) if size <= k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::Graph;
    use crate::instance::DemandVector;

    fn inst(g: Graph, demands: Vec<u32>, kind: ProblemKind) -> Instance {
        Instance::new(g, DemandVector::new(demands), kind, None).unwrap()
    }

    #[test]
    fn p3_unit_demands() {
        let opt = |kind| {
            brute_min(&inst(generate::path(3), vec![1; 3], kind))
                .unwrap()
                .optimum
                .unwrap()
        };
        assert_eq!(opt(ProblemKind::Vector), (1, vec![1]));
        assert_eq!(opt(ProblemKind::Multiple), (1, vec![1]));
        let (size, set) = opt(ProblemKind::TotalVector);
        assert_eq!(size, 2);
        assert_eq!(set, vec![0, 1]);
    }

    #[test]
    fn c4_demand_two() {
        let opt = |kind| {
            brute_min(&inst(generate::cycle(4), vec![2; 4], kind))
                .unwrap()
                .optimum
                .unwrap()
                .0
        };
        assert_eq!(opt(ProblemKind::Vector), 2);
        assert_eq!(opt(ProblemKind::TotalVector), 4);
        assert_eq!(opt(ProblemKind::Multiple), 3);
    }

    #[test]
    fn k4_demand_three_vector() {
        let r = brute_min(&inst(generate::complete(4), vec![3; 4], ProblemKind::Vector))
            .unwrap();
        assert_eq!(r.optimum.unwrap().0, 3);
    }

    #[test]
    fn infeasible_variants() {
        // Total demands above degree are infeasible.
        let r = brute_min(&inst(
            generate::path(3),
            vec![2, 1, 1],
            ProblemKind::TotalVector,
        ))
        .unwrap();
        assert_eq!(r.optimum, None);
        // Multiple demand above closed neighborhood size.
        let r = brute_min(&inst(generate::path(2), vec![3, 1], ProblemKind::Multiple))
            .unwrap();
        assert_eq!(r.optimum, None);
    }

    #[test]
    fn vector_never_infeasible_without_budget() {
        let g = generate::star(4);
        let r = brute_min(&inst(g, vec![9, 9, 9, 9, 9], ProblemKind::Vector)).unwrap();
        // Forced pre-filter commits everything; S = V works.
        assert_eq!(r.optimum.unwrap(), (5, vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn decide_thresholds() {
        let i = inst(generate::cycle(4), vec![1; 4], ProblemKind::Vector);
        assert!(brute_decide(&i, 2).unwrap());
        assert!(!brute_decide(&i, 1).unwrap());
        assert!(brute_decide(&i, 4).unwrap());
    }

    #[test]
    fn counts_optima() {
        // C4 with unit demands has 4 optimal 2-subsets for the vector
        // variant: both diagonals and the two "adjacent pair" shapes are
        // checked explicitly here instead of trusting intuition.
        let i = inst(generate::cycle(4), vec![1; 4], ProblemKind::Vector);
        let cfg = OracleConfig {
            count_optima: true,
            ..OracleConfig::default()
        };
        let r = brute_min_with(&i, &cfg).unwrap();
        let mut manual = 0;
        for a in 0..4u32 {
            for b in a + 1..4 {
                if i.check(&[a, b]).unwrap() {
                    manual += 1;
                }
            }
        }
        assert_eq!(r.optimal_count, Some(manual));
        assert_eq!(r.optimum.as_ref().unwrap().0, 2);
    }

    #[test]
    fn cap_enforced() {
        let g = generate::path(25);
        let i = inst(g, vec![1; 25], ProblemKind::Vector);
        assert_eq!(
            brute_min(&i),
            Err(OracleError::TooLarge { n: 25, cap: 20 })
        );
    }
}
