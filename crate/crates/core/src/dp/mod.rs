//! Dynamic programming over a rooted branch decomposition.
//!
//! Tables are indexed by colorings of the order set of each node's upward
//! edge. A coloring assigns each boundary vertex either membership in the
//! dominating set or a residual `i` meaning "still allowed to miss `i` of
//! its demand inside the processed subgraph". Leaf edges get their tables
//! by direct enumeration; internal edges combine the two child tables by
//! enumerating, for every parent coloring, the consistent pairs of child
//! colorings and taking the cheapest.
//!
//! The three problem flavors share one engine, parameterized by [`Mode`]:
//! whether a vertex counts towards its own demand (closed neighborhoods)
//! and whether members also carry a residual (their demand matters too).

mod domain;
mod engine;
mod partition;

pub use domain::ColorDomain;
pub use engine::{run, solve_vector, DpOutcome};
pub use partition::{partition_sets, PartitionError, PartitionSets};

use crate::instance::ProblemKind;
use thiserror::Error;

/// Marker for table entries with no feasible set.
pub const INFEASIBLE: u32 = u32::MAX;

/// Semantic switches distinguishing the three domination flavors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mode {
    /// Count a member vertex towards its own demand.
    pub closed: bool,
    /// Members carry residuals: their demand must be met as well.
    pub member_residual: bool,
}

impl Mode {
    pub const VECTOR: Mode = Mode {
        closed: false,
        member_residual: false,
    };
    pub const TOTAL: Mode = Mode {
        closed: false,
        member_residual: true,
    };
    pub const MULTIPLE: Mode = Mode {
        closed: true,
        member_residual: true,
    };

    pub fn for_kind(kind: ProblemKind) -> Mode {
        match kind {
            ProblemKind::Vector => Mode::VECTOR,
            ProblemKind::TotalVector => Mode::TOTAL,
            ProblemKind::Multiple => Mode::MULTIPLE,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error("table at node {node} would hold {len} entries, above the cap {cap}")]
    TableTooLarge { node: usize, len: u128, cap: u64 },
    #[error("inconsistent order sets: {0}")]
    Partition(#[from] PartitionError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

#[derive(Debug, Clone)]
pub struct DpConfig {
    /// Prune table entries above this cardinality; sound for decision use.
    pub budget: Option<u32>,
    /// Refuse tables with more entries than this.
    pub max_table_len: u64,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig {
            budget: None,
            max_table_len: 1 << 24,
        }
    }
}

/// Work measurements, one entry per processed node in postorder.
#[derive(Debug, Clone, Default)]
pub struct DpStats {
    pub edges: Vec<EdgeStats>,
}

#[derive(Debug, Clone)]
pub struct EdgeStats {
    pub node: usize,
    /// Size of the order set of the node's upward edge.
    pub boundary: usize,
    /// Number of table entries, the product of per-vertex color counts.
    pub table_len: u64,
    pub merge: Option<MergeStats>,
}

#[derive(Debug, Clone)]
pub struct MergeStats {
    /// Sizes of the four boundary classes: parent-and-left, parent-and-right,
    /// shared-by-all, children-only.
    pub sizes: [usize; 4],
    /// Child coloring pairs actually inspected across all parent colorings.
    pub pairs: u64,
}
