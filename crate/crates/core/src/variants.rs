//! Total vector and multiple domination over a rooted decomposition.
//!
//! Both variants reuse the engine in [`crate::dp`] with paired colorings:
//! a member's demand matters too, so every boundary vertex carries both a
//! membership flag and a residual. Total vector domination counts open
//! neighborhoods; multiple domination counts closed ones, letting a member
//! cover one unit of its own demand.

use crate::decomp::RootedDecomposition;
use crate::dp::{run, DpConfig, DpError, DpOutcome, Mode};
use crate::graph::Graph;
use crate::instance::DemandVector;

/// Minimum total vector dominating set: every vertex, member or not, needs
/// `d(v)` neighbors in the set.
pub fn solve_total(
    g: &Graph,
    demands: &DemandVector,
    rooted: &RootedDecomposition,
    cfg: &DpConfig,
) -> Result<DpOutcome, DpError> {
    run(g, demands, Mode::TOTAL, rooted, cfg)
}

/// Minimum multiple dominating set: every vertex needs `d(v)` set vertices
/// in its closed neighborhood.
pub fn solve_multiple(
    g: &Graph,
    demands: &DemandVector,
    rooted: &RootedDecomposition,
    cfg: &DpConfig,
) -> Result<DpOutcome, DpError> {
    run(g, demands, Mode::MULTIPLE, rooted, cfg)
}
