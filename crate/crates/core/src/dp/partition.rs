//! Classification of boundary vertices at a merge.
//!
//! When an internal node combines its two children, every vertex appearing
//! in any of the three order sets falls into exactly one class, determined
//! by which order sets contain it. The parent order set is covered by the
//! two child order sets, and the children's extra vertices (beyond the
//! parent) coincide; both facts follow from the order function and are
//! checked here rather than assumed.

use crate::graph::Vertex;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parent boundary vertex {0} appears in neither child order set")]
    ParentNotCovered(Vertex),
    #[error("vertex {0} appears in exactly one child order set but not the parent")]
    ChildrenMismatch(Vertex),
}

/// The four classes of boundary vertices at a merge, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSets {
    /// In the parent and left child order sets only.
    pub parent_and_left: Vec<Vertex>,
    /// In the parent and right child order sets only.
    pub parent_and_right: Vec<Vertex>,
    /// In all three order sets.
    pub shared_by_all: Vec<Vertex>,
    /// In both child order sets but not the parent.
    pub children_only: Vec<Vertex>,
}

/// Splits the vertices of `parent`, `left`, and `right` (each sorted) into
/// the four merge classes.
pub fn partition_sets(
    parent: &[Vertex],
    left: &[Vertex],
    right: &[Vertex],
) -> Result<PartitionSets, PartitionError> {
    let has = |set: &[Vertex], v: Vertex| set.binary_search(&v).is_ok();
    let mut out = PartitionSets {
        parent_and_left: Vec::new(),
        parent_and_right: Vec::new(),
        shared_by_all: Vec::new(),
        children_only: Vec::new(),
    };
    for &v in parent {
        match (has(left, v), has(right, v)) {
            (true, true) => out.shared_by_all.push(v),
            (true, false) => out.parent_and_left.push(v),
            (false, true) => out.parent_and_right.push(v),
            (false, false) => return Err(PartitionError::ParentNotCovered(v)),
        }
    }
    for &v in left {
        if !has(parent, v) {
            if !has(right, v) {
                return Err(PartitionError::ChildrenMismatch(v));
            }
            out.children_only.push(v);
        }
    }
    for &v in right {
        if !has(parent, v) && !has(left, v) {
            return Err(PartitionError::ChildrenMismatch(v));
        }
    }
    Ok(out)
}
