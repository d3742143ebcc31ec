//! Mixed-radix index space for colorings of an order set.
//!
//! Each boundary vertex contributes its own small color alphabet; a whole
//! coloring is packed into one integer by positional arithmetic. Two
//! layouts exist:
//!
//! * plain: codes `0..=d(v)` are residuals of a non-member, `d(v) + 1` is
//!   membership (`d(v) + 2` colors);
//! * paired: a membership bit and a residual are carried together, code
//!   `member * (d(v) + 1) + residual` (`2 * (d(v) + 1)` colors).

use super::Mode;
use crate::graph::Vertex;
use crate::instance::DemandVector;

#[derive(Debug, Clone)]
pub struct ColorDomain {
    verts: Vec<Vertex>,
    demands: Vec<u32>,
    radix: Vec<u64>,
    stride: Vec<u64>,
    len: u128,
    paired: bool,
}

impl ColorDomain {
    /// Lays out the domain for `verts` (must be sorted) under `mode`.
    pub fn new(verts: &[Vertex], demands: &DemandVector, mode: Mode) -> ColorDomain {
        debug_assert!(verts.windows(2).all(|p| p[0] < p[1]));
        let ds: Vec<u32> = verts.iter().map(|&v| demands.get(v)).collect();
        let radix: Vec<u64> = ds
            .iter()
            .map(|&d| {
                if mode.member_residual {
                    2 * (d as u64 + 1)
                } else {
                    d as u64 + 2
                }
            })
            .collect();
        let mut stride = vec![1u64; verts.len()];
        let mut len: u128 = 1;
        for p in 0..verts.len() {
            stride[p] = len as u64; // valid while len fits u64; checked by caller via len()
            len *= radix[p] as u128;
        }
        ColorDomain {
            verts: verts.to_vec(),
            demands: ds,
            radix,
            stride,
            len,
            paired: mode.member_residual,
        }
    }

    /// Number of colorings; `u128` so oversized domains are reportable.
    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // the empty vertex list still has one (empty) coloring
    }

    pub fn verts(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn arity(&self) -> usize {
        self.verts.len()
    }

    pub fn demand(&self, pos: usize) -> u32 {
        self.demands[pos]
    }

    pub fn radix(&self, pos: usize) -> u64 {
        self.radix[pos]
    }

    pub fn stride(&self, pos: usize) -> u64 {
        self.stride[pos]
    }

    /// Position of `v` in the vertex list, if present.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    pub fn code_at(&self, idx: u64, pos: usize) -> u32 {
        ((idx / self.stride[pos]) % self.radix[pos]) as u32
    }

    pub fn is_member_code(&self, pos: usize, code: u32) -> bool {
        if self.paired {
            code >= self.demands[pos] + 1
        } else {
            code == self.demands[pos] + 1
        }
    }

    /// Residual carried by `code`. In the plain layout membership has no
    /// residual; callers must not ask for one.
    pub fn residual(&self, pos: usize, code: u32) -> u32 {
        if self.paired {
            code % (self.demands[pos] + 1)
        } else {
            debug_assert!(code <= self.demands[pos]);
            code
        }
    }

    pub fn code(&self, pos: usize, member: bool, residual: u32) -> u32 {
        debug_assert!(residual <= self.demands[pos]);
        if self.paired {
            (member as u32) * (self.demands[pos] + 1) + residual
        } else if member {
            self.demands[pos] + 1
        } else {
            residual
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demands(ds: &[u32]) -> DemandVector {
        DemandVector::new(ds.to_vec())
    }

    #[test]
    fn plain_layout_has_demand_plus_two_colors() {
        let d = demands(&[1, 3, 0]);
        let dom = ColorDomain::new(&[0, 1, 2], &d, Mode::VECTOR);
        assert_eq!(dom.len(), 3 * 5 * 2);
        assert_eq!(dom.radix(0), 3);
        assert_eq!(dom.radix(1), 5);
        assert_eq!(dom.radix(2), 2);
        assert_eq!(dom.stride(0), 1);
        assert_eq!(dom.stride(1), 3);
        assert_eq!(dom.stride(2), 15);
    }

    #[test]
    fn paired_layout_doubles_the_residual_range() {
        let d = demands(&[1, 3, 0]);
        let dom = ColorDomain::new(&[0, 1, 2], &d, Mode::TOTAL);
        assert_eq!(dom.len(), 4 * 8 * 2);
    }

    #[test]
    fn encode_decode_roundtrip() {
        let d = demands(&[2, 1]);
        for mode in [Mode::VECTOR, Mode::TOTAL, Mode::MULTIPLE] {
            let dom = ColorDomain::new(&[0, 1], &d, mode);
            for idx in 0..dom.len() as u64 {
                let mut rebuilt = 0u64;
                for pos in 0..dom.arity() {
                    let code = dom.code_at(idx, pos);
                    let member = dom.is_member_code(pos, code);
                    if mode.member_residual || !member {
                        let r = dom.residual(pos, code);
                        assert_eq!(dom.code(pos, member, r), code);
                    }
                    rebuilt += dom.stride(pos) * code as u64;
                }
                assert_eq!(rebuilt, idx);
            }
        }
    }

    #[test]
    fn membership_codes() {
        let d = demands(&[2]);
        let plain = ColorDomain::new(&[0], &d, Mode::VECTOR);
        assert!(plain.is_member_code(0, 3));
        assert!(!plain.is_member_code(0, 2));
        let paired = ColorDomain::new(&[0], &d, Mode::MULTIPLE);
        assert!(paired.is_member_code(0, 3));
        assert!(paired.is_member_code(0, 5));
        assert!(!paired.is_member_code(0, 2));
        assert_eq!(paired.residual(0, 4), 1);
    }

    #[test]
    fn empty_order_set_has_one_coloring() {
        let d = demands(&[1]);
        let dom = ColorDomain::new(&[], &d, Mode::VECTOR);
        assert_eq!(dom.len(), 1);
        assert_eq!(dom.arity(), 0);
    }
}
