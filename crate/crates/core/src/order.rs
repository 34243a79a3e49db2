//! Order functions on the three separation universes of a bipartite graph.
//!
//! All values live in `½ℕ` and are stored as doubled integers.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, Side};
use crate::error::{Error, Result};
use crate::separation::{OrientedSep, SubsetMask};

/// A non-negative half-integer, `doubled / 2`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct HalfInt {
    doubled: u64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };

    pub const fn from_doubled(doubled: u64) -> Self {
        HalfInt { doubled }
    }

    pub const fn from_int(n: u64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub const fn doubled(self) -> u64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled.is_multiple_of(2)
    }

    /// `m · self`.
    pub const fn times(self, m: u64) -> Self {
        HalfInt {
            doubled: self.doubled * m,
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled + rhs.doubled,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// Which order function, and hence which ground set, a separation is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    SideX,
    SideY,
    Edge,
    PartitionX,
    PartitionY,
}

impl OrderKind {
    pub fn ground_len(self, g: &BipartiteGraph) -> usize {
        match self {
            OrderKind::SideX | OrderKind::PartitionX => g.x().len(),
            OrderKind::SideY | OrderKind::PartitionY => g.y().len(),
            OrderKind::Edge => g.edge_count(),
        }
    }
}

fn check_len(s: &OrientedSep, n: usize) -> Result<()> {
    if s.ground_len() == n {
        Ok(())
    } else {
        Err(Error::SideMismatch("separation has the wrong ground set"))
    }
}

/// `Σ 2·min(|M∩A|, |M∩B|) − |M∩A∩B|` over the given masks `M`.
#[inline]
pub(crate) fn doubled_sum(masks: &[SubsetMask], a: SubsetMask, b: SubsetMask) -> u64 {
    let mid = a & b;
    masks
        .iter()
        .map(|&m| {
            let (ca, cb) = ((m & a).count(), (m & b).count());
            2 * u64::from(ca.min(cb)) - u64::from((m & mid).count())
        })
        .sum()
}

#[inline]
pub(crate) fn side_doubled(g: &BipartiteGraph, side: Side, s: &OrientedSep) -> u64 {
    doubled_sum(g.neighbor_masks(side.other()), s.a(), s.b())
}

#[inline]
pub(crate) fn edge_doubled(g: &BipartiteGraph, s: &OrientedSep) -> u64 {
    doubled_sum(g.incidence_masks(Side::X), s.a(), s.b())
        + doubled_sum(g.incidence_masks(Side::Y), s.a(), s.b())
}

#[inline]
pub(crate) fn partition_doubled(g: &BipartiteGraph, side: Side, s: &OrientedSep) -> u64 {
    g.neighbor_masks(side.other())
        .iter()
        .map(|&m| 2 * u64::from((m & s.a()).count().min((m & s.b()).count())))
        .sum()
}

/// `|A,B|` for a separation of one side, summing over the other side.
pub fn order_side(g: &BipartiteGraph, side: Side, s: &OrientedSep) -> Result<HalfInt> {
    check_len(s, g.side(side).len())?;
    Ok(HalfInt::from_doubled(side_doubled(g, side, s)))
}

/// The same value as [`order_side`], computed from edge counts between the
/// shifted sides: with `P = A▷`, `Q = B▷`, `T = P ∩ Q` and `E(U, W)` the number
/// of edges from `U` into `W`,
/// `|E(P,B)| + |E(Q,A)| − (|E(T,A)| + |E(T,B)|)/2 − |E(other side, A∩B)|/2`.
///
/// A tied vertex contributes `|N∩A| = |N∩B|` to both leading terms, so the
/// correction halves `|N∩A| + |N∩B|`, which exceeds its degree by its number
/// of neighbours in the middle.
pub fn order_side_edge_form(g: &BipartiteGraph, side: Side, s: &OrientedSep) -> Result<HalfInt> {
    check_len(s, g.side(side).len())?;
    let (a, b) = (s.a(), s.b());
    let mut doubled = 0u64;
    let mut subtract = 0u64;
    for &n in g.neighbor_masks(side.other()) {
        let (ca, cb) = (u64::from((n & a).count()), u64::from((n & b).count()));
        if ca >= cb {
            doubled += 2 * cb;
        }
        if ca <= cb {
            doubled += 2 * ca;
        }
        if ca == cb {
            subtract += ca + cb;
        }
        subtract += u64::from((n & a & b).count());
    }
    Ok(HalfInt::from_doubled(doubled - subtract))
}

/// `|C,D|_E`, summing over every vertex on both sides.
pub fn order_edge(g: &BipartiteGraph, s: &OrientedSep) -> Result<HalfInt> {
    check_len(s, g.edge_count())?;
    Ok(HalfInt::from_doubled(edge_doubled(g, s)))
}

/// `Σ min(|N∩A|, |N∩B|)` for a partition of one side; always an integer.
pub fn order_partition(g: &BipartiteGraph, side: Side, s: &OrientedSep) -> Result<HalfInt> {
    check_len(s, g.side(side).len())?;
    if !s.is_partition() {
        return Err(Error::NotAPartition);
    }
    Ok(HalfInt::from_doubled(partition_doubled(g, side, s)))
}

/// Dispatches on `kind`.
pub fn order(g: &BipartiteGraph, kind: OrderKind, s: &OrientedSep) -> Result<HalfInt> {
    match kind {
        OrderKind::SideX => order_side(g, Side::X, s),
        OrderKind::SideY => order_side(g, Side::Y, s),
        OrderKind::Edge => order_edge(g, s),
        OrderKind::PartitionX => order_partition(g, Side::X, s),
        OrderKind::PartitionY => order_partition(g, Side::Y, s),
    }
}

/// Unchecked doubled order; the caller guarantees ground set and partition-ness.
#[inline]
pub(crate) fn order_doubled(g: &BipartiteGraph, kind: OrderKind, s: &OrientedSep) -> u64 {
    match kind {
        OrderKind::SideX => side_doubled(g, Side::X, s),
        OrderKind::SideY => side_doubled(g, Side::Y, s),
        OrderKind::Edge => edge_doubled(g, s),
        OrderKind::PartitionX => partition_doubled(g, Side::X, s),
        OrderKind::PartitionY => partition_doubled(g, Side::Y, s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::{complete_bipartite, gen_planted, matching};

    fn sep(g: &crate::separation::GroundSet, a: &[&str], b: &[&str]) -> OrientedSep {
        OrientedSep::new(g.mask_of(a).unwrap(), g.mask_of(b).unwrap()).unwrap()
    }

    #[test]
    fn half_int_display() {
        assert_eq!(HalfInt::from_doubled(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
        assert!(HalfInt::from_doubled(1) < HalfInt::from_int(1));
    }

    #[test]
    fn side_order_examples() {
        let m2 = matching(2);
        let s = sep(m2.x(), &["x1"], &["x2"]);
        assert_eq!(order_side(&m2, Side::X, &s).unwrap(), HalfInt::ZERO);
        assert_eq!(order_side_edge_form(&m2, Side::X, &s).unwrap(), HalfInt::ZERO);

        let k22 = complete_bipartite(2, 2);
        let s = sep(k22.x(), &["x1"], &["x2"]);
        assert_eq!(order_side(&k22, Side::X, &s).unwrap(), HalfInt::from_int(2));
        assert_eq!(order_side_edge_form(&k22, Side::X, &s).unwrap(), HalfInt::from_int(2));

        let k33 = complete_bipartite(3, 3);
        let bottom = OrientedSep::partition(k33.x().empty_mask());
        assert_eq!(order_side(&k33, Side::X, &bottom).unwrap(), HalfInt::ZERO);
        assert_eq!(order_side_edge_form(&k33, Side::X, &bottom).unwrap(), HalfInt::ZERO);
        let s = OrientedSep::new(k33.x().mask_of(&["x1"]).unwrap(), k33.x().full_mask()).unwrap();
        assert_eq!(order_side(&k33, Side::X, &s).unwrap(), HalfInt::from_doubled(3));
        assert!(matches!(
            order_side(&k33, Side::X, &OrientedSep::partition(SubsetMask::empty(2))),
            Err(Error::SideMismatch(_))
        ));
    }

    #[test]
    fn edge_order_examples() {
        let m2 = matching(2);
        let s = sep(m2.edges(), &["x1~y1"], &["x2~y2"]);
        assert_eq!(order_edge(&m2, &s).unwrap(), HalfInt::ZERO);

        let k22 = complete_bipartite(2, 2);
        let full = k22.edges().full_mask();
        let s = OrientedSep::new(full, full).unwrap();
        assert_eq!(order_edge(&k22, &s).unwrap(), HalfInt::from_int(4));
        let s = OrientedSep::partition(k22.edges().empty_mask());
        assert_eq!(order_edge(&k22, &s).unwrap(), HalfInt::ZERO);
    }

    #[test]
    fn partition_order_examples() {
        let k22 = complete_bipartite(2, 2);
        let s = sep(k22.x(), &["x1"], &["x2"]);
        assert_eq!(order_partition(&k22, Side::X, &s).unwrap(), HalfInt::from_int(2));
        let bottom = OrientedSep::partition(k22.x().empty_mask());
        assert_eq!(order_partition(&k22, Side::X, &bottom).unwrap(), HalfInt::ZERO);

        let blocks = gen_planted(&[(3, 3), (3, 3)], 1.0, 0.0, 1);
        let s = OrientedSep::partition(blocks.x().mask_of(&["x1", "x2", "x3"]).unwrap());
        assert_eq!(order_partition(&blocks, Side::X, &s).unwrap(), HalfInt::ZERO);

        let s = OrientedSep::new(k22.x().full_mask(), k22.x().full_mask()).unwrap();
        assert_eq!(order_partition(&k22, Side::X, &s), Err(Error::NotAPartition));
    }
}
