//! Shift maps between the separations of `X`, of `Y` and of the edge set.
//!
//! A vertex is assigned by majority of its neighbours (or incident edges);
//! ties and vertices without neighbours satisfy both inequalities and land in
//! the middle. The partition shift sends ties to the first side instead.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, Side};
use crate::error::{Error, Result};
use crate::order::OrderKind;
use crate::separation::{OrientedSep, SepMode, SubsetMask};

/// One of the separation universes attached to a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Universe {
    SideX,
    SideY,
    Edges,
    PartitionsX,
    PartitionsY,
}

impl Universe {
    pub fn order_kind(self) -> OrderKind {
        match self {
            Universe::SideX => OrderKind::SideX,
            Universe::SideY => OrderKind::SideY,
            Universe::Edges => OrderKind::Edge,
            Universe::PartitionsX => OrderKind::PartitionX,
            Universe::PartitionsY => OrderKind::PartitionY,
        }
    }

    pub fn ground_len(self, g: &BipartiteGraph) -> usize {
        self.order_kind().ground_len(g)
    }

    pub fn sep_mode(self) -> SepMode {
        match self {
            Universe::PartitionsX | Universe::PartitionsY => SepMode::PartitionsOnly,
            _ => SepMode::AllSeparations,
        }
    }

    /// The side whose vertices form the ground set, if any.
    pub fn side(self) -> Option<Side> {
        match self {
            Universe::SideX | Universe::PartitionsX => Some(Side::X),
            Universe::SideY | Universe::PartitionsY => Some(Side::Y),
            Universe::Edges => None,
        }
    }

    pub fn side_universe(side: Side) -> Universe {
        match side {
            Side::X => Universe::SideX,
            Side::Y => Universe::SideY,
        }
    }

    pub fn partition_universe(side: Side) -> Universe {
        match side {
            Side::X => Universe::PartitionsX,
            Side::Y => Universe::PartitionsY,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Universe::SideX => "x",
            Universe::SideY => "y",
            Universe::Edges => "e",
            Universe::PartitionsX => "bx",
            Universe::PartitionsY => "by",
        }
    }
}

/// `({i : |M_i∩a| ≥ |M_i∩b|}, {i : |M_i∩a| ≤ |M_i∩b|})` over the masks `M_i`.
fn majority(masks: &[SubsetMask], a: SubsetMask, b: SubsetMask) -> OrientedSep {
    let n = masks.len();
    let (mut p, mut q) = (SubsetMask::empty(n), SubsetMask::empty(n));
    for (i, &m) in masks.iter().enumerate() {
        let (ca, cb) = ((m & a).count(), (m & b).count());
        if ca >= cb {
            p = p.with(i);
        }
        if ca <= cb {
            q = q.with(i);
        }
    }
    OrientedSep::from_sides(p, q)
}

fn expect_len(s: &OrientedSep, n: usize) -> Result<()> {
    if s.ground_len() == n {
        Ok(())
    } else {
        Err(Error::SideMismatch("separation has the wrong ground set"))
    }
}

/// `(A,B)^▷`: a separation of `from` shifted to the other side.
pub fn shift_side(g: &BipartiteGraph, from: Side, s: &OrientedSep) -> Result<OrientedSep> {
    expect_len(s, g.side(from).len())?;
    Ok(shift_side_unchecked(g, from, s))
}

#[inline]
pub(crate) fn shift_side_unchecked(g: &BipartiteGraph, from: Side, s: &OrientedSep) -> OrientedSep {
    majority(g.neighbor_masks(from.other()), s.a(), s.b())
}

/// Shift of an oriented partition with ties sent to the first side.
pub fn shift_partition(g: &BipartiteGraph, from: Side, s: &OrientedSep) -> Result<OrientedSep> {
    expect_len(s, g.side(from).len())?;
    if !s.is_partition() {
        return Err(Error::NotAPartition);
    }
    Ok(shift_partition_unchecked(g, from, s))
}

#[inline]
pub(crate) fn shift_partition_unchecked(
    g: &BipartiteGraph,
    from: Side,
    s: &OrientedSep,
) -> OrientedSep {
    let masks = g.neighbor_masks(from.other());
    let mut c = SubsetMask::empty(masks.len());
    for (i, &m) in masks.iter().enumerate() {
        if (m & s.a()).count() >= (m & s.b()).count() {
            c = c.with(i);
        }
    }
    OrientedSep::partition(c)
}

/// `(A,B)^E = (E(A), E(B))`.
pub fn sep_to_edges(g: &BipartiteGraph, from: Side, s: &OrientedSep) -> Result<OrientedSep> {
    expect_len(s, g.side(from).len())?;
    Ok(sep_to_edges_unchecked(g, from, s))
}

#[inline]
pub(crate) fn sep_to_edges_unchecked(
    g: &BipartiteGraph,
    from: Side,
    s: &OrientedSep,
) -> OrientedSep {
    // Every edge has an endpoint on `from`, which lies in A or B.
    OrientedSep::from_sides(g.edges_at(from, s.a()), g.edges_at(from, s.b()))
}

/// `(C,D)^◀` onto `target` by majority of incident edges.
pub fn edges_to_side(g: &BipartiteGraph, s: &OrientedSep, target: Side) -> Result<OrientedSep> {
    expect_len(s, g.edge_count())?;
    Ok(edges_to_side_unchecked(g, s, target))
}

#[inline]
pub(crate) fn edges_to_side_unchecked(
    g: &BipartiteGraph,
    s: &OrientedSep,
    target: Side,
) -> OrientedSep {
    majority(g.incidence_masks(target), s.a(), s.b())
}

/// The shift from universe `from` to universe `to`, where one exists.
pub fn shift_between(
    g: &BipartiteGraph,
    from: Universe,
    to: Universe,
    s: &OrientedSep,
) -> Result<OrientedSep> {
    check_shift(from, to)?;
    expect_len(s, from.ground_len(g))?;
    if from.sep_mode() == SepMode::PartitionsOnly && !s.is_partition() {
        return Err(Error::NotAPartition);
    }
    Ok(shift_unchecked(g, from, to, s))
}

/// Errors unless `from → to` is one of the defined shifts.
pub fn check_shift(from: Universe, to: Universe) -> Result<()> {
    use Universe::*;
    match (from, to) {
        (SideX, SideY) | (SideY, SideX) | (SideX, Edges) | (SideY, Edges) | (Edges, SideX)
        | (Edges, SideY) | (PartitionsX, PartitionsY) | (PartitionsY, PartitionsX) => Ok(()),
        _ => Err(Error::UnsupportedShift {
            from: from.name(),
            to: to.name(),
        }),
    }
}

#[inline]
pub(crate) fn shift_unchecked(
    g: &BipartiteGraph,
    from: Universe,
    to: Universe,
    s: &OrientedSep,
) -> OrientedSep {
    use Universe::*;
    match (from, to) {
        (SideX, SideY) => shift_side_unchecked(g, Side::X, s),
        (SideY, SideX) => shift_side_unchecked(g, Side::Y, s),
        (SideX, Edges) => sep_to_edges_unchecked(g, Side::X, s),
        (SideY, Edges) => sep_to_edges_unchecked(g, Side::Y, s),
        (Edges, SideX) => edges_to_side_unchecked(g, s, Side::X),
        (Edges, SideY) => edges_to_side_unchecked(g, s, Side::Y),
        (PartitionsX, PartitionsY) => shift_partition_unchecked(g, Side::X, s),
        (PartitionsY, PartitionsX) => shift_partition_unchecked(g, Side::Y, s),
        _ => unreachable!("shift {from:?} -> {to:?} is not defined"),
    }
}

/// A set of oriented separations of one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SepFamily {
    pub universe: Universe,
    pub members: BTreeSet<OrientedSep>,
}

impl SepFamily {
    pub fn new<I: IntoIterator<Item = OrientedSep>>(universe: Universe, members: I) -> Self {
        SepFamily {
            universe,
            members: members.into_iter().collect(),
        }
    }

    pub fn contains(&self, s: &OrientedSep) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &SepFamily) -> bool {
        self.universe == other.universe && self.members.is_subset(&other.members)
    }
}

/// Membership predicate for the preimage of a family under a shift.
#[derive(Debug, Clone, Copy)]
pub struct PullBack<'a> {
    graph: &'a BipartiteGraph,
    over: Universe,
    family: &'a SepFamily,
}

impl PullBack<'_> {
    pub fn universe(&self) -> Universe {
        self.over
    }

    /// Whether the shift of `s` lies in the family.
    pub fn contains(&self, s: &OrientedSep) -> bool {
        s.ground_len() == self.over.ground_len(self.graph)
            && self
                .family
                .contains(&shift_unchecked(self.graph, self.over, self.family.universe, s))
    }

    /// The members of `candidates` that lie in the preimage.
    pub fn materialize<I: IntoIterator<Item = OrientedSep>>(&self, candidates: I) -> SepFamily {
        SepFamily::new(
            self.over,
            candidates.into_iter().filter(|s| self.contains(s)),
        )
    }
}

/// `{s over `over` : shift(s) ∈ family}`, as a lazy predicate.
pub fn pull_back<'a>(
    g: &'a BipartiteGraph,
    family: &'a SepFamily,
    over: Universe,
) -> Result<PullBack<'a>> {
    check_shift(over, family.universe)?;
    Ok(PullBack {
        graph: g,
        over,
        family,
    })
}

/// The image of a family under the shift to `to`.
pub fn push_forward(g: &BipartiteGraph, family: &SepFamily, to: Universe) -> Result<SepFamily> {
    check_shift(family.universe, to)?;
    Ok(SepFamily::new(
        to,
        family
            .members
            .iter()
            .map(|s| shift_unchecked(g, family.universe, to, s)),
    ))
}

/// Vertices of `side` with strictly more incident edges in `C` than in `D`.
fn strictly_prefers(g: &BipartiteGraph, s: &OrientedSep, side: Side) -> SubsetMask {
    let shifted = edges_to_side_unchecked(g, s, side);
    shifted.a() - shifted.b()
}

/// Moves `e` from `D` into `C ∖ D`. Requires the `side`-endpoint of `e` to
/// strictly prefer `C`; the order does not increase and `◀` is unchanged.
pub fn move_edge_over(
    g: &BipartiteGraph,
    s: &OrientedSep,
    e: usize,
    side: Side,
) -> Result<OrientedSep> {
    expect_len(s, g.edge_count())?;
    if e >= g.edge_count() {
        return Err(Error::PreconditionViolated(format!("edge {e} does not exist")));
    }
    let v = g.endpoint(e, side);
    if !strictly_prefers(g, s, side).contains(v) {
        return Err(Error::PreconditionViolated(format!(
            "endpoint {} of edge {} does not strictly prefer the first side",
            g.side(side).label(v),
            g.edges().label(e)
        )));
    }
    Ok(OrientedSep::from_sides(s.a().with(e), s.b().without(e)))
}

/// Mirror of [`move_edge_over`]: moves `e` into `D ∖ C`.
pub fn move_edge_back(
    g: &BipartiteGraph,
    s: &OrientedSep,
    e: usize,
    side: Side,
) -> Result<OrientedSep> {
    move_edge_over(g, &s.inverse(), e, side).map(|t| t.inverse())
}

/// Moves every edge at a vertex with a strict preference to the strict part of
/// the preferred side, until nothing changes.
pub fn normalize_edge_sep(g: &BipartiteGraph, s: &OrientedSep, side: Side) -> Result<OrientedSep> {
    expect_len(s, g.edge_count())?;
    let mut cur = *s;
    loop {
        let prev = cur;
        let to_c = g.edges_at(side, strictly_prefers(g, &cur, side));
        for e in (to_c - (cur.a() - cur.b())).iter() {
            cur = move_edge_over(g, &cur, e, side)?;
        }
        let to_d = g.edges_at(side, strictly_prefers(g, &cur.inverse(), side));
        for e in (to_d - (cur.b() - cur.a())).iter() {
            cur = move_edge_back(g, &cur, e, side)?;
        }
        if cur == prev {
            return Ok(cur);
        }
    }
}

/// Adds `e` to `C`, keeping it in `D`. Requires the `side`-endpoint of `e` to
/// weakly prefer `C`; the order does not increase and `◀` weakly increases.
pub fn move_edge_to_middle(
    g: &BipartiteGraph,
    s: &OrientedSep,
    e: usize,
    side: Side,
) -> Result<OrientedSep> {
    expect_len(s, g.edge_count())?;
    if e >= g.edge_count() {
        return Err(Error::PreconditionViolated(format!("edge {e} does not exist")));
    }
    if s.a().contains(e) {
        return Ok(*s);
    }
    let v = g.endpoint(e, side);
    if !edges_to_side_unchecked(g, s, side).a().contains(v) {
        return Err(Error::PreconditionViolated(format!(
            "endpoint {} of edge {} prefers the second side",
            g.side(side).label(v),
            g.edges().label(e)
        )));
    }
    Ok(OrientedSep::from_sides(s.a().with(e), s.b()))
}
