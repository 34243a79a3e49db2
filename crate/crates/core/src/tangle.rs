//! Low-order separation systems, orientations, and the tangle and profile
//! predicates, with exhaustive enumeration by backtracking.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, Side};
use crate::error::{Error, Result};
use crate::order::{order_doubled, HalfInt};
use crate::separation::{enumerate_seps, EnumCaps, GroundSet, OrientedSep, SubsetMask, UnorientedSep};
use crate::shift::Universe;

/// Default bound on the number of members [`enumerate_tangles`] accepts.
pub const DEFAULT_MEMBER_CAP: usize = 24;

/// Ground-set size up to which tangle search keeps a superset-count table.
const TABLE_LIMIT: usize = 16;

/// Labels of the ground set a universe lives on.
pub fn ground_of(g: &BipartiteGraph, universe: Universe) -> &GroundSet {
    match universe.side() {
        Some(side) => g.side(side),
        None => g.edges(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Member {
    pub sep: UnorientedSep,
    pub order: HalfInt,
}

/// All unoriented separations of order `< k`, except the full separation,
/// sorted by order and then by canonical orientation.
#[derive(Debug, Clone)]
pub struct LowOrderSystem {
    universe: Universe,
    k: HalfInt,
    ground_len: usize,
    members: Vec<Member>,
    index: HashMap<(u128, u128), usize>,
}

impl LowOrderSystem {
    fn from_members(universe: Universe, k: HalfInt, ground_len: usize, members: Vec<Member>) -> Self {
        let index = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.sep.canonical().key(), i))
            .collect();
        LowOrderSystem {
            universe,
            k,
            ground_len,
            members,
            index,
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn k(&self) -> HalfInt {
        self.k
    }

    pub fn ground_len(&self) -> usize {
        self.ground_len
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of members of order `< k'`; they form a prefix.
    pub fn prefix_len(&self, k: HalfInt) -> usize {
        self.members.partition_point(|m| m.order < k)
    }

    /// The subsystem of order `< k'`.
    pub fn restrict(&self, k: HalfInt) -> LowOrderSystem {
        let k = k.min(self.k);
        let n = self.prefix_len(k);
        Self::from_members(self.universe, k, self.ground_len, self.members[..n].to_vec())
    }

    /// Member index and orientation of `s`, if its underlying separation is a member.
    pub fn locate(&self, s: &OrientedSep) -> Option<(usize, Pick)> {
        if s.ground_len() != self.ground_len {
            return None;
        }
        let canon = s.canonical().canonical();
        let &i = self.index.get(&canon.key())?;
        Some((i, if *s == canon { Pick::Forward } else { Pick::Backward }))
    }

    pub fn contains(&self, s: &OrientedSep) -> bool {
        self.locate(s).is_some()
    }

    pub fn oriented(&self, i: usize, pick: Pick) -> OrientedSep {
        let c = self.members[i].sep.canonical();
        match pick {
            Pick::Forward => c,
            Pick::Backward => c.inverse(),
        }
    }
}

/// Builds `S_k` of `universe` by exhaustive enumeration.
pub fn build_system(
    g: &BipartiteGraph,
    universe: Universe,
    k: HalfInt,
    caps: EnumCaps,
) -> Result<LowOrderSystem> {
    let n = universe.ground_len(g);
    if universe == Universe::Edges && n > caps.edges {
        return Err(Error::CapExceeded {
            what: "edge set for enumeration",
            size: n,
            cap: caps.edges,
        });
    }
    let kind = universe.order_kind();
    let mut members: Vec<Member> = enumerate_seps(n, universe.sep_mode(), caps)?
        .filter(|s| s.key() < s.inverse().key())
        .filter_map(|s| {
            let d = order_doubled(g, kind, &s);
            (d < k.doubled()).then(|| Member {
                sep: UnorientedSep::from(s),
                order: HalfInt::from_doubled(d),
            })
        })
        .collect();
    members.sort_by_key(|m| (m.order, m.sep.canonical().key()));
    Ok(LowOrderSystem::from_members(universe, k, n, members))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pick {
    /// The canonical orientation.
    Forward,
    Backward,
}

/// A choice of exactly one orientation for every member of a system.
#[derive(Debug, Clone)]
pub struct Orientation {
    system: Arc<LowOrderSystem>,
    picks: Vec<Pick>,
}

impl PartialEq for Orientation {
    fn eq(&self, other: &Self) -> bool {
        self.system.universe == other.system.universe
            && self.system.members == other.system.members
            && self.picks == other.picks
    }
}

impl Eq for Orientation {}

/// Why a family of oriented separations fails to orient a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotTotal {
    /// Neither orientation of this (canonical) member is present.
    Neither(OrientedSep),
    Both(OrientedSep),
}

impl Orientation {
    pub fn new(system: Arc<LowOrderSystem>, picks: Vec<Pick>) -> Result<Self> {
        if picks.len() != system.len() {
            return Err(Error::PreconditionViolated(format!(
                "{} picks for {} members",
                picks.len(),
                system.len()
            )));
        }
        Ok(Orientation { system, picks })
    }

    /// Orients every member by asking `contains` about both orientations.
    pub fn from_predicate<F>(system: Arc<LowOrderSystem>, contains: F) -> Result<Self, NotTotal>
    where
        F: Fn(&OrientedSep) -> bool,
    {
        let mut picks = Vec::with_capacity(system.len());
        for m in system.members() {
            let [f, b] = m.sep.orientations();
            picks.push(match (contains(&f), contains(&b)) {
                (true, false) => Pick::Forward,
                (false, true) => Pick::Backward,
                (false, false) => return Err(NotTotal::Neither(f)),
                (true, true) => return Err(NotTotal::Both(f)),
            });
        }
        Ok(Orientation { system, picks })
    }

    pub fn system(&self) -> &Arc<LowOrderSystem> {
        &self.system
    }

    pub fn picks(&self) -> &[Pick] {
        &self.picks
    }

    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    /// The chosen oriented separations, in member order.
    pub fn separations(&self) -> impl Iterator<Item = OrientedSep> + '_ {
        self.picks
            .iter()
            .enumerate()
            .map(|(i, &p)| self.system.oriented(i, p))
    }

    pub fn contains(&self, s: &OrientedSep) -> bool {
        self.system
            .locate(s)
            .is_some_and(|(i, p)| self.picks[i] == p)
    }

    /// The induced orientation of the members of order `< k'`.
    pub fn restrict(&self, k: HalfInt) -> Orientation {
        let sub = Arc::new(self.system.restrict(k));
        let n = sub.len();
        Orientation {
            system: sub,
            picks: self.picks[..n].to_vec(),
        }
    }

    /// Restriction onto an already built subsystem of the same universe.
    pub fn restrict_into(&self, sub: &Arc<LowOrderSystem>) -> Result<Orientation> {
        let n = sub.len();
        if sub.universe != self.system.universe
            || n > self.system.len()
            || sub.members[..] != self.system.members[..n]
        {
            return Err(Error::PreconditionViolated(
                "target system is not a restriction".into(),
            ));
        }
        Ok(Orientation {
            system: Arc::clone(sub),
            picks: self.picks[..n].to_vec(),
        })
    }

    pub fn to_dump(&self, g: &BipartiteGraph) -> OrientationDump {
        let ground = ground_of(g, self.system.universe);
        let sides = |s: OrientedSep| [ground.names(s.a()), ground.names(s.b())];
        OrientationDump {
            universe: self.system.universe,
            k_doubled: self.system.k.doubled(),
            members: self
                .system
                .members
                .iter()
                .zip(&self.picks)
                .enumerate()
                .map(|(i, (m, &p))| MemberDump {
                    canonical: sides(m.sep.canonical()),
                    order_doubled: m.order.doubled(),
                    chosen: sides(self.system.oriented(i, p)),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationDump {
    pub universe: Universe,
    pub k_doubled: u64,
    pub members: Vec<MemberDump>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDump {
    pub canonical: [Vec<String>; 2],
    pub order_doubled: u64,
    pub chosen: [Vec<String>; 2],
}

/// A violated clause, quoting the offending members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Three members, possibly repeated, whose first sides cover the ground set.
    Cover([OrientedSep; 3]),
    /// `(B1,A1)` and `(A2,B2)` with `(A1,B1) ≤ (A2,B2)`.
    PointingAway(OrientedSep, OrientedSep),
    /// `(A1,B1)`, `(A2,B2)` and `(B1∩B2, A1∪A2)`.
    SupTriple([OrientedSep; 3]),
    /// A member whose first side is the whole ground set.
    Cosmall(OrientedSep),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Tangle,
    Profile,
    RegularProfile,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleReport {
    pub is_orientation: bool,
    pub violation: Option<Witness>,
    pub kind: ReportKind,
}

/// The predicate an enumeration searches for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TangleKind {
    Tangle,
    RegularProfile,
}

/// First triple `i ≤ j ≤ l` (member order) whose first sides cover the ground set.
pub fn check_tangle(o: &Orientation) -> TangleReport {
    let seps: Vec<OrientedSep> = o.separations().collect();
    let full = SubsetMask::full(o.system.ground_len);
    let mut violation = None;
    'outer: for i in 0..seps.len() {
        for j in i..seps.len() {
            let need = full - (seps[i].a() | seps[j].a());
            if let Some(l) = (j..seps.len()).find(|&l| need.is_subset(seps[l].a())) {
                violation = Some(Witness::Cover([seps[i], seps[j], seps[l]]));
                break 'outer;
            }
        }
    }
    TangleReport {
        is_orientation: true,
        kind: if violation.is_none() {
            ReportKind::Tangle
        } else {
            ReportKind::None
        },
        violation,
    }
}

fn profile_violation(seps: &[OrientedSep], o: &Orientation) -> Option<Witness> {
    for (i, r) in seps.iter().enumerate() {
        for s in &seps[i + 1..] {
            if r.inverse().leq(s) {
                return Some(Witness::PointingAway(*r, *s));
            }
            if s.inverse().leq(r) {
                return Some(Witness::PointingAway(*s, *r));
            }
        }
    }
    for (i, r) in seps.iter().enumerate() {
        for s in &seps[i..] {
            let w = r.sup(s).inverse();
            if o.contains(&w) {
                return Some(Witness::SupTriple([*r, *s, w]));
            }
        }
    }
    None
}

/// Checks both profile clauses, then regularity.
pub fn check_profile(o: &Orientation) -> TangleReport {
    let seps: Vec<OrientedSep> = o.separations().collect();
    if let Some(w) = profile_violation(&seps, o) {
        return TangleReport {
            is_orientation: true,
            violation: Some(w),
            kind: ReportKind::None,
        };
    }
    match seps.iter().find(|s| s.is_cosmall()) {
        Some(s) => TangleReport {
            is_orientation: true,
            violation: Some(Witness::Cosmall(*s)),
            kind: ReportKind::Profile,
        },
        None => TangleReport {
            is_orientation: true,
            violation: None,
            kind: ReportKind::RegularProfile,
        },
    }
}

/// No member is oriented as `(V, B)`.
pub fn check_regular(o: &Orientation) -> bool {
    o.separations().all(|s| !s.is_cosmall())
}

/// Whether `o` satisfies the predicate of `kind`.
pub fn satisfies(o: &Orientation, kind: TangleKind) -> bool {
    match kind {
        TangleKind::Tangle => check_tangle(o).violation.is_none(),
        TangleKind::RegularProfile => check_profile(o).violation.is_none(),
    }
}

/// Partition regularity: the side `(A, B)` points to has at least two
/// vertices, and together they have at least two neighbours.
pub fn partition_regular(g: &BipartiteGraph, side: Side, s: &OrientedSep) -> bool {
    let nbrs = g.neighbor_masks(side);
    let reach = s
        .b()
        .iter()
        .fold(g.side(side.other()).empty_mask(), |acc, v| acc | nbrs[v]);
    s.b().count() >= 2 && reach.count() >= 2
}

/// First chosen member failing `admissible`.
pub fn check_admissible(
    o: &Orientation,
    admissible: &dyn Fn(&OrientedSep) -> bool,
) -> Option<OrientedSep> {
    o.separations().find(|s| !admissible(s))
}

/// Superset counts of the chosen first sides (`table[m] > 0` iff some chosen
/// first side contains `m`), plus the distinct first sides in push order.
struct CoverTable {
    table: Vec<u32>,
    counts: Vec<u32>,
    distinct: Vec<SubsetMask>,
}

impl CoverTable {
    fn new(n: usize) -> Self {
        CoverTable {
            table: vec![0; 1 << n],
            counts: vec![0; 1 << n],
            distinct: Vec::new(),
        }
    }

    fn push(&mut self, a: SubsetMask) {
        let bits = a.bits() as usize;
        self.counts[bits] += 1;
        if self.counts[bits] > 1 {
            return;
        }
        self.distinct.push(a);
        let mut sub = bits;
        loop {
            self.table[sub] += 1;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
    }

    fn pop(&mut self, a: SubsetMask) {
        let bits = a.bits() as usize;
        self.counts[bits] -= 1;
        if self.counts[bits] > 0 {
            return;
        }
        let last = self.distinct.pop();
        debug_assert_eq!(last, Some(a));
        let mut sub = bits;
        loop {
            self.table[sub] -= 1;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
    }

    fn covered(&self, need: SubsetMask) -> bool {
        self.table[need.bits() as usize] > 0
    }
}

struct Search<'a> {
    system: &'a LowOrderSystem,
    kind: TangleKind,
    admissible: &'a dyn Fn(&OrientedSep) -> bool,
    full: SubsetMask,
    chosen: Vec<OrientedSep>,
    picks: Vec<Pick>,
    table: Option<CoverTable>,
    chosen_set: HashSet<(u128, u128)>,
    out: Vec<Vec<Pick>>,
}

impl Search<'_> {
    /// Whether the newly pushed `t` completes a violation.
    fn violates(&self, t: &OrientedSep) -> bool {
        match self.kind {
            TangleKind::Tangle => match &self.table {
                Some(table) => table
                    .distinct
                    .iter()
                    .any(|&p| table.covered(self.full - (t.a() | p))),
                None => self.chosen.iter().any(|p| {
                    let need = self.full - (t.a() | p.a());
                    self.chosen.iter().any(|q| need.is_subset(q.a()))
                }),
            },
            TangleKind::RegularProfile => {
                if t.is_cosmall() {
                    return true;
                }
                let prev = &self.chosen[..self.chosen.len() - 1];
                if prev
                    .iter()
                    .any(|p| t.inverse().leq(p) || p.inverse().leq(t))
                {
                    return true;
                }
                if self
                    .chosen
                    .iter()
                    .any(|p| self.chosen_set.contains(&t.sup(p).inverse().key()))
                {
                    return true;
                }
                // `t` as the third member: two earlier members whose supremum is `t*`.
                let target = t.inverse();
                let below: Vec<&OrientedSep> = prev.iter().filter(|r| r.leq(&target)).collect();
                below
                    .iter()
                    .enumerate()
                    .any(|(i, r)| below[i..].iter().any(|s| r.sup(s) == target))
            }
        }
    }

    fn push(&mut self, t: OrientedSep, p: Pick) {
        self.chosen.push(t);
        self.picks.push(p);
        self.chosen_set.insert(t.key());
        if let Some(table) = &mut self.table {
            table.push(t.a());
        }
    }

    fn pop(&mut self) {
        let t = self.chosen.pop().expect("non-empty");
        self.picks.pop();
        self.chosen_set.remove(&t.key());
        if let Some(table) = &mut self.table {
            table.pop(t.a());
        }
    }

    fn run(&mut self, u: usize) {
        if u == self.system.len() {
            self.out.push(self.picks.clone());
            return;
        }
        for p in [Pick::Forward, Pick::Backward] {
            let t = self.system.oriented(u, p);
            if !(self.admissible)(&t) {
                continue;
            }
            self.push(t, p);
            if !self.violates(&t) {
                self.run(u + 1);
            }
            self.pop();
        }
    }
}

/// All orientations of `system` satisfying `kind`, in depth-first order with
/// the canonical orientation tried first.
pub fn enumerate_tangles(
    system: &Arc<LowOrderSystem>,
    kind: TangleKind,
    cap: usize,
) -> Result<Vec<Orientation>> {
    enumerate_tangles_filtered(system, kind, cap, &|_| true)
}

/// As [`enumerate_tangles`], admitting only orientations all of whose members
/// pass `admissible`.
pub fn enumerate_tangles_filtered(
    system: &Arc<LowOrderSystem>,
    kind: TangleKind,
    cap: usize,
    admissible: &dyn Fn(&OrientedSep) -> bool,
) -> Result<Vec<Orientation>> {
    if system.len() > cap {
        return Err(Error::CapExceeded {
            what: "members of the separation system",
            size: system.len(),
            cap,
        });
    }
    let n = system.ground_len;
    let mut search = Search {
        system,
        kind,
        admissible,
        full: SubsetMask::full(n),
        chosen: Vec::new(),
        picks: Vec::new(),
        table: (kind == TangleKind::Tangle && n <= TABLE_LIMIT).then(|| CoverTable::new(n)),
        chosen_set: HashSet::new(),
        out: Vec::new(),
    };
    search.run(0);
    Ok(search
        .out
        .into_iter()
        .map(|picks| Orientation {
            system: Arc::clone(system),
            picks,
        })
        .collect())
}
