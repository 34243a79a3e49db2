//! Exhaustive certification of the shifting theorems on concrete graphs.
//!
//! Each case enumerates every hypothesis tangle (or regular profile) of the
//! required order, builds the shifted family, and checks the conclusion
//! directly. Cases without any hypothesis object are reported as vacuous.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, Side};
use crate::corpus::CorpusGraph;
use crate::error::Result;
use crate::order::{order_doubled, HalfInt};
use crate::separation::{EnumCaps, OrientedSep};
use crate::shift::{shift_unchecked, Universe};
use crate::tangle::{
    build_system, check_admissible, check_profile, check_tangle, enumerate_tangles,
    enumerate_tangles_filtered, ground_of, partition_regular, LowOrderSystem, NotTotal,
    Orientation, TangleKind, Witness,
};

/// Default k-grid, as doubled values: 1/2, 1, 3/2, 2.
pub const DEFAULT_K_GRID: [u64; 4] = [1, 2, 3, 4];

/// Member cap used for hypothesis systems during verification.
pub const VERIFY_MEMBER_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    ShiftTangle,
    DoubleShift,
    EdgesToVertices,
    VerticesToEdges,
    CorDoubleShiftEdges,
    CorDoubleShiftVertices,
    ShiftTangleWeaker,
    DoubleShiftWeaker,
    ShiftProfile,
    DoubleShiftProfile,
    EdgesToVerticesProfile,
    VerticesToEdgesProfile,
    PushforwardContainment,
    ShiftPartition,
    DoubleShiftPartition,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::ShiftTangle,
        TheoremId::DoubleShift,
        TheoremId::EdgesToVertices,
        TheoremId::VerticesToEdges,
        TheoremId::CorDoubleShiftEdges,
        TheoremId::CorDoubleShiftVertices,
        TheoremId::ShiftTangleWeaker,
        TheoremId::DoubleShiftWeaker,
        TheoremId::ShiftProfile,
        TheoremId::DoubleShiftProfile,
        TheoremId::EdgesToVerticesProfile,
        TheoremId::VerticesToEdgesProfile,
        TheoremId::PushforwardContainment,
        TheoremId::ShiftPartition,
        TheoremId::DoubleShiftPartition,
    ];

    /// The hypothesis is a tangle or profile of order `factor · k`.
    pub fn factor(self) -> u64 {
        use TheoremId::*;
        match self {
            EdgesToVertices | EdgesToVerticesProfile => 2,
            ShiftProfile | VerticesToEdgesProfile => 3,
            ShiftTangle | VerticesToEdges | ShiftPartition => 4,
            CorDoubleShiftEdges | CorDoubleShiftVertices | ShiftTangleWeaker => 8,
            DoubleShiftProfile => 9,
            DoubleShift | PushforwardContainment | DoubleShiftPartition => 16,
            DoubleShiftWeaker => 64,
        }
    }

    /// Whether the corpus must contain a case with at least one hypothesis object.
    pub fn needs_witness_instance(self) -> bool {
        self.factor() <= 4
    }

    pub fn uses_edges(self) -> bool {
        use TheoremId::*;
        matches!(
            self,
            EdgesToVertices
                | VerticesToEdges
                | CorDoubleShiftEdges
                | CorDoubleShiftVertices
                | EdgesToVerticesProfile
                | VerticesToEdgesProfile
        )
    }

    pub fn name(self) -> &'static str {
        use TheoremId::*;
        match self {
            ShiftTangle => "shift_tangle",
            DoubleShift => "double_shift",
            EdgesToVertices => "edges_to_vertices",
            VerticesToEdges => "vertices_to_edges",
            CorDoubleShiftEdges => "cor_double_shift_edges",
            CorDoubleShiftVertices => "cor_double_shift_vertices",
            ShiftTangleWeaker => "shift_tangle_weaker",
            DoubleShiftWeaker => "double_shift_weaker",
            ShiftProfile => "shift_profile",
            DoubleShiftProfile => "double_shift_profile",
            EdgesToVerticesProfile => "edges_to_vertices_profile",
            VerticesToEdgesProfile => "vertices_to_edges_profile",
            PushforwardContainment => "pushforward_containment",
            ShiftPartition => "shift_partition",
            DoubleShiftPartition => "double_shift_partition",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verified,
    Vacuous,
    /// The hypothesis order exceeds the order of the full separation, so the
    /// hypothesis system would have to orient `(V, V)`.
    OutOfRange,
    Counterexample,
}

/// A failed conclusion for one hypothesis object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// The derived family misses both orientations of a member, or has both.
    NotTotal(NotTotal),
    /// The derived orientation violates the predicate.
    Violation(Box<Witness>),
    /// A separation in the derived family that the hypothesis does not contain.
    NotContained(OrientedSep),
    /// A derived partition pointing to a side that is too small.
    Irregular(OrientedSep),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseWitness {
    /// Chosen orientations of the hypothesis object, as label lists.
    pub hypothesis: Vec<[Vec<String>; 2]>,
    pub failure: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCase {
    pub theorem: TheoremId,
    /// The vertex side the hypothesis lives on; for edge hypotheses, the side shifted to.
    pub side: Side,
    pub graph_seed: u64,
    pub k_doubled: u64,
    pub hypothesis_count: usize,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CaseWitness>,
}

/// Caches systems and hypothesis enumerations of one graph.
pub struct GraphVerifier<'g> {
    g: &'g BipartiteGraph,
    caps: EnumCaps,
    member_cap: usize,
    systems: RefCell<HashMap<(Universe, u64), Arc<LowOrderSystem>>>,
    hypotheses: RefCell<HashMap<HypothesisKey, Arc<Vec<Orientation>>>>,
}

type HypothesisKey = (Universe, u64, TangleKind);

type Check = std::result::Result<(), Failure>;

fn orientation_result(o: &Orientation, kind: TangleKind) -> Check {
    let report = match kind {
        TangleKind::Tangle => check_tangle(o),
        TangleKind::RegularProfile => check_profile(o),
    };
    match report.violation {
        None => Ok(()),
        Some(w) => Err(Failure::Violation(Box::new(w))),
    }
}

impl<'g> GraphVerifier<'g> {
    pub fn new(g: &'g BipartiteGraph, caps: EnumCaps, member_cap: usize) -> Self {
        GraphVerifier {
            g,
            caps,
            member_cap,
            systems: RefCell::new(HashMap::new()),
            hypotheses: RefCell::new(HashMap::new()),
        }
    }

    pub fn system(&self, u: Universe, k_doubled: u64) -> Result<Arc<LowOrderSystem>> {
        if let Some(s) = self.systems.borrow().get(&(u, k_doubled)) {
            return Ok(Arc::clone(s));
        }
        // Restrict a cached larger system when one exists.
        let larger = self
            .systems
            .borrow()
            .iter()
            .filter(|((v, k), _)| *v == u && *k > k_doubled)
            .min_by_key(|((_, k), _)| *k)
            .map(|(_, s)| Arc::clone(s));
        let k = HalfInt::from_doubled(k_doubled);
        let sys = Arc::new(match larger {
            Some(l) => l.restrict(k),
            None => build_system(self.g, u, k, self.caps)?,
        });
        self.systems
            .borrow_mut()
            .insert((u, k_doubled), Arc::clone(&sys));
        Ok(sys)
    }

    /// Tangles or regular profiles of `S_k(u)`; on partition universes,
    /// tangles are also required to be partition-regular.
    pub fn hypotheses(
        &self,
        u: Universe,
        k_doubled: u64,
        kind: TangleKind,
    ) -> Result<Arc<Vec<Orientation>>> {
        if let Some(h) = self.hypotheses.borrow().get(&(u, k_doubled, kind)) {
            return Ok(Arc::clone(h));
        }
        let sys = self.system(u, k_doubled)?;
        let found = Arc::new(match u {
            Universe::PartitionsX | Universe::PartitionsY => {
                let side = u.side().expect("vertex universe");
                enumerate_tangles_filtered(&sys, kind, self.member_cap, &|s| {
                    partition_regular(self.g, side, s)
                })?
            }
            _ => enumerate_tangles(&sys, kind, self.member_cap)?,
        });
        self.hypotheses
            .borrow_mut()
            .insert((u, k_doubled, kind), Arc::clone(&found));
        Ok(found)
    }

    /// Whether `S_k(u)` leaves out the full separation because of its order,
    /// rather than by convention. Partition universes have no full separation.
    pub fn in_range(&self, u: Universe, k_doubled: u64) -> bool {
        if u.side().is_some() && u.sep_mode() == crate::separation::SepMode::PartitionsOnly {
            return true;
        }
        let full = crate::separation::SubsetMask::full(u.ground_len(self.g));
        let top = OrientedSep::new(full, full).expect("full separation covers");
        k_doubled <= order_doubled(self.g, u.order_kind(), &top)
    }

    fn shift(&self, from: Universe, to: Universe, s: &OrientedSep) -> OrientedSep {
        shift_unchecked(self.g, from, to, s)
    }

    /// `{s ∈ S_k(over) : shift(s) ∈ family}` as an orientation of `S_k(over)`.
    fn pull_back<F>(&self, over: Universe, k2: u64, to: Universe, family: F) -> Result<Result<Orientation, NotTotal>>
    where
        F: Fn(&OrientedSep) -> bool,
    {
        let sys = self.system(over, k2)?;
        Ok(Orientation::from_predicate(sys, |s| family(&self.shift(over, to, s))))
    }

    /// Oriented members of `S_k(over)` whose shift lies in `family`.
    fn pull_back_set<F>(&self, over: Universe, k2: u64, to: Universe, family: F) -> Result<HashSet<OrientedSep>>
    where
        F: Fn(&OrientedSep) -> bool,
    {
        let sys = self.system(over, k2)?;
        Ok(sys
            .members()
            .iter()
            .flat_map(|m| m.sep.orientations())
            .filter(|s| family(&self.shift(over, to, s)))
            .collect())
    }

    /// `{shift(s) : s ∈ family} ∩ S_k(to)` as a set.
    fn push_forward_set<I>(&self, from: Universe, to: Universe, k2: u64, family: I) -> Result<HashSet<OrientedSep>>
    where
        I: IntoIterator<Item = OrientedSep>,
    {
        let sys = self.system(to, k2)?;
        Ok(family
            .into_iter()
            .map(|s| self.shift(from, to, &s))
            .filter(|t| sys.contains(t))
            .collect())
    }

    fn subset_of(&self, derived: impl IntoIterator<Item = OrientedSep>, tau: &Orientation) -> Check {
        for s in derived {
            if !tau.contains(&s) {
                return Err(Failure::NotContained(s));
            }
        }
        Ok(())
    }

    /// Runs one theorem for one side and one `k`.
    pub fn run(&self, theorem: TheoremId, side: Side, k2: u64, seed: u64) -> Result<TheoremCase> {
        use TheoremId::*;
        let x = Universe::side_universe(side);
        let e = Universe::Edges;
        let f = theorem.factor();
        let (hyp_universe, kind) = match theorem {
            EdgesToVertices | CorDoubleShiftEdges => (e, TangleKind::Tangle),
            EdgesToVerticesProfile => (e, TangleKind::RegularProfile),
            ShiftProfile | DoubleShiftProfile | VerticesToEdgesProfile => (x, TangleKind::RegularProfile),
            ShiftPartition | DoubleShiftPartition => {
                (Universe::partition_universe(side), TangleKind::Tangle)
            }
            _ => (x, TangleKind::Tangle),
        };
        if !self.in_range(hyp_universe, f * k2) {
            return Ok(TheoremCase {
                theorem,
                side,
                graph_seed: seed,
                k_doubled: k2,
                hypothesis_count: 0,
                outcome: Outcome::OutOfRange,
                witness: None,
            });
        }
        let hyps = self.hypotheses(hyp_universe, f * k2, kind)?;
        let mut failure = None;
        for tau in hyps.iter() {
            let res = self.conclusion(theorem, side, k2, tau)?;
            if let Err(fail) = res {
                failure = Some((tau.clone(), fail));
                break;
            }
        }
        let outcome = match (&failure, hyps.len()) {
            (Some(_), _) => Outcome::Counterexample,
            (None, 0) => Outcome::Vacuous,
            (None, _) => Outcome::Verified,
        };
        let witness = failure.map(|(tau, fail)| {
            let ground = ground_of(self.g, tau.system().universe());
            CaseWitness {
                hypothesis: tau
                    .separations()
                    .map(|s| [ground.names(s.a()), ground.names(s.b())])
                    .collect(),
                failure: format!("{fail:?}"),
            }
        });
        Ok(TheoremCase {
            theorem,
            side,
            graph_seed: seed,
            k_doubled: k2,
            hypothesis_count: hyps.len(),
            outcome,
            witness,
        })
    }

    fn conclusion(&self, theorem: TheoremId, side: Side, k2: u64, tau: &Orientation) -> Result<Check> {
        use TheoremId::*;
        let x = Universe::side_universe(side);
        let y = Universe::side_universe(side.other());
        let e = Universe::Edges;
        let in_tau = |s: &OrientedSep| tau.contains(s);
        Ok(match theorem {
            ShiftTangle | ShiftTangleWeaker => match self.pull_back(y, k2, x, in_tau)? {
                Ok(t) => orientation_result(&t, TangleKind::Tangle),
                Err(nt) => Err(Failure::NotTotal(nt)),
            },
            ShiftProfile => match self.pull_back(y, k2, x, in_tau)? {
                Ok(t) => orientation_result(&t, TangleKind::RegularProfile),
                Err(nt) => Err(Failure::NotTotal(nt)),
            },
            DoubleShift | DoubleShiftWeaker | DoubleShiftProfile | DoubleShiftPartition => {
                let (mid_factor, x, y) = match theorem {
                    DoubleShift => (4, x, y),
                    DoubleShiftWeaker => (8, x, y),
                    DoubleShiftProfile => (1, x, y),
                    _ => (
                        4,
                        Universe::partition_universe(side),
                        Universe::partition_universe(side.other()),
                    ),
                };
                let tau1 = self.pull_back_set(y, mid_factor * k2, x, in_tau)?;
                let tau2 = self.pull_back_set(x, k2, y, |s| tau1.contains(s))?;
                let mut tau2: Vec<_> = tau2.into_iter().collect();
                tau2.sort();
                self.subset_of(tau2, tau)
            }
            ShiftPartition => {
                let bx = Universe::partition_universe(side);
                let by = Universe::partition_universe(side.other());
                let target = side.other();
                match self.pull_back(by, k2, bx, in_tau)? {
                    Ok(t) => orientation_result(&t, TangleKind::Tangle).and_then(|()| {
                        match check_admissible(&t, &|s| partition_regular(self.g, target, s)) {
                            Some(s) => Err(Failure::Irregular(s)),
                            None => Ok(()),
                        }
                    }),
                    Err(nt) => Err(Failure::NotTotal(nt)),
                }
            }
            EdgesToVertices | EdgesToVerticesProfile => {
                let kind = if theorem == EdgesToVertices {
                    TangleKind::Tangle
                } else {
                    TangleKind::RegularProfile
                };
                let image = self.push_forward_set(e, x, k2, tau.separations())?;
                match Orientation::from_predicate(self.system(x, k2)?, |s| image.contains(s)) {
                    Ok(t) => orientation_result(&t, kind),
                    Err(nt) => Err(Failure::NotTotal(nt)),
                }
            }
            VerticesToEdges | VerticesToEdgesProfile => {
                let kind = if theorem == VerticesToEdges {
                    TangleKind::Tangle
                } else {
                    TangleKind::RegularProfile
                };
                match self.pull_back(e, k2, x, in_tau)? {
                    Ok(t) => orientation_result(&t, kind),
                    Err(nt) => Err(Failure::NotTotal(nt)),
                }
            }
            CorDoubleShiftEdges => {
                // τ over E of order 8k; (τ_X ∩ S_4k(X))_E ∩ S_k(E) ⊆ τ.
                let tau_x = self.push_forward_set(e, x, 4 * k2, tau.separations())?;
                let mut back: Vec<_> = self
                    .pull_back_set(e, k2, x, |s| tau_x.contains(s))?
                    .into_iter()
                    .collect();
                back.sort();
                self.subset_of(back, tau)
            }
            CorDoubleShiftVertices => {
                // τ over X of order 8k; (τ_E ∩ S_2k(E))_X ∩ S_k(X) ⊆ τ.
                let tau_e = self.pull_back_set(e, 2 * k2, x, in_tau)?;
                let mut back: Vec<_> = self
                    .push_forward_set(e, x, k2, tau_e)?
                    .into_iter()
                    .collect();
                back.sort();
                self.subset_of(back, tau)
            }
            PushforwardContainment => {
                let n = tau.system().prefix_len(HalfInt::from_doubled(k2));
                let mut out = Ok(());
                for s in tau.separations().take(n) {
                    let t = self.shift(x, y, &s);
                    if !in_tau(&self.shift(y, x, &t)) {
                        out = Err(Failure::NotContained(t));
                        break;
                    }
                }
                out
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seeds: Vec<u64>,
    pub k_grid_doubled: Vec<u64>,
    pub theorems: Vec<TheoremId>,
    pub caps: EnumCaps,
    pub member_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seeds: (0..crate::corpus::CORPUS_SIZE).collect(),
            k_grid_doubled: DEFAULT_K_GRID.to_vec(),
            theorems: TheoremId::ALL.to_vec(),
            caps: EnumCaps::default(),
            member_cap: VERIFY_MEMBER_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub theorem: TheoremId,
    pub cases: usize,
    pub verified: usize,
    pub vacuous: usize,
    pub out_of_range: usize,
    pub counterexamples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub cases: Vec<TheoremCase>,
    pub summary: Vec<TheoremSummary>,
}

impl VerifyReport {
    pub fn counterexamples(&self) -> usize {
        self.summary.iter().map(|s| s.counterexamples).sum()
    }

    /// Theorems that need a non-vacuous instance but have none.
    pub fn missing_instances(&self) -> Vec<TheoremId> {
        self.summary
            .iter()
            .filter(|s| s.theorem.needs_witness_instance() && s.verified + s.counterexamples == 0)
            .map(|s| s.theorem)
            .collect()
    }
}

/// All cases of one graph, in (theorem, k, side) order.
pub fn verify_graph(c: &CorpusGraph, config: &VerifyConfig) -> Result<Vec<TheoremCase>> {
    let v = GraphVerifier::new(&c.graph, config.caps, config.member_cap);
    let mut out = Vec::new();
    for &theorem in &config.theorems {
        for &k2 in &config.k_grid_doubled {
            for side in [Side::X, Side::Y] {
                out.push(v.run(theorem, side, k2, c.seed)?);
            }
        }
    }
    Ok(out)
}

/// Runs every configured case over the corpus graphs, in parallel per graph.
pub fn verify_corpus(graphs: &[CorpusGraph], config: &VerifyConfig) -> Result<VerifyReport> {
    let per_graph: Vec<Vec<TheoremCase>> = graphs
        .par_iter()
        .map(|c| verify_graph(c, config))
        .collect::<Result<_>>()?;
    let cases: Vec<TheoremCase> = per_graph.into_iter().flatten().collect();
    let summary = config
        .theorems
        .iter()
        .map(|&t| {
            let mine = cases.iter().filter(|c| c.theorem == t);
            let count = |o: Outcome| mine.clone().filter(|c| c.outcome == o).count();
            TheoremSummary {
                theorem: t,
                cases: mine.clone().count(),
                verified: count(Outcome::Verified),
                vacuous: count(Outcome::Vacuous),
                out_of_range: count(Outcome::OutOfRange),
                counterexamples: count(Outcome::Counterexample),
            }
        })
        .collect();
    Ok(VerifyReport { cases, summary })
}
