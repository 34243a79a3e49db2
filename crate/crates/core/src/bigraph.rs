//! The bipartite graph witnessing the duality between separations of `X` and
//! separations of `Y`.

use std::collections::BTreeMap;
use std::io::Read;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::separation::{GroundSet, SubsetMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::X => "X",
            Side::Y => "Y",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub fn x(index: usize) -> Self {
        Vertex { side: Side::X, index }
    }

    pub fn y(index: usize) -> Self {
        Vertex { side: Side::Y, index }
    }
}

/// One line of a transaction log: `member` took part in `group`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceRecord {
    #[serde(rename = "group")]
    pub group_id: String,
    #[serde(rename = "member")]
    pub member_id: String,
}

/// Stable JSON form of a graph: labels of both sides and edges as index pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDump {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    x: GroundSet,
    y: GroundSet,
    edges: GroundSet,
    ends: Vec<(usize, usize)>,
    /// `N(x)` as a mask over `Y`, per `x`.
    nbr_x: Vec<SubsetMask>,
    /// `N(y)` as a mask over `X`, per `y`.
    nbr_y: Vec<SubsetMask>,
    /// `E(x)` as a mask over the edges, per `x`.
    inc_x: Vec<SubsetMask>,
    inc_y: Vec<SubsetMask>,
}

impl BipartiteGraph {
    /// Builds a graph from two labelled sides and `(x, y)` index pairs.
    /// Repeated pairs are merged; edge order is first appearance.
    pub fn new(x: GroundSet, y: GroundSet, pairs: &[(usize, usize)]) -> Result<Self> {
        for l in x.labels() {
            if y.position(l).is_some() {
                return Err(Error::LabelClash(l.clone()));
            }
        }
        let mut ends: Vec<(usize, usize)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for &(i, j) in pairs {
            if i >= x.len() || j >= y.len() {
                return Err(Error::SideMismatch("edge endpoint outside its side"));
            }
            if seen.insert((i, j)) {
                ends.push((i, j));
            }
        }
        if ends.len() > crate::separation::MAX_GROUND {
            return Err(Error::TooLarge(ends.len()));
        }
        let mut edges = GroundSet::new(Vec::<String>::new())?;
        for (n, &(i, j)) in ends.iter().enumerate() {
            let label = format!("{}~{}", x.label(i), y.label(j));
            if edges.position(&label).is_some() {
                edges.push(format!("{label}#{n}"))?;
            } else {
                edges.push(label)?;
            }
        }
        let (nx, ny, ne) = (x.len(), y.len(), ends.len());
        let mut nbr_x = vec![SubsetMask::empty(ny); nx];
        let mut nbr_y = vec![SubsetMask::empty(nx); ny];
        let mut inc_x = vec![SubsetMask::empty(ne); nx];
        let mut inc_y = vec![SubsetMask::empty(ne); ny];
        for (e, &(i, j)) in ends.iter().enumerate() {
            nbr_x[i] = nbr_x[i].with(j);
            nbr_y[j] = nbr_y[j].with(i);
            inc_x[i] = inc_x[i].with(e);
            inc_y[j] = inc_y[j].with(e);
        }
        Ok(BipartiteGraph {
            x,
            y,
            edges,
            ends,
            nbr_x,
            nbr_y,
            inc_x,
            inc_y,
        })
    }

    /// Vertices are created in order of first appearance on their side.
    pub fn from_edges<A, B>(pairs: &[(A, B)]) -> Result<Self>
    where
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut x = GroundSet::new(Vec::<String>::new())?;
        let mut y = GroundSet::new(Vec::<String>::new())?;
        let mut idx = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            if y.position(a).is_some() {
                return Err(Error::LabelClash(a.to_string()));
            }
            if x.position(b).is_some() {
                return Err(Error::LabelClash(b.to_string()));
            }
            let i = match x.position(a) {
                Some(i) => i,
                None => x.push(a.to_string())?,
            };
            if a == b {
                return Err(Error::LabelClash(a.to_string()));
            }
            let j = match y.position(b) {
                Some(j) => j,
                None => y.push(b.to_string())?,
            };
            idx.push((i, j));
        }
        Self::new(x, y, &idx)
    }

    /// Members become `X`, groups become `Y`, one edge per distinct incidence.
    pub fn from_transactions<I>(records: I) -> Result<Self>
    where
        I: IntoIterator<Item = IncidenceRecord>,
    {
        let pairs: Vec<(String, String)> = records
            .into_iter()
            .map(|r| (r.member_id, r.group_id))
            .collect();
        Self::from_edges(&pairs)
    }

    pub fn from_dump(dump: &GraphDump) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = dump.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(
            GroundSet::new(dump.x.iter().cloned())?,
            GroundSet::new(dump.y.iter().cloned())?,
            &pairs,
        )
    }

    pub fn to_dump(&self) -> GraphDump {
        GraphDump {
            x: self.x.labels().to_vec(),
            y: self.y.labels().to_vec(),
            edges: self.ends.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }

    /// Transaction CSV with header `group,member`; isolated vertices are lost.
    pub fn to_transactions_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["group", "member"]).expect("in-memory write");
        for &(i, j) in &self.ends {
            w.write_record([self.y.label(j), self.x.label(i)])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 labels")
    }

    pub fn side(&self, side: Side) -> &GroundSet {
        match side {
            Side::X => &self.x,
            Side::Y => &self.y,
        }
    }

    pub fn x(&self) -> &GroundSet {
        &self.x
    }

    pub fn y(&self) -> &GroundSet {
        &self.y
    }

    pub fn edges(&self) -> &GroundSet {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    /// `(x, y)` endpoints of edge `e`.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn endpoint(&self, e: usize, side: Side) -> usize {
        match side {
            Side::X => self.ends[e].0,
            Side::Y => self.ends[e].1,
        }
    }

    /// `N(v)` as a mask over the opposite side.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> SubsetMask {
        match v.side {
            Side::X => self.nbr_x[v.index],
            Side::Y => self.nbr_y[v.index],
        }
    }

    /// `E(v)` as a mask over the edges.
    #[inline]
    pub fn incident(&self, v: Vertex) -> SubsetMask {
        match v.side {
            Side::X => self.inc_x[v.index],
            Side::Y => self.inc_y[v.index],
        }
    }

    pub(crate) fn neighbor_masks(&self, side: Side) -> &[SubsetMask] {
        match side {
            Side::X => &self.nbr_x,
            Side::Y => &self.nbr_y,
        }
    }

    pub(crate) fn incidence_masks(&self, side: Side) -> &[SubsetMask] {
        match side {
            Side::X => &self.inc_x,
            Side::Y => &self.inc_y,
        }
    }

    pub fn degree(&self, v: Vertex) -> u32 {
        self.neighbors(v).count()
    }

    /// `|N(v) ∩ m|` for `m` over the opposite side.
    pub fn neighbor_count(&self, v: Vertex, m: SubsetMask) -> Result<u32> {
        let nbrs = self.neighbors(v);
        if m.ground_len() != self.side(v.side.other()).len() {
            return Err(Error::SideMismatch("mask is not over the opposite side"));
        }
        Ok((nbrs & m).count())
    }

    /// `|E(v) ∩ m|` for `m` over the edges.
    pub fn incident_count(&self, v: Vertex, m: SubsetMask) -> Result<u32> {
        if m.ground_len() != self.edge_count() {
            return Err(Error::SideMismatch("mask is not over the edges"));
        }
        Ok((self.incident(v) & m).count())
    }

    /// `E(A)`: edges with an endpoint in `a ⊆ side`.
    pub fn edges_at(&self, side: Side, a: SubsetMask) -> SubsetMask {
        let masks = self.incidence_masks(side);
        a.iter()
            .fold(SubsetMask::empty(self.edge_count()), |acc, i| acc | masks[i])
    }

    /// Vertices on either side whose neighbourhoods coincide or are complementary.
    pub fn check_duality_wellformedness(&self) -> WellformednessReport {
        let mut report = WellformednessReport::default();
        for side in [Side::X, Side::Y] {
            let masks = self.neighbor_masks(side);
            let ground = self.side(side);
            let mut classes: BTreeMap<u128, Vec<usize>> = BTreeMap::new();
            for (i, m) in masks.iter().enumerate() {
                classes.entry(m.bits()).or_default().push(i);
            }
            let mut identical: Vec<Vec<usize>> =
                classes.into_values().filter(|c| c.len() > 1).collect();
            identical.sort();
            for class in identical {
                report.identical.push(DuplicateClass {
                    side,
                    members: class.iter().map(|&i| ground.label(i).to_string()).collect(),
                });
            }
            for i in 0..masks.len() {
                for j in i + 1..masks.len() {
                    if masks[i] == masks[j].complement() {
                        report.complementary.push(ComplementaryPair {
                            side,
                            first: ground.label(i).to_string(),
                            second: ground.label(j).to_string(),
                        });
                    }
                }
            }
        }
        report
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellformednessReport {
    pub identical: Vec<DuplicateClass>,
    pub complementary: Vec<ComplementaryPair>,
}

impl WellformednessReport {
    pub fn is_clean(&self) -> bool {
        self.identical.is_empty() && self.complementary.is_empty()
    }
}

/// Vertices of one side sharing a neighbourhood.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicateClass {
    pub side: Side,
    pub members: Vec<String>,
}

/// Two vertices of one side whose neighbourhoods partition the other side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementaryPair {
    pub side: Side,
    pub first: String,
    pub second: String,
}

/// Reads a `group,member` CSV. An empty input is an empty log.
pub fn read_transactions<R: Read>(reader: R) -> Result<Vec<IncidenceRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    let mut header_seen = false;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line()).unwrap_or(0),
            message: e.to_string(),
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if !header_seen {
            if rec.len() != 2 || &rec[0] != "group" || &rec[1] != "member" {
                return Err(Error::Parse {
                    line,
                    message: "expected header `group,member`".into(),
                });
            }
            header_seen = true;
            continue;
        }
        if rec.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields, found {}", rec.len()),
            });
        }
        if rec[0].is_empty() || rec[1].is_empty() {
            return Err(Error::Parse {
                line,
                message: "empty label".into(),
            });
        }
        out.push(IncidenceRecord {
            group_id: rec[0].to_string(),
            member_id: rec[1].to_string(),
        });
    }
    Ok(out)
}

fn labelled(prefix: &str, n: usize) -> GroundSet {
    GroundSet::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("distinct generated labels")
}

/// `K_{nx,ny}` with sides `x1..`, `y1..`.
pub fn complete_bipartite(nx: usize, ny: usize) -> BipartiteGraph {
    gen_random(nx, ny, 1.0, 0)
}

/// The perfect matching `x_i y_i`, `i = 1..n`.
pub fn matching(n: usize) -> BipartiteGraph {
    let pairs: Vec<_> = (0..n).map(|i| (i, i)).collect();
    BipartiteGraph::new(labelled("x", n), labelled("y", n), &pairs).expect("valid matching")
}

/// Each of the `nx·ny` possible edges independently with probability `edge_prob`.
pub fn gen_random(nx: usize, ny: usize, edge_prob: f64, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            if rng.random::<f64>() < edge_prob {
                pairs.push((i, j));
            }
        }
    }
    BipartiteGraph::new(labelled("x", nx), labelled("y", ny), &pairs).expect("valid random graph")
}

/// Planted blocks: block `i` owns `nx_i` consecutive `x`s and `ny_i` consecutive
/// `y`s; pairs inside a block are joined with `in_prob`, across blocks with
/// `cross_prob`.
pub fn gen_planted(
    blocks: &[(usize, usize)],
    in_prob: f64,
    cross_prob: f64,
    seed: u64,
) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bx: Vec<usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(b, &(n, _))| std::iter::repeat_n(b, n))
        .collect();
    let by: Vec<usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(b, &(_, n))| std::iter::repeat_n(b, n))
        .collect();
    let mut pairs = Vec::new();
    for (i, &block_i) in bx.iter().enumerate() {
        for (j, &block_j) in by.iter().enumerate() {
            let p = if block_i == block_j { in_prob } else { cross_prob };
            if rng.random::<f64>() < p {
                pairs.push((i, j));
            }
        }
    }
    BipartiteGraph::new(labelled("x", bx.len()), labelled("y", by.len()), &pairs)
        .expect("valid planted graph")
}

/// Degree multiset per side, used to compare graphs up to relabelling.
pub fn degree_profile(g: &BipartiteGraph) -> (Vec<u32>, Vec<u32>) {
    let mut dx: Vec<u32> = (0..g.x().len()).map(|i| g.degree(Vertex::x(i))).collect();
    let mut dy: Vec<u32> = (0..g.y().len()).map(|i| g.degree(Vertex::y(i))).collect();
    dx.sort_unstable();
    dy.sort_unstable();
    (dx, dy)
}

/// Edge set as label pairs, for comparisons independent of vertex order.
pub fn labelled_edges(g: &BipartiteGraph) -> std::collections::BTreeSet<(String, String)> {
    (0..g.edge_count())
        .map(|e| {
            let (i, j) = g.ends(e);
            (g.x().label(i).to_string(), g.y().label(j).to_string())
        })
        .collect()
}
