//! Reference implementations used as oracles. They work on plain `Vec<bool>`
//! sets built from the edge list and share no code with the library beyond
//! reading the graph and the separations.
#![allow(dead_code)]

use dualsep::bigraph::BipartiteGraph;
use dualsep::tangle::{LowOrderSystem, Pick};
use dualsep::{OrientedSep, Side, SubsetMask};
use rand::Rng;

pub type Set = Vec<bool>;

pub fn to_set(m: SubsetMask) -> Set {
    (0..m.ground_len()).map(|i| m.contains(i)).collect()
}

pub fn sides(s: &OrientedSep) -> (Set, Set) {
    (to_set(s.a()), to_set(s.b()))
}

pub fn from_sets(a: &[bool], b: &[bool]) -> OrientedSep {
    let n = a.len();
    let idx = |v: &[bool]| SubsetMask::from_indices((0..n).filter(|&i| v[i]), n);
    OrientedSep::new(idx(a), idx(b)).expect("cover")
}

fn side_len(g: &BipartiteGraph, side: Side) -> usize {
    match side {
        Side::X => g.x().len(),
        Side::Y => g.y().len(),
    }
}

/// Neighbour lists of every vertex on `side`, from the raw edge list.
pub fn neighbours(g: &BipartiteGraph, side: Side) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); side_len(g, side)];
    for e in 0..g.edge_count() {
        let (x, y) = g.ends(e);
        match side {
            Side::X => out[x].push(y),
            Side::Y => out[y].push(x),
        }
    }
    out
}

/// Incident edge lists of every vertex on `side`.
pub fn incidences(g: &BipartiteGraph, side: Side) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); side_len(g, side)];
    for e in 0..g.edge_count() {
        let (x, y) = g.ends(e);
        out[if side == Side::X { x } else { y }].push(e);
    }
    out
}

fn count(list: &[usize], set: &[bool]) -> i64 {
    list.iter().filter(|&&i| set[i]).count() as i64
}

fn doubled_term(list: &[usize], a: &[bool], b: &[bool]) -> i64 {
    let mid: Vec<bool> = a.iter().zip(b).map(|(p, q)| *p && *q).collect();
    2 * count(list, a).min(count(list, b)) - count(list, &mid)
}

/// Twice `|A,B|` for a separation of `side`, summed over the other side.
pub fn side_order2(g: &BipartiteGraph, side: Side, a: &[bool], b: &[bool]) -> i64 {
    neighbours(g, side.other()).iter().map(|n| doubled_term(n, a, b)).sum()
}

/// Twice `|C,D|_E`, summed over every vertex.
pub fn edge_order2(g: &BipartiteGraph, c: &[bool], d: &[bool]) -> i64 {
    [Side::X, Side::Y]
        .iter()
        .flat_map(|&s| incidences(g, s))
        .map(|inc| doubled_term(&inc, c, d))
        .sum()
}

/// Twice the edge-form expression read literally, with `|E(T, other side)|/2`
/// as the tie term.
pub fn literal_edge_form2(g: &BipartiteGraph, side: Side, a: &[bool], b: &[bool]) -> i64 {
    let mut total = 0;
    for n in neighbours(g, side.other()) {
        let (ca, cb) = (count(&n, a), count(&n, b));
        let mid: Vec<bool> = a.iter().zip(b).map(|(p, q)| *p && *q).collect();
        if ca >= cb {
            total += 2 * cb;
        }
        if ca <= cb {
            total += 2 * ca;
        }
        if ca == cb {
            total -= n.len() as i64;
        }
        total -= count(&n, &mid);
    }
    total
}

/// Majority shift onto the vertices whose lists are given.
pub fn majority(lists: &[Vec<usize>], a: &[bool], b: &[bool]) -> (Set, Set) {
    lists
        .iter()
        .map(|l| {
            let (ca, cb) = (count(l, a), count(l, b));
            (ca >= cb, ca <= cb)
        })
        .unzip()
}

pub fn shift_side(g: &BipartiteGraph, from: Side, a: &[bool], b: &[bool]) -> (Set, Set) {
    majority(&neighbours(g, from.other()), a, b)
}

pub fn edges_to_side(g: &BipartiteGraph, c: &[bool], d: &[bool], target: Side) -> (Set, Set) {
    majority(&incidences(g, target), c, d)
}

pub fn sep_to_edges(g: &BipartiteGraph, from: Side, a: &[bool], b: &[bool]) -> (Set, Set) {
    (0..g.edge_count())
        .map(|e| {
            let (x, y) = g.ends(e);
            let v = if from == Side::X { x } else { y };
            (a[v], b[v])
        })
        .unzip()
}

/// All `3^n` separations of an `n`-set.
pub fn all_seps(n: usize) -> Vec<(Set, Set)> {
    let mut out = Vec::new();
    let mut digits = vec![0u8; n];
    loop {
        out.push((
            digits.iter().map(|&d| d != 1).collect(),
            digits.iter().map(|&d| d != 0).collect(),
        ));
        let Some(i) = digits.iter().position(|&d| d < 2) else {
            return out;
        };
        digits[i] += 1;
        digits[..i].iter_mut().for_each(|d| *d = 0);
    }
}

pub fn random_sep<R: Rng>(rng: &mut R, n: usize) -> OrientedSep {
    let digits: Vec<u8> = (0..n).map(|_| rng.random_range(0..3)).collect();
    let a: Set = digits.iter().map(|&d| d != 1).collect();
    let b: Set = digits.iter().map(|&d| d != 0).collect();
    from_sets(&a, &b)
}

fn union3(a: &[bool], b: &[bool], c: &[bool]) -> bool {
    (0..a.len()).all(|i| a[i] || b[i] || c[i])
}

fn leq(r: &(Set, Set), s: &(Set, Set)) -> bool {
    (0..r.0.len()).all(|i| (!r.0[i] || s.0[i]) && (!s.1[i] || r.1[i]))
}

/// (†): no three chosen members, repetition allowed, whose first sides cover.
pub fn is_tangle(chosen: &[(Set, Set)]) -> bool {
    let n = chosen.len();
    !(0..n).any(|i| {
        (i..n).any(|j| (j..n).any(|l| union3(&chosen[i].0, &chosen[j].0, &chosen[l].0)))
    })
}

/// Both profile clauses plus regularity.
pub fn is_regular_profile(chosen: &[(Set, Set)]) -> bool {
    let inv = |s: &(Set, Set)| (s.1.clone(), s.0.clone());
    let n = chosen.len();
    for i in 0..n {
        if chosen[i].0.iter().all(|&v| v) {
            return false;
        }
        for j in 0..n {
            if i != j && leq(&inv(&chosen[i]), &chosen[j]) {
                return false;
            }
            let (r, s) = (&chosen[i], &chosen[j]);
            let w: (Set, Set) = (
                r.1.iter().zip(&s.1).map(|(p, q)| *p && *q).collect(),
                r.0.iter().zip(&s.0).map(|(p, q)| *p || *q).collect(),
            );
            if chosen.contains(&w) {
                return false;
            }
        }
    }
    true
}

/// Every orientation of `sys` passing `pred`, as pick vectors, by trying all
/// `2^n` choices.
pub fn naive_tangles(sys: &LowOrderSystem, pred: fn(&[(Set, Set)]) -> bool) -> Vec<Vec<Pick>> {
    let n = sys.len();
    assert!(n <= 20, "naive oracle is exponential");
    (0u32..1 << n)
        .filter_map(|bits| {
            let picks: Vec<Pick> = (0..n)
                .map(|i| if bits >> i & 1 == 0 { Pick::Forward } else { Pick::Backward })
                .collect();
            let chosen: Vec<(Set, Set)> = picks
                .iter()
                .enumerate()
                .map(|(i, &p)| sides(&sys.oriented(i, p)))
                .collect();
            pred(&chosen).then_some(picks)
        })
        .collect()
}

/// Rank over the rationals, by fraction-free elimination on `i128`.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let (a, f) = (m[r][c], m[i][c]);
            if f == 0 {
                continue;
            }
            let pivot = m[r].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot) {
                *x = *x * a - p * f;
            }
            let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
