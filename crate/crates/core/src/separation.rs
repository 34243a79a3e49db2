//! Ground sets, subset masks and (oriented) separations.
//!
//! A separation of a ground set `V` is a pair `(A, B)` of subsets with
//! `A ∪ B = V`. The elements of `A ∩ B` form its middle; a separation with
//! empty middle is a partition. Oriented separations are ordered by
//! `(A, B) ≤ (C, D)` iff `A ⊆ C` and `B ⊇ D`, which the involution
//! `(A, B) ↦ (B, A)` reverses. The set of all separations of `V` is a lattice
//! under this order.

use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set a [`SubsetMask`] can index.
pub const MAX_GROUND: usize = 128;

/// A finite set of labelled elements, indexed `0..n` in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = GroundSet {
            labels: Vec::new(),
            index: HashMap::new(),
        };
        for label in labels {
            out.push(label.into())?;
        }
        Ok(out)
    }

    /// Appends a label and returns its position.
    pub(crate) fn push(&mut self, label: String) -> Result<usize> {
        if self.index.contains_key(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        if self.labels.len() == MAX_GROUND {
            return Err(Error::TooLarge(self.labels.len() + 1));
        }
        let pos = self.labels.len();
        self.index.insert(label.clone(), pos);
        self.labels.push(label);
        Ok(pos)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn empty_mask(&self) -> SubsetMask {
        SubsetMask::empty(self.len())
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    /// Builds the mask of the named elements.
    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask> {
        let mut m = self.empty_mask();
        for l in labels {
            let l = l.as_ref();
            let i = self
                .position(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            m = m.with(i);
        }
        Ok(m)
    }

    /// Labels of the elements in `m`, in ground-set order.
    pub fn names(&self, m: SubsetMask) -> Vec<String> {
        m.iter().map(|i| self.labels[i].clone()).collect()
    }
}

/// Membership indicator over a ground set of `len` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask {
    bits: u128,
    len: u8,
}

#[inline]
fn full_bits(len: usize) -> u128 {
    if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

impl SubsetMask {
    pub fn new(bits: u128, len: usize) -> Result<Self> {
        if len > MAX_GROUND {
            return Err(Error::TooLarge(len));
        }
        if bits & !full_bits(len) != 0 {
            return Err(Error::SideMismatch("mask has bits outside its ground set"));
        }
        Ok(SubsetMask {
            bits,
            len: len as u8,
        })
    }

    #[inline]
    pub(crate) fn from_bits(bits: u128, len: usize) -> Self {
        debug_assert!(bits & !full_bits(len) == 0);
        SubsetMask {
            bits,
            len: len as u8,
        }
    }

    pub fn empty(len: usize) -> Self {
        Self::from_bits(0, len)
    }

    pub fn full(len: usize) -> Self {
        Self::from_bits(full_bits(len), len)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I, len: usize) -> Self {
        let mut m = Self::empty(len);
        for i in indices {
            m = m.with(i);
        }
        m
    }

    #[inline]
    pub fn bits(self) -> u128 {
        self.bits
    }

    /// Size of the ground set this mask lives on.
    #[inline]
    pub fn ground_len(self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn count(self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.bits == full_bits(self.len as usize)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 128 && self.bits >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        assert!(i < self.len as usize, "index {i} outside ground set");
        SubsetMask {
            bits: self.bits | 1 << i,
            len: self.len,
        }
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        SubsetMask {
            bits: self.bits & !(1u128 << i),
            len: self.len,
        }
    }

    #[inline]
    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn complement(self) -> Self {
        SubsetMask {
            bits: !self.bits & full_bits(self.len as usize),
            len: self.len,
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        SubsetMask {
            bits: self.bits | rhs.bits,
            len: self.len,
        }
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        SubsetMask {
            bits: self.bits & rhs.bits,
            len: self.len,
        }
    }
}

impl Sub for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        SubsetMask {
            bits: self.bits & !rhs.bits,
            len: self.len,
        }
    }
}

impl Not for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn not(self) -> Self {
        self.complement()
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.len)
    }
}

/// An ordered pair `(A, B)` of subsets covering the ground set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedSep {
    a: SubsetMask,
    b: SubsetMask,
}

impl OrientedSep {
    pub fn new(a: SubsetMask, b: SubsetMask) -> Result<Self> {
        if a.len != b.len {
            return Err(Error::SideMismatch("sides live on different ground sets"));
        }
        let uncovered = (a | b).complement();
        if !uncovered.is_empty() {
            return Err(Error::CoverViolation {
                missing: uncovered.count(),
            });
        }
        Ok(OrientedSep { a, b })
    }

    /// Caller guarantees `a ∪ b` is the whole ground set.
    #[inline]
    pub(crate) fn from_sides(a: SubsetMask, b: SubsetMask) -> Self {
        debug_assert!((a | b).is_full(), "cover violated: {a:?} {b:?}");
        OrientedSep { a, b }
    }

    /// The partition `(A, V∖A)`.
    pub fn partition(a: SubsetMask) -> Self {
        OrientedSep {
            a,
            b: a.complement(),
        }
    }

    #[inline]
    pub fn a(&self) -> SubsetMask {
        self.a
    }

    #[inline]
    pub fn b(&self) -> SubsetMask {
        self.b
    }

    #[inline]
    pub fn ground_len(&self) -> usize {
        self.a.ground_len()
    }

    #[inline]
    pub fn middle(&self) -> SubsetMask {
        self.a & self.b
    }

    #[inline]
    pub fn is_partition(&self) -> bool {
        self.middle().is_empty()
    }

    #[inline]
    pub fn inverse(&self) -> Self {
        OrientedSep {
            a: self.b,
            b: self.a,
        }
    }

    /// `(A, B) ≤ (C, D)` iff `A ⊆ C` and `B ⊇ D`.
    #[inline]
    pub fn leq(&self, other: &OrientedSep) -> bool {
        self.a.is_subset(other.a) && other.b.is_subset(self.b)
    }

    #[inline]
    pub fn sup(&self, other: &OrientedSep) -> Self {
        OrientedSep {
            a: self.a | other.a,
            b: self.b & other.b,
        }
    }

    #[inline]
    pub fn inf(&self, other: &OrientedSep) -> Self {
        OrientedSep {
            a: self.a & other.a,
            b: self.b | other.b,
        }
    }

    /// First side is the whole ground set.
    #[inline]
    pub fn is_cosmall(&self) -> bool {
        self.a.is_full()
    }

    pub fn canonical(&self) -> UnorientedSep {
        UnorientedSep::from(*self)
    }

    #[inline]
    pub(crate) fn key(&self) -> (u128, u128) {
        (self.a.bits, self.b.bits)
    }
}

impl fmt::Debug for OrientedSep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.a, self.b)
    }
}

/// Checked constructor, see [`OrientedSep::new`].
pub fn make_sep(a: SubsetMask, b: SubsetMask) -> Result<OrientedSep> {
    OrientedSep::new(a, b)
}

/// `{A, B}` stored through its lexicographically smaller orientation, comparing
/// `(A, B)` as a pair of integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UnorientedSep {
    canonical: OrientedSep,
}

impl From<OrientedSep> for UnorientedSep {
    fn from(s: OrientedSep) -> Self {
        let inv = s.inverse();
        let canonical = if s.key() <= inv.key() { s } else { inv };
        UnorientedSep { canonical }
    }
}

impl UnorientedSep {
    pub fn canonical(&self) -> OrientedSep {
        self.canonical
    }

    /// The canonical orientation followed by its inverse.
    pub fn orientations(&self) -> [OrientedSep; 2] {
        [self.canonical, self.canonical.inverse()]
    }
}

/// Which separations [`enumerate_seps`] produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SepMode {
    AllSeparations,
    PartitionsOnly,
}

/// Ground-set size limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumCaps {
    pub all_separations: usize,
    pub partitions_only: usize,
    /// Largest edge set whose separations are enumerated.
    pub edges: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            all_separations: 12,
            partitions_only: 20,
            edges: 10,
        }
    }
}

/// Yields every oriented separation of an `n`-element ground set exactly once.
///
/// In `AllSeparations` mode the `i`-th item encodes element `j` by the `j`-th
/// base-3 digit of `i` (0: `A∖B`, 1: `B∖A`, 2: middle); in `PartitionsOnly`
/// mode `i` is the bitmask of `B`.
pub fn enumerate_seps(n: usize, mode: SepMode, caps: EnumCaps) -> Result<SepIter> {
    let (cap, total) = match mode {
        SepMode::AllSeparations => (caps.all_separations, 3u64.checked_pow(n as u32)),
        SepMode::PartitionsOnly => (caps.partitions_only, 2u64.checked_pow(n as u32)),
    };
    if n > cap || n > MAX_GROUND {
        return Err(Error::CapExceeded {
            what: "ground set for enumeration",
            size: n,
            cap,
        });
    }
    let total = total.ok_or(Error::TooLarge(n))?;
    Ok(SepIter {
        n,
        mode,
        next: 0,
        total,
    })
}

#[derive(Debug, Clone)]
pub struct SepIter {
    n: usize,
    mode: SepMode,
    next: u64,
    total: u64,
}

impl Iterator for SepIter {
    type Item = OrientedSep;

    fn next(&mut self) -> Option<OrientedSep> {
        if self.next >= self.total {
            return None;
        }
        let i = self.next;
        self.next += 1;
        let full = SubsetMask::full(self.n);
        Some(match self.mode {
            SepMode::PartitionsOnly => {
                let b = SubsetMask::from_bits(i as u128, self.n);
                OrientedSep::from_sides(full - b, b)
            }
            SepMode::AllSeparations => {
                let (mut a, mut b) = (0u128, 0u128);
                let mut rest = i;
                for j in 0..self.n {
                    match rest % 3 {
                        0 => a |= 1 << j,
                        1 => b |= 1 << j,
                        _ => {
                            a |= 1 << j;
                            b |= 1 << j;
                        }
                    }
                    rest /= 3;
                }
                OrientedSep::from_sides(
                    SubsetMask::from_bits(a, self.n),
                    SubsetMask::from_bits(b, self.n),
                )
            }
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SepIter {}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(idx: &[usize], n: usize) -> SubsetMask {
        SubsetMask::from_indices(idx.iter().copied(), n)
    }

    fn sep(a: &[usize], b: &[usize], n: usize) -> OrientedSep {
        OrientedSep::new(m(a, n), m(b, n)).unwrap()
    }

    #[test]
    fn make_sep_examples() {
        let s = make_sep(m(&[0], 2), m(&[1], 2)).unwrap();
        assert!(s.is_partition());
        let s = make_sep(m(&[], 2), m(&[0, 1], 2)).unwrap();
        assert!(s.is_partition());
        assert_eq!(
            make_sep(m(&[0], 2), m(&[0], 2)),
            Err(Error::CoverViolation { missing: 1 })
        );
        assert!(matches!(
            make_sep(m(&[0], 2), m(&[1, 2], 3)),
            Err(Error::SideMismatch(_))
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(sep(&[], &[0, 1, 2], 3).inverse(), sep(&[0, 1, 2], &[], 3));
        assert_eq!(sep(&[0], &[1], 2).inverse(), sep(&[1], &[0], 2));
        let s = sep(&[0, 1], &[1, 2], 3);
        assert_eq!(s.inverse(), sep(&[1, 2], &[0, 1], 3));
        assert_eq!(s.inverse().inverse(), s);
    }

    #[test]
    fn leq_examples() {
        let bottom = sep(&[], &[0, 1, 2], 3);
        for s in enumerate_seps(3, SepMode::AllSeparations, EnumCaps::default()).unwrap() {
            assert!(bottom.leq(&s));
        }
        assert!(sep(&[0], &[1, 2], 3).leq(&sep(&[0, 1], &[2], 3)));
        assert!(!sep(&[0], &[1, 2], 3).leq(&sep(&[1], &[0, 2], 3)));
    }

    #[test]
    fn lattice_examples() {
        let bottom = sep(&[], &[0, 1, 2], 3);
        let r = sep(&[0], &[1, 2], 3);
        let s = sep(&[1], &[0, 2], 3);
        assert_eq!(bottom.sup(&r), r);
        assert_eq!(r.sup(&s), sep(&[0, 1], &[2], 3));
        assert_eq!(r.inf(&s), bottom);
    }

    #[test]
    fn enumeration_counts() {
        let caps = EnumCaps::default();
        assert_eq!(enumerate_seps(1, SepMode::AllSeparations, caps).unwrap().count(), 3);
        assert_eq!(enumerate_seps(2, SepMode::PartitionsOnly, caps).unwrap().count(), 4);
        // Independent count: every pair (A, B) of subsets of a 3-set with A ∪ B = V.
        let mut brute = 0;
        for a in 0u128..8 {
            for b in 0u128..8 {
                if a | b == 7 {
                    brute += 1;
                }
            }
        }
        let all: Vec<_> = enumerate_seps(3, SepMode::AllSeparations, caps)
            .unwrap()
            .collect();
        assert_eq!(all.len(), brute);
        assert_eq!(brute, 27);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 27);
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_seps(13, SepMode::AllSeparations, EnumCaps::default()),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_seps(13, SepMode::PartitionsOnly, EnumCaps::default()).is_ok());
    }

    #[test]
    fn canonical_pairs() {
        // (3^n - 1)/2 inverse pairs plus the self-inverse (V, V).
        for n in 0..=4 {
            let seps: Vec<_> = enumerate_seps(n, SepMode::AllSeparations, EnumCaps::default())
                .unwrap()
                .collect();
            let classes: std::collections::HashSet<_> =
                seps.iter().map(|s| s.canonical()).collect();
            assert_eq!(classes.len(), (3usize.pow(n as u32) - 1) / 2 + 1);
            for s in &seps {
                let c = s.canonical();
                assert_eq!(c.canonical().canonical(), c);
                assert_eq!(c, s.inverse().canonical());
                let [f, b] = c.orientations();
                assert_eq!(f.inverse(), b);
            }
        }
    }

    #[test]
    fn ground_set_labels() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        assert_eq!(g.position("b"), Some(1));
        let mk = g.mask_of(&["a", "c"]).unwrap();
        assert_eq!(g.names(mk), vec!["a", "c"]);
        assert!(matches!(g.mask_of(&["z"]), Err(Error::UnknownLabel(_))));
        assert!(matches!(
            GroundSet::new(["a", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
    }
}
