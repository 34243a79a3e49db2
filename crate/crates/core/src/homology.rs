//! Chains, boundaries and the boundary inner product of an antisymmetric
//! separation system, with integer kernels and decider search.
//!
//! A 1-chain is an integer vector indexed by the members of an
//! [`IndexedSystem`]; a 0-chain is indexed by the ground set. The boundary of
//! `(A, B)` is `+1` on `B∖A`, `-1` on `A∖B` and `0` on the middle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::separation::{OrientedSep, SubsetMask};
use crate::tangle::{LowOrderSystem, Orientation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain0 {
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain1 {
    pub coeffs: Vec<i64>,
}

/// A homomorphism `C_0 -> Z`, stored by its values on the basis `V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain0 {
    pub values: Vec<i64>,
}

/// A homomorphism `C_1 -> Z`, stored by its values on the basis `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain1 {
    pub values: Vec<i64>,
}

impl Chain0 {
    pub fn zero(n: usize) -> Self {
        Chain0 { coeffs: vec![0; n] }
    }

    pub fn unit(n: usize, v: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[v] = 1;
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, other: &Chain0) -> i64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }
}

impl Chain1 {
    pub fn zero(n: usize) -> Self {
        Chain1 { coeffs: vec![0; n] }
    }

    pub fn unit(n: usize, s: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[s] = 1;
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Chain1 {
        Chain1 {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &Chain1) -> Chain1 {
        Chain1 {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

/// The coefficient-reinterpreting isomorphism `C_0 -> C^0`.
pub fn gamma0(x: &Chain0) -> Cochain0 {
    Cochain0 {
        values: x.coeffs.clone(),
    }
}

pub fn gamma1(x: &Chain1) -> Cochain1 {
    Cochain1 {
        values: x.coeffs.clone(),
    }
}

pub fn gamma1_inv(phi: &Cochain1) -> Chain1 {
    Chain1 {
        coeffs: phi.values.clone(),
    }
}

impl Cochain0 {
    /// Evaluation on a 0-chain.
    pub fn eval(&self, x: &Chain0) -> i64 {
        self.values.iter().zip(&x.coeffs).map(|(a, b)| a * b).sum()
    }
}

/// Boundary of a single separation as a 0-chain, read off its sides.
pub fn sep_boundary(s: &OrientedSep) -> Chain0 {
    let n = s.ground_len();
    let mut c = Chain0::zero(n);
    for v in (s.b() - s.a()).iter() {
        c.coeffs[v] = 1;
    }
    for v in (s.a() - s.b()).iter() {
        c.coeffs[v] = -1;
    }
    c
}

/// A fixed list of default orientations containing no inverse pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedSystem {
    ground_len: usize,
    seps: Vec<OrientedSep>,
}

impl IndexedSystem {
    pub fn new(ground_len: usize, seps: Vec<OrientedSep>) -> Result<Self> {
        if seps.iter().any(|s| s.ground_len() != ground_len) {
            return Err(Error::SideMismatch("separation on a different ground set"));
        }
        for (i, s) in seps.iter().enumerate() {
            let inv = s.inverse();
            if inv == *s {
                continue;
            }
            if let Some(j) = seps.iter().position(|t| *t == inv) {
                return Err(Error::InversePairPresent(i.min(j), i.max(j)));
            }
        }
        Ok(IndexedSystem { ground_len, seps })
    }

    /// Members of a low-order system in their canonical orientations.
    pub fn from_system(sys: &LowOrderSystem) -> Self {
        IndexedSystem {
            ground_len: sys.ground_len(),
            seps: sys.members().iter().map(|m| m.sep.canonical()).collect(),
        }
    }

    pub fn ground_len(&self) -> usize {
        self.ground_len
    }

    pub fn seps(&self) -> &[OrientedSep] {
        &self.seps
    }

    pub fn len(&self) -> usize {
        self.seps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seps.is_empty()
    }

    pub fn boundary_matrix(&self) -> BoundaryMatrix {
        let mut entries = vec![vec![0i8; self.seps.len()]; self.ground_len];
        for (j, s) in self.seps.iter().enumerate() {
            for (v, c) in sep_boundary(s).coeffs.into_iter().enumerate() {
                entries[v][j] = c as i8;
            }
        }
        BoundaryMatrix {
            rows: self.ground_len,
            cols: self.seps.len(),
            entries,
        }
    }

    /// `δ⁰`: pulls a 0-cochain back along the boundary, `φ ↦ φ ∘ ∂`.
    pub fn coboundary(&self, phi: &Cochain0) -> Cochain1 {
        Cochain1 {
            values: self.seps.iter().map(|s| phi.eval(&sep_boundary(s))).collect(),
        }
    }
}

/// The `|V| × |S|` matrix of `∂₁`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i8>>,
}

impl BoundaryMatrix {
    pub fn entry(&self, v: usize, s: usize) -> i64 {
        self.entries[v][s] as i64
    }

    pub fn apply(&self, x: &Chain1) -> Chain0 {
        assert_eq!(x.coeffs.len(), self.cols, "chain length");
        Chain0 {
            coeffs: self
                .entries
                .iter()
                .map(|row| row.iter().zip(&x.coeffs).map(|(&b, c)| b as i64 * c).sum())
                .collect(),
        }
    }

    /// `Bᵀ μ`.
    pub fn apply_transpose(&self, mu: &[i64]) -> Vec<i64> {
        assert_eq!(mu.len(), self.rows, "weight length");
        (0..self.cols)
            .map(|j| (0..self.rows).map(|v| self.entry(v, j) * mu[v]).sum())
            .collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::of(self).pivots.len()
    }
}

/// `∂x` via the boundary matrix.
pub fn boundary(sys: &IndexedSystem, x: &Chain1) -> Chain0 {
    sys.boundary_matrix().apply(x)
}

/// Checks that the coefficient of `v` in `∂s` equals the coefficient of `s`
/// in `γ₁⁻¹ δ γ₀ (v)` for every vertex `v` and member `s`.
pub fn check_vs_duality(sys: &IndexedSystem) -> bool {
    let b = sys.boundary_matrix();
    let n = sys.ground_len();
    let m = sys.len();
    (0..n).all(|v| {
        let dual = gamma1_inv(&sys.coboundary(&gamma0(&Chain0::unit(n, v))));
        (0..m).all(|s| b.apply(&Chain1::unit(m, s)).coeffs[v] == dual.coeffs[s])
    })
}

/// `⟨x, y⟩_∂ = ∂x · ∂y`.
pub fn inner_product(sys: &IndexedSystem, x: &Chain1, y: &Chain1) -> i64 {
    let b = sys.boundary_matrix();
    b.apply(x).dot(&b.apply(y))
}

/// `‖s‖² = |V| - |A∩B|`.
pub fn norm_squared(s: &OrientedSep) -> u64 {
    (s.ground_len() - s.middle().count() as usize) as u64
}

/// `‖r∧s‖² + ‖r∨s‖² = ‖r‖² + ‖s‖²`.
pub fn modular_identity(r: &OrientedSep, s: &OrientedSep) -> bool {
    norm_squared(&r.inf(s)) + norm_squared(&r.sup(s)) == norm_squared(r) + norm_squared(s)
}

/// Checks that `{s : ‖s‖² < k_squared}` is structurally submodular inside
/// `lattice`, together with the modular identity on every pair. The bound is
/// passed squared so that it stays integral.
pub fn structural_submodularity_check(lattice: &[OrientedSep], k_squared: u64) -> Result<bool> {
    let set: std::collections::HashSet<OrientedSep> = lattice.iter().copied().collect();
    for r in lattice {
        for s in lattice {
            if !set.contains(&r.sup(s)) || !set.contains(&r.inf(s)) {
                return Err(Error::PreconditionViolated(format!(
                    "lattice not closed under sup/inf at {r:?}, {s:?}"
                )));
            }
        }
    }
    let small: Vec<&OrientedSep> = lattice.iter().filter(|s| norm_squared(s) < k_squared).collect();
    Ok(small.iter().all(|r| {
        small.iter().all(|s| {
            modular_identity(r, s)
                && (norm_squared(&r.sup(s)) < k_squared || norm_squared(&r.inf(s)) < k_squared)
        })
    }))
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn primitive(row: &mut [i128]) {
    let g = row.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// Fraction-free reduced echelon form: each pivot column is zero outside its
/// pivot row, and every row is primitive.
struct Echelon {
    rows: Vec<Vec<i128>>,
    /// `(row, column)` of each pivot.
    pivots: Vec<(usize, usize)>,
    cols: usize,
}

impl Echelon {
    fn of(b: &BoundaryMatrix) -> Self {
        let mut rows: Vec<Vec<i128>> = b
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..b.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c] == 0 {
                    continue;
                }
                let (a, f) = (pivot_row[c], row[c]);
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = *x * a - f * y;
                }
                primitive(row);
            }
            pivots.push((r, c));
            r += 1;
        }
        Echelon {
            rows,
            pivots,
            cols: b.cols,
        }
    }
}

/// A basis of the rational kernel of `B` by primitive integer vectors, one per
/// non-pivot column.
pub fn kernel_basis(b: &BoundaryMatrix) -> Vec<Chain1> {
    let e = Echelon::of(b);
    let pivot_cols: Vec<usize> = e.pivots.iter().map(|&(_, c)| c).collect();
    let lcm = e
        .pivots
        .iter()
        .fold(1i128, |l, &(r, c)| {
            let d = e.rows[r][c].abs();
            l / gcd(l, d) * d
        });
    (0..e.cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|f| {
            let mut x = vec![0i128; e.cols];
            x[f] = lcm;
            for &(r, c) in &e.pivots {
                x[c] = -lcm / e.rows[r][c] * e.rows[r][f];
            }
            primitive(&mut x);
            Chain1 {
                coeffs: x.into_iter().map(|v| v as i64).collect(),
            }
        })
        .collect()
}

/// `λ_s = 1` when `o` contains the default orientation of `s`, `-1` when it
/// contains the inverse.
pub fn orientation_to_chain(o: &Orientation, sys: &IndexedSystem) -> Result<Chain1> {
    sys.seps()
        .iter()
        .map(|s| {
            if o.contains(s) {
                Ok(1)
            } else if o.contains(&s.inverse()) {
                Ok(-1)
            } else {
                Err(Error::PreconditionViolated(format!("{s:?} is not oriented")))
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(|coeffs| Chain1 { coeffs })
}

/// Whether the chain of `o` over its own system is a cycle.
pub fn tangle_kernel_check(o: &Orientation) -> bool {
    let sys = IndexedSystem::from_system(o.system());
    let x = orientation_to_chain(o, &sys).expect("an orientation orients its own system");
    boundary(&sys, &x).is_zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeciderCondition {
    /// `λ_s (Bᵀμ)_s ≥ 1` for every `s`.
    #[default]
    Componentwise,
    /// `(Bλ)ᵀ μ ≥ 1`.
    Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightConstraint {
    #[default]
    Free,
    NonNegative,
    Binary,
    SumOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DeciderOptions {
    pub condition: DeciderCondition,
    pub constraint: WeightConstraint,
    /// Largest `|μ_v|`; `None` means `|S|`.
    pub bound: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeciderReport {
    pub lambda: Vec<i64>,
    pub mu: Option<Vec<i64>>,
    pub bound: i64,
}

/// Searches integer weights `μ` with entries bounded by the configured bound,
/// trying smaller bounds first.
pub fn find_decider(b: &BoundaryMatrix, lambda: &[i64], opts: DeciderOptions) -> DeciderReport {
    assert_eq!(lambda.len(), b.cols, "lambda length");
    let bound = opts.bound.unwrap_or(b.cols as i64).max(0);
    let rows: Vec<Vec<i64>> = match opts.condition {
        DeciderCondition::Componentwise => (0..b.cols)
            .map(|s| (0..b.rows).map(|v| lambda[s] * b.entry(v, s)).collect())
            .collect(),
        DeciderCondition::Scalar => {
            let chain = b.apply(&Chain1 {
                coeffs: lambda.to_vec(),
            });
            vec![chain.coeffs]
        }
    };
    let cycle = b
        .apply(&Chain1 {
            coeffs: lambda.to_vec(),
        })
        .is_zero();
    // Summing the componentwise inequalities over a cycle gives 0 ≥ |S|.
    let hopeless = cycle && !rows.is_empty();
    let mu = if hopeless {
        None
    } else {
        let top = if opts.constraint == WeightConstraint::Binary {
            bound.min(1)
        } else {
            bound
        };
        (if top == 0 { 0..=0 } else { 1..=top })
            .find_map(|bd| WeightSearch::new(&rows, b.rows, bd, opts.constraint).run())
    };
    DeciderReport {
        lambda: lambda.to_vec(),
        mu,
        bound,
    }
}

/// Re-checks a decider against the componentwise condition.
pub fn is_componentwise_decider(b: &BoundaryMatrix, lambda: &[i64], mu: &[i64]) -> bool {
    b.apply_transpose(mu)
        .iter()
        .zip(lambda)
        .all(|(d, l)| l * d >= 1)
}

struct WeightSearch<'a> {
    rows: &'a [Vec<i64>],
    n: usize,
    lo: i64,
    hi: i64,
    sum_one: bool,
    /// `rest[r][v]`: largest contribution of variables `v..` to row `r`.
    rest: Vec<Vec<i64>>,
    partial: Vec<i64>,
    mu: Vec<i64>,
}

impl<'a> WeightSearch<'a> {
    fn new(rows: &'a [Vec<i64>], n: usize, bound: i64, constraint: WeightConstraint) -> Self {
        let (lo, hi) = match constraint {
            WeightConstraint::Free | WeightConstraint::SumOne => (-bound, bound),
            WeightConstraint::NonNegative | WeightConstraint::Binary => (0, bound),
        };
        let rest = rows
            .iter()
            .map(|row| {
                let mut acc = vec![0; n + 1];
                for v in (0..n).rev() {
                    acc[v] = acc[v + 1] + (row[v] * lo).max(row[v] * hi);
                }
                acc
            })
            .collect();
        WeightSearch {
            rows,
            n,
            lo,
            hi,
            sum_one: constraint == WeightConstraint::SumOne,
            rest,
            partial: vec![0; rows.len()],
            mu: vec![0; n],
        }
    }

    fn run(mut self) -> Option<Vec<i64>> {
        self.dfs(0, 0).then_some(self.mu)
    }

    fn values(&self) -> impl Iterator<Item = i64> {
        let (lo, hi) = (self.lo, self.hi);
        (0..=hi.max(-lo))
            .flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] })
            .filter(move |x| (lo..=hi).contains(x))
    }

    fn dfs(&mut self, v: usize, sum: i64) -> bool {
        if v == self.n {
            return (!self.sum_one || sum == 1) && self.partial.iter().all(|&p| p >= 1);
        }
        if self.sum_one {
            let left = (self.n - v) as i64;
            if 1 - sum < self.lo * left || 1 - sum > self.hi * left {
                return false;
            }
        }
        let values: Vec<i64> = self.values().collect();
        for x in values {
            let ok = self.rows.iter().enumerate().all(|(r, row)| {
                self.partial[r] + row[v] * x + self.rest[r][v + 1] >= 1
            });
            if !ok {
                continue;
            }
            for (p, row) in self.partial.iter_mut().zip(self.rows) {
                *p += row[v] * x;
            }
            self.mu[v] = x;
            if self.dfs(v + 1, sum + x) {
                return true;
            }
            for (p, row) in self.partial.iter_mut().zip(self.rows) {
                *p -= row[v] * x;
            }
        }
        self.mu[v] = 0;
        false
    }
}

/// Eight points on the unit circle at 45° spacing and the four lines through
/// the origin that avoid them.
#[derive(Debug, Clone)]
pub struct DiscFixture {
    /// Direction of each line in units of 22.5°.
    pub line_angles: Vec<u32>,
    pub lines: Vec<OrientedSep>,
}

impl DiscFixture {
    pub const POINTS: usize = 8;

    pub fn new() -> Self {
        // Point i sits at angle 2i, line j at 2j+1, in units of 22.5°.
        let line_angles: Vec<u32> = (0..4).map(|j| 2 * j + 1).collect();
        let lines = line_angles
            .iter()
            .map(|&l| {
                let left = (0..Self::POINTS).filter(|&i| ((2 * i as u32 + 16 - l) % 16) < 8);
                OrientedSep::partition(SubsetMask::from_indices(left, Self::POINTS))
            })
            .collect();
        DiscFixture { line_angles, lines }
    }

    pub fn perpendicular(&self, i: usize, j: usize) -> bool {
        self.line_angles[i].abs_diff(self.line_angles[j]) % 8 == 4
    }
}

impl Default for DiscFixture {
    fn default() -> Self {
        Self::new()
    }
}
