//! The index lattice `M ≅ ℤⁿ`, its coset `s + M`, cones, and the
//! unimodular bases used to re-coordinatize them.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{Scalar, ScalarError, Symbols};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sigma must satisfy 2*sigma integral; `{0}` is not a half-integer")]
    NotHalfIntegral(String),
    #[error("{index} is not a valid {parity} index")]
    ParityViolation { index: String, parity: Parity },
    #[error("basis is not unimodular (determinant {0})")]
    NotUnimodular(i128),
    #[error("coordinates are not half-integral in the given basis")]
    NonHalfIntegralCoordinates,
    #[error("scaling factor alpha must be nonzero")]
    ZeroAlpha,
    #[error("unknown indeterminate `{0}` in configuration")]
    UnknownIndeterminate(String),
    #[error("rank {0} is too small for this construction")]
    RankTooSmall(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A number in `½ℤ`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// The half-integer whose double is `twice`.
    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    /// `n/d` if it lies in `½ℤ`.
    pub fn from_ratio(n: i64, d: i64) -> Option<Self> {
        if d == 0 || (2 * n) % d != 0 {
            return None;
        }
        Some(HalfInt(2 * n / d))
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(2))
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn scale(self, k: i64) -> Self {
        HalfInt(self.0 * k)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A point of `M` (even) or of `s + M` (odd), in coordinates of the
/// reference basis `B`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexVector {
    parity: Parity,
    coords: Vec<HalfInt>,
}

impl IndexVector {
    /// Builds an index without checking it against a configuration; use
    /// [`AlgebraConfig::index`] for validated construction.
    pub fn new_unchecked(coords: Vec<HalfInt>, parity: Parity) -> Self {
        IndexVector { parity, coords }
    }

    pub fn even(coords: &[i64]) -> Self {
        IndexVector {
            parity: Parity::Even,
            coords: coords.iter().map(|&c| HalfInt::from_int(c)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        IndexVector {
            parity: Parity::Even,
            coords: vec![HalfInt::ZERO; n],
        }
    }

    pub fn coords(&self) -> &[HalfInt] {
        &self.coords
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == HalfInt::ZERO)
    }

    /// Integer coordinates of an index whose coordinates are all integral.
    pub fn integer_coords(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then_some(c.twice() / 2))
            .collect()
    }

    pub fn max_abs(&self) -> HalfInt {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or(HalfInt::ZERO)
    }
}

impl Add for &IndexVector {
    type Output = IndexVector;
    fn add(self, rhs: &IndexVector) -> IndexVector {
        debug_assert_eq!(self.coords.len(), rhs.coords.len());
        IndexVector {
            parity: self.parity + rhs.parity,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl Sub for &IndexVector {
    type Output = IndexVector;
    fn sub(self, rhs: &IndexVector) -> IndexVector {
        self + &(-rhs)
    }
}

impl Neg for &IndexVector {
    type Output = IndexVector;
    fn neg(self) -> IndexVector {
        IndexVector {
            parity: self.parity,
            coords: self.coords.iter().map(|c| -*c).collect(),
        }
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.parity {
            Parity::Even => "e",
            Parity::Odd => "o",
        };
        write!(f, "{tag}{self}")
    }
}

/// Sign convention for the central term of the odd-odd bracket.
///
/// `AsPrinted` is `[G_η, G_λ] = 2L_{η+λ} − δ (1/3)(η² − 1/4) c`.
/// `Flipped` uses `+ δ (1/3)(η² − 1/4) c`, the sign for which the graded
/// Jacobi identity holds together with the `−(1/12)(μ³ − μ)` even term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OddCentralSign {
    #[default]
    AsPrinted,
    Flipped,
}

/// Rank, basis names and the half-integral shift `s` of `SVir[M, s]`.
#[derive(Debug, Clone)]
pub struct AlgebraConfig {
    symbols: Arc<Symbols>,
    d_vars: Vec<usize>,
    sigma: Vec<HalfInt>,
    odd_central: OddCentralSign,
}

impl AlgebraConfig {
    /// `d_names` must be declared in `symbols`; `sigma` holds the coordinates
    /// of `s` in the reference basis.
    pub fn new(
        symbols: Arc<Symbols>,
        d_names: &[&str],
        sigma: Vec<HalfInt>,
    ) -> Result<Self, LatticeError> {
        if d_names.is_empty() {
            return Err(LatticeError::ZeroRank);
        }
        if sigma.len() != d_names.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: d_names.len(),
                got: sigma.len(),
            });
        }
        let d_vars = d_names
            .iter()
            .map(|n| {
                symbols
                    .index_of(n)
                    .ok_or_else(|| LatticeError::UnknownIndeterminate(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraConfig {
            symbols,
            d_vars,
            sigma,
            odd_central: OddCentralSign::AsPrinted,
        })
    }

    /// Rank-`n` configuration with basis `d1, …, dn`, extra indeterminates
    /// `a, b, a'`, and the given `s`.
    pub fn standard(n: usize, sigma: Vec<HalfInt>) -> Result<Self, LatticeError> {
        let mut names: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
        names.extend(["a", "b", "a'"].map(String::from));
        let symbols = Symbols::new(names.clone())?;
        let d: Vec<&str> = names[..n].iter().map(String::as_str).collect();
        Self::new(symbols, &d, sigma)
    }

    pub fn with_odd_central(mut self, sign: OddCentralSign) -> Self {
        self.odd_central = sign;
        self
    }

    pub fn odd_central(&self) -> OddCentralSign {
        self.odd_central
    }

    pub fn symbols(&self) -> &Arc<Symbols> {
        &self.symbols
    }

    pub fn rank(&self) -> usize {
        self.d_vars.len()
    }

    pub fn sigma(&self) -> &[HalfInt] {
        &self.sigma
    }

    pub fn d_var(&self, i: usize) -> usize {
        self.d_vars[i]
    }

    /// The scalar `d_i` (0-based).
    pub fn d(&self, i: usize) -> Scalar {
        Scalar::var(self.d_vars[i])
    }

    /// Validated index constructor.
    pub fn index(&self, coords: Vec<HalfInt>, parity: Parity) -> Result<IndexVector, LatticeError> {
        let v = IndexVector::new_unchecked(coords, parity);
        self.check_index(&v)?;
        Ok(v)
    }

    pub fn even(&self, coords: &[i64]) -> Result<IndexVector, LatticeError> {
        self.index(coords.iter().map(|&c| HalfInt::from_int(c)).collect(), Parity::Even)
    }

    /// Odd index from doubled coordinates.
    pub fn odd_twice(&self, twice: &[i64]) -> Result<IndexVector, LatticeError> {
        self.index(twice.iter().map(|&c| HalfInt::from_twice(c)).collect(), Parity::Odd)
    }

    /// The index `s` itself.
    pub fn sigma_index(&self) -> IndexVector {
        IndexVector::new_unchecked(self.sigma.clone(), Parity::Odd)
    }

    pub fn check_index(&self, v: &IndexVector) -> Result<(), LatticeError> {
        if v.rank() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                got: v.rank(),
            });
        }
        let ok = match v.parity() {
            Parity::Even => v.coords().iter().all(|c| c.is_integer()),
            Parity::Odd => v
                .coords()
                .iter()
                .zip(&self.sigma)
                .all(|(c, s)| (*c - *s).is_integer()),
        };
        if ok {
            Ok(())
        } else {
            Err(LatticeError::ParityViolation {
                index: v.to_string(),
                parity: v.parity(),
            })
        }
    }

    /// `ι(v) = Σ vᵢ dᵢ`, with the `dᵢ` independent indeterminates.
    pub fn embed(&self, v: &IndexVector) -> Scalar {
        v.coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != HalfInt::ZERO)
            .map(|(i, c)| self.d(i).scale(&c.to_rational()))
            .sum()
    }

    /// All indices of the given parity with every coordinate in
    /// `[-radius, radius]`, in lexicographic order.
    pub fn box_indices(&self, radius: HalfInt, parity: Parity) -> Vec<IndexVector> {
        let per_coord: Vec<Vec<HalfInt>> = (0..self.rank())
            .map(|i| {
                let offset = match parity {
                    Parity::Even => 0,
                    Parity::Odd => self.sigma[i].twice().rem_euclid(2),
                };
                let r = radius.twice();
                (-r..=r)
                    .filter(|t| (t - offset).rem_euclid(2) == 0)
                    .map(HalfInt::from_twice)
                    .collect()
            })
            .collect();
        let mut out = vec![Vec::new()];
        for choices in &per_coord {
            let mut next = Vec::with_capacity(out.len() * choices.len());
            for prefix in &out {
                for c in choices {
                    let mut p = prefix.clone();
                    p.push(*c);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|coords| IndexVector::new_unchecked(coords, parity))
            .collect()
    }
}

/// Square integer matrix; row `i` holds the coordinates of `d′ᵢ` in `B`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    rows: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = rows.len();
        if n == 0 {
            return Err(LatticeError::ZeroRank);
        }
        for r in &rows {
            if r.len() != n {
                return Err(LatticeError::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        Ok(LatticeBasis { rows })
    }

    pub fn identity(n: usize) -> Self {
        LatticeBasis {
            rows: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Exact determinant.
    pub fn det(&self) -> i128 {
        unimodular_det(self)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    /// `Σ cᵢ d′ᵢ` in coordinates of the reference basis.
    pub fn combine(&self, coeffs: &[HalfInt]) -> Vec<HalfInt> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                self.rows
                    .iter()
                    .zip(coeffs)
                    .fold(HalfInt::ZERO, |acc, (row, c)| acc + c.scale(row[j]))
            })
            .collect()
    }
}

impl fmt::Debug for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn unimodular_det(b: &LatticeBasis) -> i128 {
    let n = b.rank();
    let mut m: Vec<Vec<i128>> = b
        .rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Coordinates of `v` with respect to the basis `b`, i.e. the `x` with
/// `Σ xᵢ d′ᵢ = v`.
pub fn change_of_coords(v: &IndexVector, b: &LatticeBasis) -> Result<Vec<HalfInt>, LatticeError> {
    let n = b.rank();
    if v.rank() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            got: v.rank(),
        });
    }
    let det = b.det();
    if det.abs() != 1 {
        return Err(LatticeError::NotUnimodular(det));
    }
    // Solve Bᵀ x = 2v over ℚ, then halve.
    let mut aug: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|j| {
            let mut row: Vec<Ratio<i128>> = (0..n)
                .map(|i| Ratio::from_integer(b.rows[i][j] as i128))
                .collect();
            row.push(Ratio::from_integer(v.coords()[j].twice() as i128));
            row
        })
        .collect();
    gauss_jordan(&mut aug, n);
    aug.iter()
        .map(|row| {
            let x = row[n];
            if x.is_integer() {
                Ok(HalfInt::from_twice(x.to_integer() as i64))
            } else {
                Err(LatticeError::NonHalfIntegralCoordinates)
            }
        })
        .collect()
}

/// Reduces the leading `n × n` block of an augmented matrix to the identity.
/// The block must be invertible.
fn gauss_jordan<T>(aug: &mut [Vec<T>], n: usize)
where
    T: Clone + Zero + One + PartialEq + std::ops::Div<Output = T> + std::ops::Sub<Output = T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("invertible block");
        aug.swap(col, p);
        let pivot = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..aug[r].len() {
                    let t = &f * &aug[col][c];
                    aug[r][c] = aug[r][c].clone() - t;
                }
            }
        }
    }
}

/// The basis `d′ᵢ = Σ_{j ≤ i} (k+i−j+1) dⱼ + k Σ_{j > i} dⱼ`, unimodular for
/// `n ≥ 2` (for `n = 1` it is the single vector `(k+1) d₁`).
pub fn lemma31_basis(n: usize, k: u32) -> LatticeBasis {
    let k = i64::from(k);
    let rows = (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| if j <= i { k + i - j + 1 } else { k })
                .collect()
        })
        .collect();
    LatticeBasis { rows }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSpec {
    pub basis: LatticeBasis,
    pub k: u32,
    pub parity: Parity,
}

impl ConeSpec {
    pub fn new(basis: LatticeBasis, k: u32, parity: Parity) -> Self {
        ConeSpec { basis, k, parity }
    }
}

/// Whether every coordinate of `v` in `cone.basis` is at least `cone.k`.
pub fn cone_member(v: &IndexVector, cone: &ConeSpec) -> Result<bool, LatticeError> {
    if v.parity() != cone.parity {
        return Err(LatticeError::ParityViolation {
            index: v.to_string(),
            parity: cone.parity,
        });
    }
    let coords = change_of_coords(v, &cone.basis)?;
    let k = HalfInt::from_int(i64::from(cone.k));
    Ok(coords.iter().all(|c| *c >= k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeViolation {
    pub coeffs: Vec<i64>,
    pub coords: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeInclusionReport {
    pub k: u32,
    pub bound: u32,
    pub det: i128,
    pub checked: usize,
    pub violations: Vec<ConeViolation>,
    /// Vectors where the closed-form coordinates `mᵢ = kΣ_{j<i} m′ⱼ +
    /// Σ_{j≥i}(k+j+1−i) m′ⱼ` disagree with the matrix product. Only computed
    /// when the basis is `lemma31_basis(n, k)`.
    pub closed_form_mismatches: Option<Vec<Vec<i64>>>,
}

impl ConeInclusionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && self
                .closed_form_mismatches
                .as_ref()
                .is_none_or(|m| m.is_empty())
    }
}

/// Nonzero vectors in `ℤ₊ⁿ` with coordinate sum at most `bound`, in
/// lexicographic order.
pub fn nonneg_vectors(n: usize, bound: u32) -> Vec<Vec<i64>> {
    fn rec(n: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            if prefix.iter().any(|&x| x > 0) {
                out.push(prefix.clone());
            }
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            rec(n, left - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, i64::from(bound), &mut Vec::new(), &mut out);
    out
}

/// Checks that every nonzero element of the nonnegative cone of `b` with
/// coefficient sum at most `bound` has all reference coordinates `≥ k`.
pub fn cone_inclusion_check(k: u32, b: &LatticeBasis, bound: u32) -> ConeInclusionReport {
    let n = b.rank();
    let kk = i64::from(k);
    let is_lemma_basis = *b == lemma31_basis(n, k);
    let mut violations = Vec::new();
    let mut mismatches = Vec::new();
    let candidates = nonneg_vectors(n, bound);
    for m in &candidates {
        let coords: Vec<i64> = (0..n)
            .map(|j| b.rows.iter().zip(m).map(|(row, c)| row[j] * c).sum())
            .collect();
        if coords.iter().any(|&c| c < kk) {
            violations.push(ConeViolation {
                coeffs: m.clone(),
                coords: coords.clone(),
            });
        }
        if is_lemma_basis {
            let closed: Vec<i64> = (1..=n)
                .map(|i| {
                    let head: i64 = m[..i - 1].iter().sum::<i64>() * kk;
                    let tail: i64 = (i..=n).map(|j| (kk + (j - i) as i64 + 1) * m[j - 1]).sum();
                    head + tail
                })
                .collect();
            if closed != coords {
                mismatches.push(m.clone());
            }
        }
    }
    ConeInclusionReport {
        k,
        bound,
        det: b.det(),
        checked: candidates.len(),
        violations,
        closed_form_mismatches: is_lemma_basis.then_some(mismatches),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma32Case {
    /// `m₁ ≠ 0` and `m₂ ≠ 0`.
    TwoNonzero,
    /// Some coordinate vanishes; it is moved to the first position.
    SomeZero,
}

/// Result of the two-case basis construction around an even index `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma32Basis {
    pub basis: LatticeBasis,
    pub case: Lemma32Case,
    /// `signs[i] = -1` when `dᵢ` was replaced by `-dᵢ`.
    pub signs: Vec<i64>,
    /// Working basis vector `i` is `signs[p[i]] · d_{p[i]}`.
    pub permutation: Vec<usize>,
    /// Coordinates of `μ` in the working basis (all nonnegative).
    pub work_coords: Vec<i64>,
}

impl Lemma32Basis {
    /// Reference coordinates of working-basis vector `i`.
    pub fn work_vector(&self, i: usize) -> Vec<i64> {
        let n = self.signs.len();
        let mut out = vec![0; n];
        let p = self.permutation[i];
        out[p] = self.signs[p];
        out
    }

    /// Converts working-basis coordinates to reference coordinates.
    pub fn to_reference(&self, work: &[i64]) -> Vec<i64> {
        let n = self.signs.len();
        let mut out = vec![0; n];
        for (i, c) in work.iter().enumerate() {
            let p = self.permutation[i];
            out[p] += c * self.signs[p];
        }
        out
    }
}

/// Builds `B′` with
/// `d′₁ = m₂μ + d₁, d′₂ = m₁μ − d₂, d′ᵢ = d′₁ + dᵢ` when `m₁, m₂ ≠ 0`, and
/// `d′₁ = μ + d₁, d′ᵢ = d′₁ + dᵢ` once a zero coordinate is moved first.
/// Negative coordinates are made nonnegative by flipping basis signs first.
pub fn lemma32_basis(mu: &IndexVector) -> Result<Lemma32Basis, LatticeError> {
    let n = mu.rank();
    if n < 2 {
        return Err(LatticeError::RankTooSmall(n));
    }
    let m = mu.integer_coords().ok_or(LatticeError::ParityViolation {
        index: mu.to_string(),
        parity: Parity::Even,
    })?;
    let signs: Vec<i64> = m.iter().map(|&x| if x < 0 { -1 } else { 1 }).collect();
    let abs: Vec<i64> = m.iter().map(|x| x.abs()).collect();

    let (case, permutation) = if abs[0] != 0 && abs[1] != 0 {
        (Lemma32Case::TwoNonzero, (0..n).collect::<Vec<_>>())
    } else {
        let z = abs.iter().position(|&x| x == 0).expect("some zero coordinate");
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(0, z);
        (Lemma32Case::SomeZero, p)
    };
    let work: Vec<i64> = permutation.iter().map(|&p| abs[p]).collect();
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let axpy = |a: i64, x: &[i64], y: &[i64]| -> Vec<i64> {
        x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
    };
    let neg = |x: &[i64]| -> Vec<i64> { x.iter().map(|v| -v).collect() };

    let mut rows_work = Vec::with_capacity(n);
    match case {
        Lemma32Case::TwoNonzero => {
            let d1p = axpy(work[1], &work, &unit(0));
            let d2p = axpy(work[0], &work, &neg(&unit(1)));
            rows_work.push(d1p.clone());
            rows_work.push(d2p);
            for i in 2..n {
                rows_work.push(axpy(1, &d1p, &unit(i)));
            }
        }
        Lemma32Case::SomeZero => {
            let d1p = axpy(1, &work, &unit(0));
            rows_work.push(d1p.clone());
            for i in 1..n {
                rows_work.push(axpy(1, &d1p, &unit(i)));
            }
        }
    }
    let mut out = Lemma32Basis {
        basis: LatticeBasis::identity(n),
        case,
        signs,
        permutation,
        work_coords: work,
    };
    let rows = rows_work.iter().map(|r| out.to_reference(r)).collect();
    out.basis = LatticeBasis::new(rows)?;
    Ok(out)
}

/// Sublattice of a rational ambient space, given by basis rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLattice {
    pub rows: Vec<Vec<BigRational>>,
}

impl RationalLattice {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Self {
        RationalLattice { rows }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        RationalLattice {
            rows: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(BigInt::from(x)))
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    /// Every row of `α·M` is an integral combination of the rows of `M′`.
    pub scaled_inclusion: bool,
    /// The change-of-basis matrix is unimodular, so `α·M = M′`.
    pub unimodular: bool,
    /// `s′ − α·s ∈ M′`.
    pub shift_in_lattice: bool,
}

impl IsoReport {
    pub fn isomorphic(&self) -> bool {
        self.scaled_inclusion && self.unimodular && self.shift_in_lattice
    }
}

/// Coordinates `x` with `Σ xᵢ rowsᵢ = target`, if any. The rows must be
/// linearly independent.
fn solve_rows(rows: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = rows.len();
    let m = target.len();
    // Equations are indexed by ambient coordinate j: Σᵢ xᵢ rows[i][j] = tⱼ.
    let mut eqs: Vec<Vec<BigRational>> = (0..m)
        .map(|j| {
            let mut r: Vec<BigRational> = rows.iter().map(|row| row[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..m).find(|&r| !eqs[r][col].is_zero()) else {
            continue;
        };
        eqs.swap(pivot_row, p);
        let pv = eqs[pivot_row][col].clone();
        for x in eqs[pivot_row].iter_mut() {
            *x = &*x / &pv;
        }
        let prow = eqs[pivot_row].clone();
        for (r, row) in eqs.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if eqs[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = eqs[r][n].clone();
    }
    Some(x)
}

fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        let (top, rest) = m.split_at_mut(col + 1);
        let prow = &top[col];
        for row in rest {
            let f = &row[col] / &pv;
            for (x, p) in row[col..].iter_mut().zip(&prow[col..]) {
                *x = &*x - &(&f * p);
            }
        }
    }
    det
}

/// Verifies `M′ = αM` and `s′ − αs ∈ M′` for a supplied rational `α`.
pub fn iso_check(
    m: &RationalLattice,
    s: &[BigRational],
    mprime: &RationalLattice,
    sprime: &[BigRational],
    alpha: &BigRational,
) -> Result<IsoReport, LatticeError> {
    if alpha.is_zero() {
        return Err(LatticeError::ZeroAlpha);
    }
    if m.rows.len() != mprime.rows.len() {
        return Ok(IsoReport {
            scaled_inclusion: false,
            unimodular: false,
            shift_in_lattice: false,
        });
    }
    let ambient = s.len();
    for r in m.rows.iter().chain(&mprime.rows) {
        if r.len() != ambient {
            return Err(LatticeError::DimensionMismatch {
                expected: ambient,
                got: r.len(),
            });
        }
    }
    if sprime.len() != ambient {
        return Err(LatticeError::DimensionMismatch {
            expected: ambient,
            got: sprime.len(),
        });
    }
    let mut transform = Vec::new();
    let mut inclusion = true;
    for row in &m.rows {
        let scaled: Vec<BigRational> = row.iter().map(|x| x * alpha).collect();
        match solve_rows(&mprime.rows, &scaled) {
            Some(x) if x.iter().all(|c| c.is_integer()) => transform.push(x),
            _ => {
                inclusion = false;
                break;
            }
        }
    }
    let unimodular = inclusion && rational_det(transform).abs().is_one();
    let shift: Vec<BigRational> = sprime.iter().zip(s).map(|(a, b)| a - b * alpha).collect();
    let shift_in_lattice = solve_rows(&mprime.rows, &shift)
        .is_some_and(|x| x.iter().all(|c| c.is_integer()));
    Ok(IsoReport {
        scaled_inclusion: inclusion,
        unimodular,
        shift_in_lattice,
    })
}
