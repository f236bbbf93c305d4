//! The Lie superalgebra `SVir[M, s]`: basis symbols, the graded bracket,
//! graded Jacobi residuals and ad-ladders.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::lattice::{
    lemma32_basis, AlgebraConfig, HalfInt, IndexVector, Lemma32Basis, Lemma32Case, LatticeError,
    OddCentralSign, Parity,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element is not homogeneous in parity")]
    NotHomogeneous,
    #[error("factor {position} of the ladder product vanishes")]
    DegenerateFactor { position: i64 },
    #[error("zero factor in the bracket-chain product")]
    ZeroProductFactor,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `L_μ`, `G_η` or the central element `c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElt {
    L(IndexVector),
    G(IndexVector),
    C,
}

impl BasisElt {
    pub fn parity(&self) -> Parity {
        match self {
            BasisElt::G(_) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn index(&self) -> Option<&IndexVector> {
        match self {
            BasisElt::L(i) | BasisElt::G(i) => Some(i),
            BasisElt::C => None,
        }
    }

    /// Checks that `L` carries an even index and `G` an odd one.
    pub fn validate(&self, config: &AlgebraConfig) -> Result<(), LatticeError> {
        match self {
            BasisElt::L(i) if i.parity() == Parity::Even => config.check_index(i),
            BasisElt::G(i) if i.parity() == Parity::Odd => config.check_index(i),
            BasisElt::C => Ok(()),
            BasisElt::L(i) | BasisElt::G(i) => Err(LatticeError::ParityViolation {
                index: i.to_string(),
                parity: self.parity(),
            }),
        }
    }
}

impl fmt::Display for BasisElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElt::L(i) => write!(f, "L{i}"),
            BasisElt::G(i) => write!(f, "G{i}"),
            BasisElt::C => write!(f, "c"),
        }
    }
}

impl fmt::Debug for BasisElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Finite formal sum of basis symbols; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<BasisElt, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: BasisElt) -> Self {
        Self::term(Scalar::one(), b)
    }

    pub fn term(coeff: Scalar, b: BasisElt) -> Self {
        let mut out = Self::zero();
        out.add_term(b, coeff);
        out
    }

    pub fn l(index: IndexVector) -> Self {
        Self::basis(BasisElt::L(index))
    }

    pub fn g(index: IndexVector) -> Self {
        Self::basis(BasisElt::G(index))
    }

    pub fn c() -> Self {
        Self::basis(BasisElt::C)
    }

    pub fn add_term(&mut self, b: BasisElt, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElt, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &BasisElt) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = Self::zero();
        if k.is_zero() {
            return out;
        }
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c * k);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Parity of a homogeneous element; `None` for mixed elements. Zero
    /// counts as even.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(BasisElt::parity);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Even and odd components.
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Self::zero();
        let mut odd = Self::zero();
        for (b, c) in &self.terms {
            match b.parity() {
                Parity::Even => even.add_term(b.clone(), c.clone()),
                Parity::Odd => odd.add_term(b.clone(), c.clone()),
            }
        }
        (even, odd)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| format!("({c:?})*{b}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sign_of(p: Parity, q: Parity) -> i64 {
    if p.is_odd() && q.is_odd() {
        -1
    } else {
        1
    }
}

/// Bracket of two basis symbols:
///
/// ```text
/// [L_μ, L_ν] = (ν − μ) L_{μ+ν} − δ_{μ+ν,0} (1/12)(μ³ − μ) c
/// [L_μ, G_η] = (η − μ/2) G_{μ+η}
/// [G_η, G_λ] = 2 L_{η+λ} − δ_{η+λ,0} (1/3)(η² − 1/4) c
/// ```
///
/// `[G, L]` follows from graded antisymmetry and `c` is central. Scalars
/// `μ, η` stand for their embeddings; `δ` is decided on coordinates.
pub fn bracket_basis(config: &AlgebraConfig, x: &BasisElt, y: &BasisElt) -> AlgebraElement {
    match (x, y) {
        (BasisElt::C, _) | (_, BasisElt::C) => AlgebraElement::zero(),
        (BasisElt::L(mu), BasisElt::L(nu)) => {
            let (em, en) = (config.embed(mu), config.embed(nu));
            let sum = mu + nu;
            let mut out = AlgebraElement::zero();
            if sum.is_zero() {
                let cubic = &(&em * &em) * &em - &em;
                out.add_term(BasisElt::C, &cubic * &Scalar::from_ratio(-1, 12));
            }
            out.add_term(BasisElt::L(sum), en - em);
            out
        }
        (BasisElt::L(mu), BasisElt::G(eta)) => {
            let coeff = lg_coeff(config, mu, eta);
            AlgebraElement::term(coeff, BasisElt::G(mu + eta))
        }
        (BasisElt::G(eta), BasisElt::L(mu)) => {
            let coeff = -lg_coeff(config, mu, eta);
            AlgebraElement::term(coeff, BasisElt::G(mu + eta))
        }
        (BasisElt::G(eta), BasisElt::G(lam)) => {
            let sum = eta + lam;
            let mut out = AlgebraElement::zero();
            if sum.is_zero() {
                let e = config.embed(eta);
                let quad = &e * &e - Scalar::from_ratio(1, 4);
                let k = match config.odd_central() {
                    OddCentralSign::AsPrinted => Scalar::from_ratio(-1, 3),
                    OddCentralSign::Flipped => Scalar::from_ratio(1, 3),
                };
                out.add_term(BasisElt::C, quad * k);
            }
            out.add_term(BasisElt::L(sum), Scalar::from_int(2));
            out
        }
    }
}

fn lg_coeff(config: &AlgebraConfig, mu: &IndexVector, eta: &IndexVector) -> Scalar {
    config.embed(eta) - config.embed(mu) * Scalar::from_ratio(1, 2)
}

/// Bilinear extension of [`bracket_basis`].
pub fn bracket(config: &AlgebraConfig, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (bx, cx) in x.terms() {
        for (by, cy) in y.terms() {
            let coeff = cx * cy;
            for (b, c) in bracket_basis(config, bx, by).terms() {
                out.add_term(b.clone(), c * &coeff);
            }
        }
    }
    out
}

/// `[x,[y,z]] − [[x,y],z] − (−1)^{|x||y|} [y,[x,z]]` for homogeneous inputs.
pub fn super_jacobi_residual(
    config: &AlgebraConfig,
    x: &AlgebraElement,
    y: &AlgebraElement,
    z: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    let px = x.homogeneous_parity().ok_or(AlgebraError::NotHomogeneous)?;
    let py = y.homogeneous_parity().ok_or(AlgebraError::NotHomogeneous)?;
    z.homogeneous_parity().ok_or(AlgebraError::NotHomogeneous)?;
    let lhs = bracket(config, x, &bracket(config, y, z));
    let first = bracket(config, &bracket(config, x, y), z);
    let second = bracket(config, y, &bracket(config, x, z));
    let sign = Scalar::from_int(sign_of(px, py));
    Ok(lhs.sub(&first).sub(&second.scale(&sign)))
}

/// `bracket(x, y) + (−1)^{|x||y|} bracket(y, x)` for basis symbols.
pub fn antisymmetry_residual(
    config: &AlgebraConfig,
    x: &BasisElt,
    y: &BasisElt,
) -> AlgebraElement {
    let sign = Scalar::from_int(sign_of(x.parity(), y.parity()));
    bracket_basis(config, x, y).add(&bracket_basis(config, y, x).scale(&sign))
}

/// `(ad x)^m y`.
pub fn ad_power(
    config: &AlgebraConfig,
    x: &AlgebraElement,
    m: u32,
    y: &AlgebraElement,
) -> AlgebraElement {
    (0..m).fold(y.clone(), |acc, _| bracket(config, x, &acc))
}

/// Every homogeneous basis symbol with index in the box, plus `c`, in a
/// fixed order: `L` indices, then `G` indices, then `c`.
pub fn box_basis(config: &AlgebraConfig, radius: HalfInt) -> Vec<BasisElt> {
    let mut out: Vec<BasisElt> = config
        .box_indices(radius, Parity::Even)
        .into_iter()
        .map(BasisElt::L)
        .collect();
    out.extend(config.box_indices(radius, Parity::Odd).into_iter().map(BasisElt::G));
    out.push(BasisElt::C);
    out
}

/// A basis triple whose Jacobi residual is nonzero.
#[derive(Debug, Clone)]
pub struct JacobiFailure {
    pub triple: [BasisElt; 3],
    pub residual: AlgebraElement,
}

#[derive(Debug, Clone)]
pub struct JacobiSweep {
    pub checked: usize,
    pub central_triples: usize,
    pub failures: Vec<JacobiFailure>,
}

/// Exhaustive super-Jacobi check over all basis triples with coordinates in
/// `[-radius, radius]`. Failures are listed in enumeration order.
pub fn jacobi_sweep(config: &AlgebraConfig, radius: HalfInt) -> JacobiSweep {
    let basis = box_basis(config, radius);
    let elems: Vec<AlgebraElement> = basis.iter().cloned().map(AlgebraElement::basis).collect();
    let n = basis.len();
    let per_triple: Vec<(bool, Option<JacobiFailure>)> = (0..n * n * n)
        .into_par_iter()
        .map(|t| {
            let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
            let res = super_jacobi_residual(config, &elems[i], &elems[j], &elems[k])
                .expect("basis symbols are homogeneous");
            let central = touches_center(&basis[i], &basis[j], &basis[k]);
            let failure = (!res.is_zero()).then(|| JacobiFailure {
                triple: [basis[i].clone(), basis[j].clone(), basis[k].clone()],
                residual: res,
            });
            (central, failure)
        })
        .collect();
    JacobiSweep {
        checked: per_triple.len(),
        central_triples: per_triple.iter().filter(|(c, _)| *c).count(),
        failures: per_triple.into_iter().filter_map(|(_, f)| f).collect(),
    }
}

/// Whether the outer brackets of the Jacobi expansion can produce a central
/// term, i.e. the three indices sum to zero. Central terms of inner brackets
/// are annihilated by the outer one.
pub fn touches_center(x: &BasisElt, y: &BasisElt, z: &BasisElt) -> bool {
    let idx = |b: &BasisElt| b.index().cloned();
    let (Some(a), Some(b), Some(c)) = (idx(x), idx(y), idx(z)) else {
        return false;
    };
    (&(&a + &b) + &c).is_zero()
}

/// One side of the ladder identity for a given `m`.
#[derive(Debug, Clone)]
pub struct LadderForm {
    /// The element `(ad L_d)^m X` for `X = L_μ` or `G_{s+μ}`.
    pub ladder: AlgebraElement,
    pub target: BasisElt,
    /// `∏_{i=-1}^{m-2}(μ + i d)` or `∏_{i=-1}^{m-2}(s + μ + (i/2) d)`.
    pub printed_product: Scalar,
    /// Coefficient of the target in `ladder`.
    pub actual_coefficient: Scalar,
    /// `ladder − printed_product · target`.
    pub residual: AlgebraElement,
}

impl LadderForm {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Debug, Clone)]
pub struct LadderReport {
    pub m: u32,
    pub l_form: LadderForm,
    pub g_form: LadderForm,
}

impl LadderReport {
    pub fn holds(&self) -> bool {
        self.l_form.holds() && self.g_form.holds()
    }
}

/// Checks `L_{μ+md} = ∏_{i=-1}^{m-2}(μ+id)^{-1} (ad L_d)^m L_μ` and
/// `G_{s+μ+md} = ∏_{i=-1}^{m-2}(s+μ+(i/2)d)^{-1} (ad L_d)^m G_{s+μ}`.
///
/// Both identities are checked in the multiplied-out form
/// `(ad L_d)^m X = ∏ · X_{target}`, after confirming every factor is
/// nonzero.
pub fn ladder_identity_check(
    config: &AlgebraConfig,
    d: &IndexVector,
    mu: &IndexVector,
    m: u32,
) -> Result<LadderReport, AlgebraError> {
    config.check_index(d)?;
    config.check_index(mu)?;
    if d.parity() != Parity::Even || mu.parity() != Parity::Even {
        return Err(LatticeError::ParityViolation {
            index: format!("{d} / {mu}"),
            parity: Parity::Even,
        }
        .into());
    }
    let ld = AlgebraElement::l(d.clone());
    let (emu, ed) = (config.embed(mu), config.embed(d));
    let es = config.embed(&config.sigma_index());
    let mut shift = mu.clone();
    for _ in 0..m {
        shift = &shift + d;
    }

    let factors_l: Vec<Scalar> = (-1..=(m as i64) - 2)
        .map(|i| &emu + &ed.scale(&BigRational::from_integer(i.into())))
        .collect();
    let factors_g: Vec<Scalar> = (-1..=(m as i64) - 2)
        .map(|i| &(&es + &emu) + &ed.scale(&BigRational::new(i.into(), 2.into())))
        .collect();
    for (pos, f) in (-1i64..).zip(factors_l.iter().chain(&factors_g)) {
        if f.is_zero() {
            return Err(AlgebraError::DegenerateFactor { position: pos });
        }
    }

    let form = |start: BasisElt, target: BasisElt, factors: Vec<Scalar>| {
        let ladder = ad_power(config, &ld, m, &AlgebraElement::basis(start));
        let printed: Scalar = factors.into_iter().product();
        let residual = ladder.sub(&AlgebraElement::term(printed.clone(), target.clone()));
        LadderForm {
            actual_coefficient: ladder.coeff(&target),
            ladder,
            target,
            printed_product: printed,
            residual,
        }
    };
    let g_start = &config.sigma_index() + mu;
    let g_target = &config.sigma_index() + &shift;
    Ok(LadderReport {
        m,
        l_form: form(BasisElt::L(mu.clone()), BasisElt::L(shift), factors_l),
        g_form: form(BasisElt::G(g_start), BasisElt::G(g_target), factors_g),
    })
}

/// One iterated bracket `[L_μ, …, [L_μ, L_start]…]` producing `L_{d′ᵢ}`.
#[derive(Debug, Clone)]
pub struct BracketChain {
    /// Which `d′ᵢ` (0-based).
    pub row: usize,
    pub start: IndexVector,
    pub copies: u32,
    /// Intermediate elements, starting with `L_start`.
    pub steps: Vec<AlgebraElement>,
    pub target: IndexVector,
    pub expected: Scalar,
    pub computed: Scalar,
    pub verified: bool,
}

/// In the zero-coordinate case each `d′ᵢ − μ` lies in `A`, so `L_{d′ᵢ}` is a
/// generator itself.
#[derive(Debug, Clone)]
pub struct GeneratorMembership {
    pub row: usize,
    pub difference: Vec<i64>,
    pub in_a: bool,
}

#[derive(Debug, Clone)]
pub struct Lemma32Witness {
    pub construction: Lemma32Basis,
    pub chains: Vec<BracketChain>,
    pub memberships: Vec<GeneratorMembership>,
}

impl Lemma32Witness {
    pub fn verified(&self) -> bool {
        self.construction.basis.is_unimodular()
            && self.chains.iter().all(|c| c.verified)
            && self.memberships.iter().all(|m| m.in_a)
    }
}

/// Verifies that each `L_{d′ᵢ}` of the basis from [`lemma32_basis`] lies in
/// the subalgebra generated by `L_ν, ν − μ ∈ A`.
///
/// When `m₁, m₂ ≠ 0`, `m₂ − 1` applications of `ad L_μ` to `L_{μ+d₁}` yield
/// `a·L_{d′₁}` with `a = ∏_{i=0}^{m₂−2}(iμ + d₁)`; `d′₂` uses `m₁ − 1` copies
/// on `L_{μ−d₂}` and `d′ᵢ (i ≥ 3)` uses `m₂ − 1` copies on `L_{μ+d₁+dᵢ}`.
/// Here `dᵢ` are the sign-normalized working basis vectors.
pub fn lemma32_bracket_witness(
    config: &AlgebraConfig,
    mu: &IndexVector,
) -> Result<Lemma32Witness, AlgebraError> {
    config.check_index(mu)?;
    let construction = lemma32_basis(mu)?;
    let mu_coords = mu.integer_coords().expect("even index");
    let rows = construction.basis.rows().to_vec();
    let work_vec = |i: usize| IndexVector::even(&construction.work_vector(i));
    let mut chains = Vec::new();
    let mut memberships = Vec::new();
    match construction.case {
        Lemma32Case::TwoNonzero => {
            let m1 = construction.work_coords[0] as u32;
            let m2 = construction.work_coords[1] as u32;
            for (row, target) in rows.iter().enumerate() {
                let (offset, copies) = match row {
                    0 => (work_vec(0), m2 - 1),
                    1 => (-&work_vec(1), m1 - 1),
                    i => (&work_vec(0) + &work_vec(i), m2 - 1),
                };
                chains.push(bracket_chain(config, mu, row, &offset, copies, target)?);
            }
        }
        Lemma32Case::SomeZero => {
            for (row, target) in rows.iter().enumerate() {
                let difference: Vec<i64> = target.iter().zip(&mu_coords).map(|(t, m)| t - m).collect();
                let in_a = difference.iter().all(|x| x.abs() <= 1);
                memberships.push(GeneratorMembership {
                    row,
                    difference,
                    in_a,
                });
            }
        }
    }
    Ok(Lemma32Witness {
        construction,
        chains,
        memberships,
    })
}

fn bracket_chain(
    config: &AlgebraConfig,
    mu: &IndexVector,
    row: usize,
    offset: &IndexVector,
    copies: u32,
    target_row: &[i64],
) -> Result<BracketChain, AlgebraError> {
    let start = mu + offset;
    let target = IndexVector::even(target_row);
    let lmu = AlgebraElement::l(mu.clone());
    let mut steps = vec![AlgebraElement::l(start.clone())];
    for _ in 0..copies {
        let next = bracket(config, &lmu, steps.last().expect("nonempty"));
        steps.push(next);
    }
    let (emu, eoff) = (config.embed(mu), config.embed(offset));
    let factors: Vec<Scalar> = (0..copies as i64)
        .map(|i| &emu.scale(&BigRational::from_integer(i.into())) + &eoff)
        .collect();
    if factors.iter().any(Scalar::is_zero) {
        return Err(AlgebraError::ZeroProductFactor);
    }
    let expected: Scalar = factors.into_iter().product();
    let last = steps.last().expect("nonempty");
    let computed = last.coeff(&BasisElt::L(target.clone()));
    let verified = last.len() == 1 && computed == expected;
    Ok(BracketChain {
        row,
        start,
        copies,
        steps,
        target,
        expected,
        computed,
        verified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementParity {
    Even,
    Odd,
    Mixed,
}

/// Parity and `ad L₀` weight of an element. The weight is `None` when
/// terms carry different weights or the element is zero.
pub fn parity_weight(config: &AlgebraConfig, x: &AlgebraElement) -> (ElementParity, Option<Scalar>) {
    let parity = match x.homogeneous_parity() {
        Some(Parity::Even) => ElementParity::Even,
        Some(Parity::Odd) => ElementParity::Odd,
        None => ElementParity::Mixed,
    };
    let mut weights = x
        .terms()
        .map(|(b, _)| b.index().map_or_else(Scalar::zero, |i| config.embed(i)));
    let weight = weights.next().and_then(|w| weights.all(|o| o == w).then_some(w));
    (parity, weight)
}
