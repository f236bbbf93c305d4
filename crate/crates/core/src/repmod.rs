//! Modules of the intermediate series `SA_{a,b}`, `SA_{a′}`, `SB_{a′}`, the
//! module axiom check, and truncation-box probes for submodules and
//! generalized highest weight vectors.
//!
//! Everything computed over a finite box is evidence about the infinite
//! module, never a proof.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{bracket, AlgebraElement, BasisElt};
use crate::lattice::{change_of_coords, cone_member, AlgebraConfig, ConeSpec, HalfInt, IndexVector, LatticeBasis, LatticeError, Parity};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("{vector} has the wrong parity for {family}")]
    ParityMismatch { vector: String, family: Family },
    #[error("element is not homogeneous in parity")]
    NotHomogeneous,
    #[error("the zero vector has no highest-weight property to probe")]
    ZeroVector,
    #[error("{0} lies outside the box")]
    OutsideBox(String),
    #[error("the set is not invariant: {from} reaches {to}")]
    NotInvariant { from: String, to: String },
    #[error("box radius must be at least 1")]
    RadiusTooSmall,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SA,
    SAPrime,
    SBPrime,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::SA => "SA",
            Family::SAPrime => "SAprime",
            Family::SBPrime => "SBprime",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        match tag {
            "SA" => Some(Family::SA),
            "SAprime" | "SA'" => Some(Family::SAPrime),
            "SBprime" | "SB'" => Some(Family::SBPrime),
            _ => None,
        }
    }

    /// Parity of the indices carried by `kind`.
    pub fn index_parity(self, kind: VecKind) -> Parity {
        match (self, kind) {
            (Family::SBPrime, VecKind::X) | (Family::SA | Family::SAPrime, VecKind::Y) => {
                Parity::Odd
            }
            _ => Parity::Even,
        }
    }

    /// The kind whose indices have the given parity.
    pub fn kind_for(self, parity: Parity) -> VecKind {
        if self.index_parity(VecKind::X) == parity {
            VecKind::X
        } else {
            VecKind::Y
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A module family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    SA { a: Scalar, b: Scalar },
    SAPrime { a_prime: Scalar },
    SBPrime { a_prime: Scalar },
}

impl ModuleSpec {
    pub fn family(&self) -> Family {
        match self {
            ModuleSpec::SA { .. } => Family::SA,
            ModuleSpec::SAPrime { .. } => Family::SAPrime,
            ModuleSpec::SBPrime { .. } => Family::SBPrime,
        }
    }

    /// The family with parameters `a, b` or `a′` left symbolic.
    pub fn symbolic(config: &AlgebraConfig, family: Family) -> Option<ModuleSpec> {
        let s = config.symbols();
        Some(match family {
            Family::SA => ModuleSpec::SA {
                a: s.scalar("a")?,
                b: s.scalar("b")?,
            },
            Family::SAPrime => ModuleSpec::SAPrime {
                a_prime: s.scalar("a'")?,
            },
            Family::SBPrime => ModuleSpec::SBPrime {
                a_prime: s.scalar("a'")?,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VecKind {
    X,
    Y,
}

/// `x_•` or `y_•`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleBasisVector {
    pub kind: VecKind,
    pub index: IndexVector,
}

impl ModuleBasisVector {
    pub fn x(index: IndexVector) -> Self {
        ModuleBasisVector {
            kind: VecKind::X,
            index,
        }
    }

    pub fn y(index: IndexVector) -> Self {
        ModuleBasisVector {
            kind: VecKind::Y,
            index,
        }
    }

    pub fn parity(&self) -> Parity {
        self.index.parity()
    }

    pub fn validate(&self, config: &AlgebraConfig, family: Family) -> Result<(), RepError> {
        if self.index.parity() != family.index_parity(self.kind) {
            return Err(RepError::ParityMismatch {
                vector: self.to_string(),
                family,
            });
        }
        config.check_index(&self.index)?;
        Ok(())
    }
}

impl fmt::Display for ModuleBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            VecKind::X => "x",
            VecKind::Y => "y",
        };
        write!(f, "{k}{}", self.index)
    }
}

impl fmt::Debug for ModuleBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ModuleVector {
    terms: BTreeMap<ModuleBasisVector, Scalar>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(v: ModuleBasisVector) -> Self {
        Self::term(Scalar::one(), v)
    }

    pub fn term(coeff: Scalar, v: ModuleBasisVector) -> Self {
        let mut out = Self::zero();
        out.add_term(v, coeff);
        out
    }

    pub fn add_term(&mut self, v: ModuleBasisVector, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(v) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&ModuleBasisVector, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v: &ModuleBasisVector) -> Scalar {
        self.terms.get(v).cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = Self::zero();
        for (v, c) in &self.terms {
            out.add_term(v.clone(), c * k);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(v.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }
}

impl fmt::Debug for ModuleVector {
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

/// Action of a basis symbol on a basis vector, following the
/// multiplication tables of the three families. `c` acts as zero; in
/// `SA_{a′}` the distinguished vector `v₀` is `x₀`.
pub fn act_basis(
    config: &AlgebraConfig,
    spec: &ModuleSpec,
    g: &BasisElt,
    v: &ModuleBasisVector,
) -> Result<ModuleVector, RepError> {
    let family = spec.family();
    v.validate(config, family)?;
    let (op, gi) = match g {
        BasisElt::C => return Ok(ModuleVector::zero()),
        BasisElt::L(i) => ('L', i),
        BasisElt::G(i) => ('G', i),
    };
    let half = Scalar::from_ratio(1, 2);
    let two = Scalar::from_int(2);
    let eg = config.embed(gi);
    let ev = config.embed(&v.index);
    let target = gi + &v.index;
    let flip = |k: VecKind| match k {
        VecKind::X => VecKind::Y,
        VecKind::Y => VecKind::X,
    };
    let kind = if op == 'L' { v.kind } else { flip(v.kind) };
    let out = ModuleBasisVector {
        kind,
        index: target.clone(),
    };
    let coeff = match (spec, op, v.kind) {
        (ModuleSpec::SA { a, b }, 'L', VecKind::X) => a + &ev + &eg * b,
        (ModuleSpec::SA { a, b }, 'L', VecKind::Y) => a + &ev + &eg * &(b - &half),
        (ModuleSpec::SA { .. }, 'G', VecKind::X) => Scalar::one(),
        (ModuleSpec::SA { a, b }, 'G', VecKind::Y) => a + &ev + &(&eg * &two) * &(b - &half),

        (ModuleSpec::SAPrime { a_prime }, 'L', VecKind::X) => {
            if v.index.is_zero() {
                &eg * &(&eg + a_prime)
            } else {
                &ev + &eg
            }
        }
        (ModuleSpec::SAPrime { .. }, 'L', VecKind::Y) => &ev + &(&eg * &half),
        (ModuleSpec::SAPrime { a_prime }, 'G', VecKind::X) => {
            if v.index.is_zero() {
                &(&eg * &two) + a_prime
            } else {
                Scalar::one()
            }
        }
        (ModuleSpec::SAPrime { .. }, 'G', VecKind::Y) => &ev + &eg,

        (ModuleSpec::SBPrime { .. }, 'L', VecKind::X) => &ev + &(&eg * &half),
        (ModuleSpec::SBPrime { a_prime }, 'L', VecKind::Y) => {
            if target.is_zero() {
                -(&eg * &(&eg + a_prime))
            } else {
                ev.clone()
            }
        }
        (ModuleSpec::SBPrime { a_prime }, 'G', VecKind::X) => {
            if target.is_zero() {
                &(&eg * &two) + a_prime
            } else {
                Scalar::one()
            }
        }
        (ModuleSpec::SBPrime { .. }, 'G', VecKind::Y) => ev.clone(),
        _ => unreachable!("operator is L or G"),
    };
    Ok(ModuleVector::term(coeff, out))
}

/// Bilinear extension of [`act_basis`].
pub fn act(
    config: &AlgebraConfig,
    spec: &ModuleSpec,
    g: &AlgebraElement,
    v: &ModuleVector,
) -> Result<ModuleVector, RepError> {
    let mut out = ModuleVector::zero();
    for (bg, cg) in g.terms() {
        for (bv, cv) in v.terms() {
            let k = cg * cv;
            for (w, c) in act_basis(config, spec, bg, bv)?.terms() {
                out.add_term(w.clone(), c * &k);
            }
        }
    }
    Ok(out)
}

/// `act([u,w],v) − act(u,act(w,v)) + (−1)^{|u||w|} act(w,act(u,v))`.
pub fn rep_residual(
    config: &AlgebraConfig,
    spec: &ModuleSpec,
    u: &AlgebraElement,
    w: &AlgebraElement,
    v: &ModuleVector,
) -> Result<ModuleVector, RepError> {
    let pu = u.homogeneous_parity().ok_or(RepError::NotHomogeneous)?;
    let pw = w.homogeneous_parity().ok_or(RepError::NotHomogeneous)?;
    let sign = if pu.is_odd() && pw.is_odd() { -1 } else { 1 };
    let lhs = act(config, spec, &bracket(config, u, w), v)?;
    let uw = act(config, spec, u, &act(config, spec, w, v)?)?;
    let wu = act(config, spec, w, &act(config, spec, u, v)?)?;
    Ok(lhs.sub(&uw).add(&wu.scale(&Scalar::from_int(sign))))
}

/// A triple on which the module axiom fails.
#[derive(Debug, Clone)]
pub struct RepFailure {
    pub u: BasisElt,
    pub w: BasisElt,
    pub v: ModuleBasisVector,
    pub residual: ModuleVector,
}

#[derive(Debug, Clone)]
pub struct RepSweep {
    pub checked: usize,
    pub special_cases: usize,
    pub failures: Vec<RepFailure>,
}

/// Exhaustive module-axiom check: every pair of basis symbols with
/// coordinates in `[-op_radius, op_radius]` (including `c`) on every basis
/// vector with coordinates in `[-vec_radius, vec_radius]`.
pub fn rep_sweep(
    config: &AlgebraConfig,
    spec: &ModuleSpec,
    op_radius: HalfInt,
    vec_radius: HalfInt,
) -> RepSweep {
    let ops = crate::algebra::box_basis(config, op_radius);
    let vecs = box_vectors(config, spec.family(), vec_radius);
    let elems: Vec<AlgebraElement> = ops.iter().cloned().map(AlgebraElement::basis).collect();
    let (no, nv) = (ops.len(), vecs.len());
    let results: Vec<(bool, Option<RepFailure>)> = (0..no * no * nv)
        .into_par_iter()
        .map(|t| {
            let (i, j, k) = (t / (no * nv), (t / nv) % no, t % nv);
            let v = ModuleVector::basis(vecs[k].clone());
            let res = rep_residual(config, spec, &elems[i], &elems[j], &v)
                .expect("box vectors match the family");
            let special = hits_special_case(spec.family(), &ops[i], &ops[j], &vecs[k]);
            let fail = (!res.is_zero()).then(|| RepFailure {
                u: ops[i].clone(),
                w: ops[j].clone(),
                v: vecs[k].clone(),
                residual: res,
            });
            (special, fail)
        })
        .collect();
    RepSweep {
        checked: results.len(),
        special_cases: results.iter().filter(|(s, _)| *s).count(),
        failures: results.into_iter().filter_map(|(_, f)| f).collect(),
    }
}

/// Whether any action in the residual expansion passes through a
/// special-cased entry of the table (an index hitting `0`, `−μ`, `−λ` or
/// `−μ−λ`).
fn hits_special_case(family: Family, u: &BasisElt, w: &BasisElt, v: &ModuleBasisVector) -> bool {
    let distinguished = match family {
        Family::SA => return false,
        Family::SAPrime => family.index_parity(VecKind::X),
        Family::SBPrime => family.index_parity(VecKind::Y),
    };
    let (Some(a), Some(b)) = (u.index(), w.index()) else {
        return false;
    };
    let idx = &v.index;
    [idx.clone(), idx + a, idx + b, &(idx + a) + b]
        .iter()
        .any(|i| i.is_zero() && i.parity() == distinguished)
}

/// L₀-eigenvalue of a basis vector.
pub fn weight_of(config: &AlgebraConfig, spec: &ModuleSpec, v: &ModuleBasisVector) -> Scalar {
    let l0 = BasisElt::L(IndexVector::zero(config.rank()));
    act_basis(config, spec, &l0, v)
        .map(|r| r.coeff(v))
        .unwrap_or_default()
}

/// Truncation box `|coordinate| ≤ radius`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxSpec {
    radius: HalfInt,
}

impl BoxSpec {
    pub fn new(radius: HalfInt) -> Result<Self, RepError> {
        if radius < HalfInt::from_int(1) {
            return Err(RepError::RadiusTooSmall);
        }
        Ok(BoxSpec { radius })
    }

    pub fn int(radius: i64) -> Result<Self, RepError> {
        Self::new(HalfInt::from_int(radius))
    }

    pub fn radius(&self) -> HalfInt {
        self.radius
    }

    pub fn contains(&self, idx: &IndexVector) -> bool {
        idx.max_abs() <= self.radius
    }
}

/// All basis vectors of the family in a box, `x` first, then `y`.
pub fn box_vectors(config: &AlgebraConfig, family: Family, radius: HalfInt) -> Vec<ModuleBasisVector> {
    [VecKind::X, VecKind::Y]
        .into_iter()
        .flat_map(|kind| {
            config
                .box_indices(radius, family.index_parity(kind))
                .into_iter()
                .map(move |index| ModuleBasisVector { kind, index })
        })
        .collect()
}

/// Nonzero images of `v` under single operators whose target stays in the
/// box.
fn in_box_images(
    config: &AlgebraConfig,
    spec: &ModuleSpec,
    v: &ModuleBasisVector,
    bx: &BoxSpec,
) -> Vec<ModuleBasisVector> {
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let target_parity = v.parity() + parity;
        for t in config.box_indices(bx.radius(), target_parity) {
            let gi = &t - &v.index;
            let g = match parity {
                Parity::Even => BasisElt::L(gi),
                Parity::Odd => BasisElt::G(gi),
            };
            let img = act_basis(config, spec, &g, v).expect("valid basis vector");
            out.extend(img.terms().map(|(w, _)| w.clone()));
        }
    }
    out
}

/// Least set containing `seeds` that is closed under every `L_μ`, `G_λ`
/// mapping a box index to a box index. Since all weight spaces are lines the
/// result is a set of basis vectors.
pub fn closure(
    config: &AlgebraConfig,
    spec: &ModuleSpec,
    seeds: &BTreeSet<ModuleBasisVector>,
    bx: &BoxSpec,
) -> Result<BTreeSet<ModuleBasisVector>, RepError> {
    for s in seeds {
        s.validate(config, spec.family())?;
        if !bx.contains(&s.index) {
            return Err(RepError::OutsideBox(s.to_string()));
        }
    }
    let mut seen = seeds.clone();
    let mut work: Vec<ModuleBasisVector> = seeds.iter().cloned().collect();
    while let Some(v) = work.pop() {
        for w in in_box_images(config, spec, &v, bx) {
            if seen.insert(w.clone()) {
                work.push(w);
            }
        }
    }
    Ok(seen)
}

#[derive(Debug, Clone)]
pub struct SimplicityReport {
    pub box_size: usize,
    /// Closure of each basis vector in the box.
    pub closures: Vec<(ModuleBasisVector, BTreeSet<ModuleBasisVector>)>,
    /// Distinct proper closures: box-invariant subsets that may come from a
    /// submodule.
    pub candidates: Vec<BTreeSet<ModuleBasisVector>>,
}

impl SimplicityReport {
    pub fn box_simple(&self) -> bool {
        self.candidates.is_empty()
    }
}

pub fn simplicity_probe(
    config: &AlgebraConfig,
    spec: &ModuleSpec,
    bx: &BoxSpec,
) -> Result<SimplicityReport, RepError> {
    let all = box_vectors(config, spec.family(), bx.radius());
    let closures = all
        .par_iter()
        .map(|v| {
            let seed = BTreeSet::from([v.clone()]);
            closure(config, spec, &seed, bx).map(|c| (v.clone(), c))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut candidates: Vec<BTreeSet<ModuleBasisVector>> = Vec::new();
    for (_, c) in &closures {
        if c.len() < all.len() && !candidates.contains(c) {
            candidates.push(c.clone());
        }
    }
    Ok(SimplicityReport {
        box_size: all.len(),
        closures,
        candidates,
    })
}

#[derive(Debug, Clone)]
pub struct GhwReport {
    pub annihilated: bool,
    /// Cone operators whose action on the vector lands in the box.
    pub operators_checked: usize,
    pub counterexample: Option<(BasisElt, ModuleVector)>,
}

impl GhwReport {
    /// True when no cone operator reached the box, so the answer carries no
    /// information.
    pub fn vacuous(&self) -> bool {
        self.operators_checked == 0
    }
}

/// Tests whether every `L_μ`, `G_λ` with nonzero index in the `k`-cone of
/// `basis` annihilates `v`, restricted to operators whose targets lie in the
/// box. Operators are tried in order: `L` before `G`, then by coordinate sum
/// in `basis`.
pub fn ghw_probe(
    config: &AlgebraConfig,
    spec: &ModuleSpec,
    v: &ModuleVector,
    basis: &LatticeBasis,
    k: u32,
    bx: &BoxSpec,
) -> Result<GhwReport, RepError> {
    if v.is_zero() {
        return Err(RepError::ZeroVector);
    }
    for (b, _) in v.terms() {
        b.validate(config, spec.family())?;
        if !bx.contains(&b.index) {
            return Err(RepError::OutsideBox(b.to_string()));
        }
    }
    let mut candidates: BTreeSet<(u8, i64, BasisElt)> = BTreeSet::new();
    for (b, _) in v.terms() {
        for parity in [Parity::Even, Parity::Odd] {
            let cone = ConeSpec::new(basis.clone(), k, parity);
            for t in config.box_indices(bx.radius(), b.parity() + parity) {
                let gi = &t - &b.index;
                if gi.is_zero() || !cone_member(&gi, &cone)? {
                    continue;
                }
                let weight: i64 = change_of_coords(&gi, basis)?.iter().map(|c| c.twice()).sum();
                let elt = match parity {
                    Parity::Even => BasisElt::L(gi),
                    Parity::Odd => BasisElt::G(gi),
                };
                candidates.insert((u8::from(parity.is_odd()), weight, elt));
            }
        }
    }
    let checked = candidates.len();
    for (_, _, g) in candidates {
        let img = act(config, spec, &AlgebraElement::basis(g.clone()), v)?;
        if !img.is_zero() {
            return Ok(GhwReport {
                annihilated: false,
                operators_checked: checked,
                counterexample: Some((g, img)),
            });
        }
    }
    Ok(GhwReport {
        annihilated: true,
        operators_checked: checked,
        counterexample: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightRow {
    pub vector: ModuleBasisVector,
    pub weight: Scalar,
    pub parity: Parity,
    pub dim: u8,
}

/// Weight-space dimensions of the box quotient by an invariant set of basis
/// vectors.
pub fn quotient_dims(
    config: &AlgebraConfig,
    spec: &ModuleSpec,
    sub: &BTreeSet<ModuleBasisVector>,
    bx: &BoxSpec,
) -> Result<Vec<WeightRow>, RepError> {
    for s in sub {
        s.validate(config, spec.family())?;
        if !bx.contains(&s.index) {
            return Err(RepError::OutsideBox(s.to_string()));
        }
        if let Some(to) = in_box_images(config, spec, s, bx)
            .into_iter()
            .find(|w| !sub.contains(w))
        {
            return Err(RepError::NotInvariant {
                from: s.to_string(),
                to: to.to_string(),
            });
        }
    }
    Ok(box_vectors(config, spec.family(), bx.radius())
        .into_iter()
        .map(|v| WeightRow {
            weight: weight_of(config, spec, &v),
            parity: v.parity(),
            dim: u8::from(!sub.contains(&v)),
            vector: v,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> AlgebraConfig {
        AlgebraConfig::standard(2, vec![HalfInt::from_twice(1), HalfInt::ZERO]).unwrap()
    }

    fn sym(c: &AlgebraConfig, n: &str) -> Scalar {
        c.symbols().scalar(n).unwrap()
    }

    fn sa(c: &AlgebraConfig) -> ModuleSpec {
        ModuleSpec::symbolic(c, Family::SA).unwrap()
    }

    fn sb(c: &AlgebraConfig) -> ModuleSpec {
        ModuleSpec::symbolic(c, Family::SBPrime).unwrap()
    }

    #[test]
    fn sa_l_on_x() {
        let c = cfg();
        let r = act_basis(
            &c,
            &sa(&c),
            &BasisElt::L(c.even(&[1, 0]).unwrap()),
            &ModuleBasisVector::x(c.even(&[0, 1]).unwrap()),
        )
        .unwrap();
        let coeff = sym(&c, "a") + sym(&c, "d2") + sym(&c, "d1") * sym(&c, "b");
        assert_eq!(
            r,
            ModuleVector::term(coeff, ModuleBasisVector::x(c.even(&[1, 1]).unwrap()))
        );
    }

    #[test]
    fn sb_g_special_case() {
        let c = cfg();
        let lam = c.odd_twice(&[1, 2]).unwrap();
        let r = act_basis(
            &c,
            &sb(&c),
            &BasisElt::G(lam.clone()),
            &ModuleBasisVector::x(-&lam),
        )
        .unwrap();
        let coeff = c.embed(&lam) * Scalar::from_int(2) + sym(&c, "a'");
        assert_eq!(
            r,
            ModuleVector::term(coeff, ModuleBasisVector::y(IndexVector::zero(2)))
        );
    }

    #[test]
    fn center_acts_as_zero() {
        let c = cfg();
        for spec in [sa(&c), sb(&c), ModuleSpec::symbolic(&c, Family::SAPrime).unwrap()] {
            for v in box_vectors(&c, spec.family(), HalfInt::from_int(1)) {
                assert!(act_basis(&c, &spec, &BasisElt::C, &v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn parity_mismatch_is_rejected() {
        let c = cfg();
        let r = act_basis(
            &c,
            &sb(&c),
            &BasisElt::C,
            &ModuleBasisVector::x(IndexVector::zero(2)),
        );
        assert!(matches!(r, Err(RepError::ParityMismatch { .. })));
    }

    #[test]
    fn act_linearity() {
        let c = cfg();
        let spec = sa(&c);
        let x0 = ModuleVector::basis(ModuleBasisVector::x(IndexVector::zero(2)));
        let l0 = AlgebraElement::l(IndexVector::zero(2));
        assert_eq!(act(&c, &spec, &l0, &x0).unwrap(), x0.scale(&sym(&c, "a")));
        let g1 = AlgebraElement::l(c.even(&[1, 0]).unwrap());
        let g2 = AlgebraElement::l(c.even(&[0, 1]).unwrap());
        let both = act(&c, &spec, &g1.add(&g2), &x0).unwrap();
        let sep = act(&c, &spec, &g1, &x0)
            .unwrap()
            .add(&act(&c, &spec, &g2, &x0).unwrap());
        assert_eq!(both, sep);
        assert!(act(&c, &spec, &AlgebraElement::zero(), &x0).unwrap().is_zero());
    }

    #[test]
    fn gg_on_x_in_sa() {
        let c = cfg();
        let spec = sa(&c);
        let lam = AlgebraElement::g(c.odd_twice(&[1, 0]).unwrap());
        let eta = AlgebraElement::g(c.odd_twice(&[-3, 2]).unwrap());
        let v = ModuleVector::basis(ModuleBasisVector::x(c.even(&[1, -1]).unwrap()));
        assert!(rep_residual(&c, &spec, &lam, &eta, &v).unwrap().is_zero());
    }

    #[test]
    fn sb_edge_triple() {
        let c = cfg();
        let spec = sb(&c);
        let mu = AlgebraElement::l(c.even(&[1, 1]).unwrap());
        let lam_idx = c.odd_twice(&[1, -2]).unwrap();
        let lam = AlgebraElement::g(lam_idx.clone());
        let v = ModuleVector::basis(ModuleBasisVector::x(-&lam_idx));
        assert!(rep_residual(&c, &spec, &mu, &lam, &v).unwrap().is_zero());
        assert!(rep_residual(&c, &spec, &AlgebraElement::c(), &lam, &v)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn weights() {
        let c = cfg();
        let nu = c.even(&[1, -1]).unwrap();
        assert_eq!(
            weight_of(&c, &sa(&c), &ModuleBasisVector::x(nu.clone())),
            sym(&c, "a") + c.embed(&nu)
        );
        assert!(weight_of(&c, &sb(&c), &ModuleBasisVector::y(IndexVector::zero(2))).is_zero());
        let sap = ModuleSpec::symbolic(&c, Family::SAPrime).unwrap();
        assert!(weight_of(&c, &sap, &ModuleBasisVector::x(IndexVector::zero(2))).is_zero());
    }

    #[test]
    fn closure_examples() {
        let c = cfg();
        let y0 = ModuleBasisVector::y(IndexVector::zero(2));
        let seed = BTreeSet::from([y0.clone()]);
        let r = closure(&c, &sb(&c), &seed, &BoxSpec::int(2).unwrap()).unwrap();
        assert_eq!(r, seed);

        let x0 = BTreeSet::from([ModuleBasisVector::x(IndexVector::zero(2))]);
        let bx = BoxSpec::int(1).unwrap();
        let full = closure(&c, &sa(&c), &x0, &bx).unwrap();
        assert_eq!(full.len(), box_vectors(&c, Family::SA, HalfInt::from_int(1)).len());

        assert!(closure(&c, &sa(&c), &BTreeSet::new(), &bx).unwrap().is_empty());
    }

    #[test]
    fn simplicity_examples() {
        let c = cfg();
        let bx = BoxSpec::int(1).unwrap();
        let r = simplicity_probe(&c, &sb(&c), &bx).unwrap();
        assert_eq!(
            r.candidates,
            vec![BTreeSet::from([ModuleBasisVector::y(IndexVector::zero(2))])]
        );
        assert!(simplicity_probe(&c, &sa(&c), &bx).unwrap().box_simple());

        // s ∈ M, a = 0, b = 1/2: y₀ spans an invariant line.
        let c0 = AlgebraConfig::standard(2, vec![HalfInt::ZERO, HalfInt::ZERO]).unwrap();
        let spec = ModuleSpec::SA {
            a: Scalar::zero(),
            b: Scalar::from_ratio(1, 2),
        };
        let r = simplicity_probe(&c0, &spec, &bx).unwrap();
        assert!(r
            .candidates
            .contains(&BTreeSet::from([ModuleBasisVector::y(c0.odd_twice(&[0, 0]).unwrap())])));
    }

    #[test]
    fn ghw_examples() {
        let c = cfg();
        let bx = BoxSpec::int(4).unwrap();
        let x0 = ModuleVector::basis(ModuleBasisVector::x(IndexVector::zero(2)));
        let r = ghw_probe(&c, &sa(&c), &x0, &LatticeBasis::identity(2), 1, &bx).unwrap();
        assert!(!r.annihilated);
        let (op, img) = r.counterexample.unwrap();
        assert_eq!(op, BasisElt::L(c.even(&[1, 1]).unwrap()));
        let coeff = sym(&c, "a") + (sym(&c, "d1") + sym(&c, "d2")) * sym(&c, "b");
        assert_eq!(img.coeff(&ModuleBasisVector::x(c.even(&[1, 1]).unwrap())), coeff);

        assert_eq!(
            ghw_probe(&c, &sa(&c), &ModuleVector::zero(), &LatticeBasis::identity(2), 1, &bx)
                .unwrap_err(),
            RepError::ZeroVector
        );

        let y0 = ModuleVector::basis(ModuleBasisVector::y(IndexVector::zero(2)));
        for k in 0..=2 {
            let r = ghw_probe(&c, &sb(&c), &y0, &LatticeBasis::identity(2), k, &bx).unwrap();
            assert!(r.annihilated && !r.vacuous());
        }
    }

    #[test]
    fn quotient_examples() {
        let c = cfg();
        let bx = BoxSpec::int(2).unwrap();
        let y0 = ModuleBasisVector::y(IndexVector::zero(2));
        let rows = quotient_dims(&c, &sb(&c), &BTreeSet::from([y0.clone()]), &bx).unwrap();
        for r in &rows {
            let expect = u8::from(r.vector != y0);
            assert_eq!(r.dim, expect);
        }
        let rows = quotient_dims(&c, &sb(&c), &BTreeSet::new(), &bx).unwrap();
        assert!(rows.iter().all(|r| r.dim == 1));
        let all: BTreeSet<_> = box_vectors(&c, Family::SBPrime, bx.radius()).into_iter().collect();
        let rows = quotient_dims(&c, &sb(&c), &all, &bx).unwrap();
        assert!(rows.iter().all(|r| r.dim == 0));

        let x0 = BTreeSet::from([ModuleBasisVector::x(IndexVector::zero(2))]);
        assert!(matches!(
            quotient_dims(&c, &sa(&c), &x0, &bx),
            Err(RepError::NotInvariant { .. })
        ));
    }
}
