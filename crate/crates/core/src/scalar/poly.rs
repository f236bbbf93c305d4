//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept sorted by a lexicographic monomial order in which
//! indeterminate 0 is the most significant. Zero coefficients are never
//! stored, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Exponent vector, dense in the indeterminate index, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(index: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut v: SmallVec<[u32; 6]> = SmallVec::from_elem(0, index + 1);
        v[index] = exp;
        Monomial(v)
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Monomial(exps.iter().copied().collect());
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.0.clone();
        for (o, e) in out.iter_mut().zip(short.0.iter()) {
            *o += *e;
        }
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = self.0.clone();
        for (o, e) in out.iter_mut().zip(other.0.iter()) {
            if *o < *e {
                return None;
            }
            *o -= *e;
        }
        let mut m = Monomial(out);
        m.trim();
        Some(m)
    }

    fn without_var(&self, var: usize) -> Monomial {
        let mut out = self.0.clone();
        if let Some(e) = out.get_mut(var) {
            *e = 0;
        }
        let mut m = Monomial(out);
        m.trim();
        m
    }

    fn with_var(&self, var: usize, exp: u32) -> Monomial {
        if exp == 0 {
            return self.clone();
        }
        let mut out = self.0.clone();
        if out.len() <= var {
            out.resize(var + 1, 0);
        }
        out[var] += exp;
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Polynomial in `ℚ[t_0, t_1, …]`. Terms are sorted descending, so the
/// first term is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(index: usize) -> Self {
        Poly {
            terms: vec![(Monomial::var(index, 1), BigRational::one())],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Poly {
            terms: acc.into_iter().rev().collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Constant term value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    fn mul_term(&self, mono: &Monomial, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        // Multiplying by a monomial preserves the order of the terms.
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * k))
                .collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        Poly::from_terms(self.terms.iter().flat_map(|(ma, ca)| {
            other
                .terms
                .iter()
                .map(move |(mb, cb)| (ma.mul(mb), ca * cb))
        }))
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lead_m, lead_c) = divisor.leading()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.div(lead_m)?;
            let qc = rc / lead_c;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Smallest indeterminate index occurring in the polynomial.
    pub fn min_var(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|(m, _)| m.exponents().iter().position(|&e| e > 0))
            .min()
    }

    /// Indeterminates occurring with positive exponent.
    pub fn vars(&self) -> Vec<usize> {
        let mut seen = Vec::new();
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 && !seen.contains(&i) {
                    seen.push(i);
                }
            }
        }
        seen.sort_unstable();
        seen
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Splits into coefficients of `var^0, var^1, …`; each coefficient is
    /// free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.without_var(var), c.clone()));
        }
        // Removing a variable from a sorted list keeps it sorted, because the
        // bucket fixes that variable's exponent.
        buckets.into_iter().map(|terms| Poly { terms }).collect()
    }

    pub fn from_coeffs_in(var: usize, coeffs: &[Poly]) -> Poly {
        Poly::from_terms(coeffs.iter().enumerate().flat_map(|(d, p)| {
            p.terms
                .iter()
                .map(move |(m, c)| (m.with_var(var, d as u32), c.clone()))
        }))
    }

    /// Evaluates with every indeterminate bound by `lookup`. Returns the index
    /// of the first unbound indeterminate on failure.
    pub fn evaluate<F>(&self, lookup: F) -> Result<BigRational, usize>
    where
        F: Fn(usize) -> Option<BigRational>,
    {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let val = lookup(i).ok_or(i)?;
                t *= num_traits::pow(val, e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    pub fn has_negative_leading(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_negative())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Monic gcd of two polynomials over ℚ. `gcd(0, 0) = 0`.
///
/// Recursive primitive-remainder-sequence algorithm: the polynomials are
/// viewed as univariate in their smallest indeterminate with coefficients in
/// the ring of the remaining ones.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let (va, vb) = (a.vars(), b.vars());
    // A variable present on one side only cannot divide the gcd.
    if let Some(&x) = va.iter().find(|x| !vb.contains(x)) {
        return gcd(&content(&a.coeffs_in(x)), b);
    }
    if let Some(&x) = vb.iter().find(|x| !va.contains(x)) {
        return gcd(a, &content(&b.coeffs_in(x)));
    }
    let bounds: Vec<(u32, usize)> = va.iter().map(|&x| (degree_bound(a, b, x), x)).collect();
    let &(bound, var) = bounds.iter().min().expect("shared variables");
    let ca = a.coeffs_in(var);
    let cb = b.coeffs_in(var);
    if bound == 0 {
        let all: Vec<Poly> = ca.into_iter().chain(cb).collect();
        return content(&all);
    }
    for (p, q) in [(a, b), (b, a)] {
        if q.degree_in(var) == bound && p.div_exact(q).is_some() {
            return q.monic();
        }
    }
    let cont_a = content(&ca);
    let cont_b = content(&cb);
    let g_cont = gcd(&cont_a, &cont_b);
    let pa = divide_all(&ca, &cont_a);
    let pb = divide_all(&cb, &cont_b);
    let g = primitive_prs(primitive_part(pa), primitive_part(pb));
    Poly::from_coeffs_in(var, &g).mul(&g_cont).monic()
}

/// Upper bound on the degree of `gcd(a, b)` in `var`.
///
/// Every other indeterminate is specialized to an integer such that both
/// leading coefficients in `var` survive; the image of the gcd then divides
/// the univariate gcd of the images.
fn degree_bound(a: &Poly, b: &Poly, var: usize) -> u32 {
    let ca = a.coeffs_in(var);
    let cb = b.coeffs_in(var);
    let trivial = (ca.len().min(cb.len()) - 1) as u32;
    for attempt in 0u64..8 {
        let value = |i: usize| {
            let h = (attempt * 7919 + i as u64 * 104_729 + 17).wrapping_mul(2_654_435_761) % 997;
            Some(BigRational::from_integer(BigInt::from(h as i64 + 2)))
        };
        let image = |c: &[Poly]| -> Vec<BigRational> {
            c.iter()
                .map(|p| p.evaluate(value).expect("all indeterminates bound"))
                .collect()
        };
        let (ua, ub) = (image(&ca), image(&cb));
        if ua.last().is_some_and(Zero::is_zero) || ub.last().is_some_and(Zero::is_zero) {
            continue;
        }
        return univariate_gcd_degree(ua, ub) as u32;
    }
    trivial
}

/// Degree of the gcd of two univariate polynomials over `ℚ` (coefficient `i`
/// multiplies `x^i`), neither of them zero.
fn univariate_gcd_degree(a: Vec<BigRational>, b: Vec<BigRational>) -> usize {
    let trim = |p: &mut Vec<BigRational>| {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    };
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = b.last().expect("nonempty").clone();
        while a.len() >= b.len() {
            let k = a.last().expect("nonempty") / &lb;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] -= &k * c;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

/// Monic gcd of a list of polynomials.
fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_all(coeffs: &[Poly], by: &Poly) -> Vec<Poly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(by).expect("content divides every coefficient"))
        .collect()
}

fn trim_univariate(p: &mut Vec<Poly>) {
    while p.last().is_some_and(Poly::is_zero) {
        p.pop();
    }
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients
/// (coefficient `i` multiplies `var^i`).
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    trim_univariate(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            r[i + shift] = r[i + shift].sub(&t);
        }
        trim_univariate(&mut r);
    }
    r
}

/// Positive rational `q` such that every coefficient of `p` divided by `q` is
/// an integer with overall gcd 1.
fn rational_content(p: &[Poly]) -> BigRational {
    use num_integer::Integer;
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in p.iter().flat_map(|c| c.terms()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        BigRational::one()
    } else {
        BigRational::new(num, den)
    }
}

fn primitive_part(p: Vec<Poly>) -> Vec<Poly> {
    let c = content(&p);
    let p = if c.is_one() { p } else { divide_all(&p, &c) };
    let q = rational_content(&p);
    if q.is_one() {
        return p;
    }
    let inv = q.recip();
    p.iter().map(|c| c.scale(&inv)).collect()
}

fn primitive_prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return primitive_part(b);
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        a = b;
        b = primitive_part(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn z() -> Poly {
        Poly::var(2)
    }

    #[test]
    fn monomial_order_is_lex() {
        let a = Monomial::from_exponents(&[1, 0]);
        let b = Monomial::from_exponents(&[0, 5]);
        assert!(a > b);
        assert!(Monomial::var(1, 1) > Monomial::one());
        assert_eq!(Monomial::from_exponents(&[2, 0, 0]), Monomial::var(0, 2));
    }

    #[test]
    fn arithmetic_basics() {
        let p = x().add(&y());
        let sq = p.mul(&p);
        let expect = x()
            .pow(2)
            .add(&x().mul(&y()).scale(&q(2)))
            .add(&y().pow(2));
        assert_eq!(sq, expect);
        assert!(p.sub(&p).is_zero());
        assert_eq!(sq.div_exact(&p), Some(p.clone()));
        assert_eq!(x().div_exact(&y()), None);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = x().add(&y());
        let g = x().sub(&z().scale(&q(3)));
        let h = y().mul(&z()).add(&Poly::one());
        let a = f.mul(&g);
        let b = f.mul(&h).scale(&q(5));
        assert_eq!(gcd(&a, &b), f.monic());
        assert!(gcd(&g, &h).is_one());
    }

    #[test]
    fn gcd_with_powers_and_content() {
        // (x - 1)^2 (y + 2)  and  (x - 1)(y + 2)^3 x
        let u = x().sub(&Poly::one());
        let v = y().add(&Poly::constant(q(2)));
        let a = u.pow(2).mul(&v);
        let b = u.mul(&v.pow(3)).mul(&x());
        assert_eq!(gcd(&a, &b), u.mul(&v).monic());
    }

    #[test]
    fn gcd_variable_only_in_one_argument() {
        let a = x().mul(&y().add(&Poly::one()));
        let b = y().add(&Poly::one()).mul(&z());
        assert_eq!(gcd(&a, &b), y().add(&Poly::one()));
    }

    #[test]
    fn coeffs_round_trip() {
        let p = x().pow(2).mul(&y()).add(&x().mul(&z())).add(&y());
        let cs = p.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(Poly::from_coeffs_in(0, &cs), p);
    }
}
