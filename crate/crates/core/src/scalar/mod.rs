//! Exact arithmetic in the rational function field `ℚ(t_1, …, t_m)`.
//!
//! A [`Scalar`] is always stored in canonical form: numerator and
//! denominator are coprime, the denominator is monic with respect to the
//! lexicographic term order, and zero is `0/1`. Equality of scalars is
//! therefore structural.

mod poly;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use poly::{gcd, Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value assigned to indeterminate `{0}`")]
    MissingAssignment(String),
    #[error("denominator vanishes under the assignment")]
    VanishingDenominator,
    #[error("indeterminate `{0}` declared twice")]
    DuplicateIndeterminate(String),
    #[error("`{0}` is not a valid indeterminate name")]
    InvalidName(String),
}

/// Declared indeterminates of a session, in canonical order.
///
/// Position in the table is the variable index used by [`Poly`], so the table
/// is fixed once created.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbols {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

/// Names reserved by the element grammar.
pub const RESERVED_NAMES: &[&str] = &["c", "L", "G", "x", "y"];

impl Symbols {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, ScalarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Symbols {
            names: Vec::new(),
            lookup: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if !is_valid_name(&name) || RESERVED_NAMES.contains(&name.as_str()) {
                return Err(ScalarError::InvalidName(name));
            }
            if out.lookup.contains_key(&name) {
                return Err(ScalarError::DuplicateIndeterminate(name));
            }
            out.lookup.insert(name.clone(), out.names.len());
            out.names.push(name);
        }
        Ok(Arc::new(out))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The indeterminate called `name` as a scalar.
    pub fn scalar(&self, name: &str) -> Option<Scalar> {
        self.index_of(name).map(Scalar::var)
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !(first.is_ascii_alphabetic() || first == '_') {
        return false;
    }
    let body = name.trim_end_matches('\'');
    body.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An element of `ℚ(t_1, …, t_m)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn var(index: usize) -> Self {
        Scalar::from_poly(Poly::var(index))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::from_poly(Poly::constant(q))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// Canonicalizes `num / den`.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            return Scalar {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_den(num, den)
    }

    fn normalize_den(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Rational value when this scalar does not depend on any indeterminate.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: i32) -> Result<Scalar, ScalarError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Ok(Scalar {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, k: &BigRational) -> Scalar {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    /// Indeterminates this scalar depends on.
    pub fn vars(&self) -> Vec<usize> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Exact value under a full assignment of the occurring indeterminates.
    pub fn evaluate(
        &self,
        symbols: &Symbols,
        assignment: &HashMap<String, BigRational>,
    ) -> Result<BigRational, ScalarError> {
        let lookup = |i: usize| assignment.get(symbols.name(i)).cloned();
        let missing = |i: usize| ScalarError::MissingAssignment(symbols.name(i).to_string());
        let den = self.den.evaluate(lookup).map_err(missing)?;
        if den.is_zero() {
            return Err(ScalarError::VanishingDenominator);
        }
        let num = self.num.evaluate(lookup).map_err(missing)?;
        Ok(num / den)
    }

    /// Substitutes rationals for some indeterminates, leaving the rest
    /// symbolic.
    pub fn specialize(&self, values: &HashMap<usize, BigRational>) -> Result<Scalar, ScalarError> {
        let subst = |p: &Poly| -> Poly {
            Poly::from_terms(p.terms().iter().map(|(m, c)| {
                let mut coeff = c.clone();
                let mut exps: Vec<u32> = m.exponents().to_vec();
                for (i, e) in exps.iter_mut().enumerate() {
                    if *e > 0 {
                        if let Some(v) = values.get(&i) {
                            coeff *= num_traits::pow(v.clone(), *e as usize);
                            *e = 0;
                        }
                    }
                }
                (Monomial::from_exponents(&exps), coeff)
            }))
        };
        Scalar::from_parts(subst(&self.num), subst(&self.den))
            .map_err(|_| ScalarError::VanishingDenominator)
    }

    pub fn display<'a>(&'a self, symbols: &'a Symbols) -> ScalarDisplay<'a> {
        ScalarDisplay {
            scalar: self,
            symbols,
        }
    }

    /// Whether the printed form is a single signed product without `+`.
    pub fn is_monomial_like(&self) -> bool {
        self.den.is_one() && self.num.terms().len() <= 1
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        // With b = g·b′ and d = g·d′, the sum is (a·d′ + c·b′)/(g·b′·d′) and
        // only a factor of g can cancel, since both inputs are reduced.
        let g = gcd(&self.den, &rhs.den);
        let bp = self.den.div_exact(&g).expect("gcd divides");
        let dp = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&dp).add(&rhs.num.mul(&bp));
        if num.is_zero() {
            return Scalar::zero();
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        Scalar::normalize_den(num, g.mul(&bp).mul(&dp))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        // Cross-cancel so that the product of two canonical fractions needs
        // no further reduction.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = div(&self.num, &g1).mul(&div(&rhs.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&rhs.den, &g1));
        Scalar::normalize_den(num, den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

pub struct ScalarDisplay<'a> {
    scalar: &'a Scalar,
    symbols: &'a Symbols,
}

/// Prints a rational as `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn format_poly(p: &Poly, symbols: &Symbols) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                let name = symbols.name(v);
                if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if mono.is_empty() {
            out.push_str(&format_rational(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&format_rational(&abs));
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_poly(&self.scalar.num, self.symbols);
        if self.scalar.den.is_one() {
            write!(f, "{num}")
        } else {
            let den = format_poly(&self.scalar.den, self.symbols);
            write!(f, "({num})/({den})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms() -> Arc<Symbols> {
        Symbols::new(["d1", "d2", "a", "b", "a'"]).unwrap()
    }

    fn v(s: &Symbols, name: &str) -> Scalar {
        s.scalar(name).unwrap()
    }

    #[test]
    fn add_cancels() {
        let s = syms();
        let (d1, d2) = (v(&s, "d1"), v(&s, "d2"));
        assert_eq!(&(&d1 + &d2) + &(-&d2), d1);
    }

    #[test]
    fn exact_factor_cancellation() {
        let s = syms();
        let (d1, d2) = (v(&s, "d1"), v(&s, "d2"));
        let top = &(&d1 * &d1) - &(&d2 * &d2);
        let bottom = &d1 - &d2;
        assert_eq!(top.checked_div(&bottom).unwrap(), &d1 + &d2);
    }

    #[test]
    fn central_coefficient_at_two() {
        // (1/12)(mu^3 - mu) at mu = 2 is 1/2.
        let mu = Scalar::from_int(2);
        let val = Scalar::from_ratio(1, 12) * (&(&mu * &mu) * &mu - &mu);
        assert_eq!(val, Scalar::from_ratio(1, 2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let s = syms();
        assert_eq!(
            v(&s, "a").checked_div(&Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
        let d1 = v(&s, "d1");
        assert_eq!(
            Scalar::one().checked_div(&(&d1 - &d1)),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn zero_test_is_structural() {
        let s = syms();
        let (d1, d2) = (v(&s, "d1"), v(&s, "d2"));
        assert!((&d1 - &d1).is_zero());
        assert!(!(&(&d1 + &d2) - &d2).is_zero());
        assert_eq!(&d1 - &d1, Scalar::zero());
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let s = syms();
        let (d1, a) = (v(&s, "d1"), v(&s, "a"));
        let x = Scalar::one()
            .checked_div(&(Scalar::from_int(3) * &d1 - Scalar::from_int(6) * &a))
            .unwrap();
        let lc = x.denominator().leading_coeff().unwrap();
        assert!(lc.is_one());
        assert_eq!(x.numerator(), &Poly::constant(BigRational::new(1.into(), 3.into())));
    }

    #[test]
    fn evaluate_examples() {
        let s = syms();
        let d1 = v(&s, "d1");
        let mut asg = HashMap::new();
        asg.insert("d1".to_string(), BigRational::from_integer(1.into()));
        assert!((&d1 - &Scalar::one()).evaluate(&s, &asg).unwrap().is_zero());

        let expr = &v(&s, "a") + &(&d1 * &v(&s, "b"));
        let mut asg = HashMap::new();
        asg.insert("a".to_string(), BigRational::from_integer(0.into()));
        asg.insert("b".to_string(), BigRational::from_integer(1.into()));
        asg.insert("d1".to_string(), BigRational::from_integer(3.into()));
        assert_eq!(
            expr.evaluate(&s, &asg).unwrap(),
            BigRational::from_integer(3.into())
        );

        // (1/3)((d1/2)^2 - 1/4) at d1 = 1
        let half = &d1 * &Scalar::from_ratio(1, 2);
        let gg = Scalar::from_ratio(1, 3) * (&half * &half - Scalar::from_ratio(1, 4));
        let mut asg = HashMap::new();
        asg.insert("d1".to_string(), BigRational::from_integer(1.into()));
        assert!(gg.evaluate(&s, &asg).unwrap().is_zero());
    }

    #[test]
    fn evaluate_errors() {
        let s = syms();
        let d1 = v(&s, "d1");
        let asg = HashMap::new();
        assert_eq!(
            d1.evaluate(&s, &asg),
            Err(ScalarError::MissingAssignment("d1".into()))
        );
        let inv = Scalar::one().checked_div(&(&d1 - &Scalar::one())).unwrap();
        let mut asg = HashMap::new();
        asg.insert("d1".to_string(), BigRational::from_integer(1.into()));
        assert_eq!(inv.evaluate(&s, &asg), Err(ScalarError::VanishingDenominator));
    }

    #[test]
    fn symbols_are_validated() {
        assert!(matches!(
            Symbols::new(["d1", "d1"]),
            Err(ScalarError::DuplicateIndeterminate(_))
        ));
        assert!(matches!(Symbols::new(["c"]), Err(ScalarError::InvalidName(_))));
        assert!(matches!(Symbols::new(["1x"]), Err(ScalarError::InvalidName(_))));
        assert!(Symbols::new(["a'", "b''"]).is_ok());
    }

    #[test]
    fn display_forms() {
        let s = syms();
        let (d1, d2) = (v(&s, "d1"), v(&s, "d2"));
        let e = &(&d1 * &d1) * &Scalar::from_int(2) - &(&d2 * &Scalar::from_ratio(3, 4));
        assert_eq!(e.display(&s).to_string(), "2*d1^2 - 3/4*d2");
        let f = Scalar::one().checked_div(&(&d1 + &d2)).unwrap();
        assert_eq!(f.display(&s).to_string(), "(1)/(d1 + d2)");
        assert_eq!(Scalar::from_ratio(-1, 2).display(&s).to_string(), "-1/2");
    }
}
