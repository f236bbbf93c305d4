//! Text syntax for scalars, algebra elements and module vectors.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? int)?
//! atom  := int | name | '(' expr ')' | 'c' | ('L' | 'G' | 'x' | 'y') index
//! index := '[' half (',' half)* ']'      half := '-'? int ('/' '2')?
//! ```
//!
//! The printers below emit this syntax, and parsing a printed canonical
//! value returns the same value.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{AlgebraElement, BasisElt};
use crate::lattice::{AlgebraConfig, HalfInt, IndexVector, Parity};
use crate::repmod::{Family, ModuleBasisVector, ModuleVector, VecKind};
use crate::scalar::{Scalar, ScalarError, Symbols};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: &'static str },
    #[error("unknown indeterminate `{0}`")]
    UnknownName(String),
    #[error("{0}")]
    Parity(String),
    #[error("{0}")]
    Type(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

/// Result of parsing an arbitrary expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Scalar(Scalar),
    Algebra(AlgebraElement),
    Module(ModuleVector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Name(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                it.next();
            }
            while let Some(&(_, '\'')) = it.peek() {
                s.push('\'');
                it.next();
            }
            out.push((pos, Tok::Name(s)));
        } else if "+-*/^()[],".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            it.next();
        } else {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::Unexpected {
                    found: format!("`{ch}`"),
                    expected: "an expression",
                },
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    symbols: &'a Symbols,
    config: Option<&'a AlgebraConfig>,
    family: Option<Family>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { pos, kind }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.err(
            self.pos(),
            ParseErrorKind::Unexpected {
                found: self.peek().to_string(),
                expected,
            },
        )
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(match c {
                ')' => "`)`",
                ']' => "`]`",
                '[' => "`[`",
                _ => "a delimiter",
            }))
        }
    }

    fn expr(&mut self) -> Result<Parsed, ParseError> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Tok::Sym('+') => 1,
                Tok::Sym('-') => -1,
                _ => return Ok(acc),
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.term()?;
            acc = self.combine_add(pos, acc, rhs, sign)?;
        }
    }

    fn term(&mut self) -> Result<Parsed, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym(c @ ('*' | '/')) => *c,
                _ => return Ok(acc),
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.unary()?;
            acc = if op == '*' {
                self.combine_mul(pos, acc, rhs)?
            } else {
                self.combine_div(pos, acc, rhs)?
            };
        }
    }

    fn unary(&mut self) -> Result<Parsed, ParseError> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            let v = self.unary()?;
            return Ok(negate(v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Parsed, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let neg = if *self.peek() == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(e) = self.peek().clone() else {
            return Err(self.unexpected("an integer exponent"));
        };
        let epos = self.pos();
        self.bump();
        let e: i32 = i32::try_from(&e).map_err(|_| {
            self.err(
                epos,
                ParseErrorKind::Type("exponent out of range".to_string()),
            )
        })?;
        let e = if neg { -e } else { e };
        match base {
            Parsed::Scalar(s) => s
                .pow(e)
                .map(Parsed::Scalar)
                .map_err(|k| self.err(pos, k.into())),
            _ => Err(self.err(
                pos,
                ParseErrorKind::Type("only scalars can be raised to a power".to_string()),
            )),
        }
    }

    fn atom(&mut self) -> Result<Parsed, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Parsed::Scalar(Scalar::from_rational(n.into()))),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Name(name) => match name.as_str() {
                "c" => {
                    self.config_or_err(pos)?;
                    Ok(Parsed::Algebra(AlgebraElement::c()))
                }
                "L" | "G" | "x" | "y" => self.generator(pos, &name),
                _ => self
                    .symbols
                    .scalar(&name)
                    .map(Parsed::Scalar)
                    .ok_or_else(|| self.err(pos, ParseErrorKind::UnknownName(name))),
            },
            t => {
                self.at -= usize::from(t != Tok::End);
                Err(self.unexpected("an expression"))
            }
        }
    }

    fn config_or_err(&self, pos: usize) -> Result<&'a AlgebraConfig, ParseError> {
        self.config.ok_or_else(|| {
            self.err(
                pos,
                ParseErrorKind::Type("algebra symbols need an algebra configuration".to_string()),
            )
        })
    }

    fn generator(&mut self, pos: usize, name: &str) -> Result<Parsed, ParseError> {
        let config = self.config_or_err(pos)?;
        let ipos = self.pos();
        let coords = self.index_literal()?;
        let (parity, kind) = match name {
            "L" => (Parity::Even, None),
            "G" => (Parity::Odd, None),
            _ => {
                let family = self.family.ok_or_else(|| {
                    self.err(
                        pos,
                        ParseErrorKind::Type("module vectors need a module family".to_string()),
                    )
                })?;
                let kind = if name == "x" { VecKind::X } else { VecKind::Y };
                (family.index_parity(kind), Some(kind))
            }
        };
        let index = config.index(coords, parity).map_err(|e| {
            self.err(
                ipos,
                ParseErrorKind::Parity(format!("{name} index: {e}")),
            )
        })?;
        Ok(match (name, kind) {
            ("L", _) => Parsed::Algebra(AlgebraElement::l(index)),
            ("G", _) => Parsed::Algebra(AlgebraElement::g(index)),
            (_, Some(kind)) => Parsed::Module(ModuleVector::basis(ModuleBasisVector { kind, index })),
            _ => unreachable!(),
        })
    }

    fn index_literal(&mut self) -> Result<Vec<HalfInt>, ParseError> {
        self.expect('[')?;
        let mut out = vec![self.half()?];
        while *self.peek() == Tok::Sym(',') {
            self.bump();
            out.push(self.half()?);
        }
        self.expect(']')?;
        Ok(out)
    }

    fn half(&mut self) -> Result<HalfInt, ParseError> {
        let pos = self.pos();
        let neg = if *self.peek() == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = self.bump() else {
            self.at -= 1;
            return Err(self.unexpected("an index coordinate"));
        };
        let d = if *self.peek() == Tok::Sym('/') {
            self.bump();
            match self.bump() {
                Tok::Int(d) => d,
                _ => {
                    self.at -= 1;
                    return Err(self.unexpected("a denominator"));
                }
            }
        } else {
            BigInt::from(1)
        };
        let bad = || {
            ParseError {
                pos,
                kind: ParseErrorKind::Type("index coordinates must be half-integers".to_string()),
            }
        };
        let n = i64::try_from(&n).map_err(|_| bad())?;
        let d = i64::try_from(&d).map_err(|_| bad())?;
        let h = HalfInt::from_ratio(n, d).ok_or_else(bad)?;
        Ok(if neg { -h } else { h })
    }

    fn combine_add(&self, pos: usize, a: Parsed, b: Parsed, sign: i64) -> Result<Parsed, ParseError> {
        let k = Scalar::from_int(sign);
        Ok(match (a, b) {
            (Parsed::Scalar(x), Parsed::Scalar(y)) => Parsed::Scalar(&x + &(&y * &k)),
            (Parsed::Algebra(x), Parsed::Algebra(y)) => Parsed::Algebra(x.add(&y.scale(&k))),
            (Parsed::Module(x), Parsed::Module(y)) => Parsed::Module(x.add(&y.scale(&k))),
            _ => {
                return Err(self.err(
                    pos,
                    ParseErrorKind::Type("cannot add values of different kinds".to_string()),
                ))
            }
        })
    }

    fn combine_mul(&self, pos: usize, a: Parsed, b: Parsed) -> Result<Parsed, ParseError> {
        Ok(match (a, b) {
            (Parsed::Scalar(x), Parsed::Scalar(y)) => Parsed::Scalar(&x * &y),
            (Parsed::Scalar(k), Parsed::Algebra(e)) | (Parsed::Algebra(e), Parsed::Scalar(k)) => {
                Parsed::Algebra(e.scale(&k))
            }
            (Parsed::Scalar(k), Parsed::Module(v)) | (Parsed::Module(v), Parsed::Scalar(k)) => {
                Parsed::Module(v.scale(&k))
            }
            _ => {
                return Err(self.err(
                    pos,
                    ParseErrorKind::Type("only scalar multiples are allowed".to_string()),
                ))
            }
        })
    }

    fn combine_div(&self, pos: usize, a: Parsed, b: Parsed) -> Result<Parsed, ParseError> {
        let Parsed::Scalar(d) = b else {
            return Err(self.err(
                pos,
                ParseErrorKind::Type("the divisor must be a scalar".to_string()),
            ));
        };
        let inv = d.recip().map_err(|e| self.err(pos, e.into()))?;
        self.combine_mul(pos, a, Parsed::Scalar(inv))
    }
}

fn negate(v: Parsed) -> Parsed {
    let m = Scalar::from_int(-1);
    match v {
        Parsed::Scalar(s) => Parsed::Scalar(-s),
        Parsed::Algebra(e) => Parsed::Algebra(e.scale(&m)),
        Parsed::Module(v) => Parsed::Module(v.scale(&m)),
    }
}

fn run(
    symbols: &Symbols,
    config: Option<&AlgebraConfig>,
    family: Option<Family>,
    text: &str,
) -> Result<Parsed, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        symbols,
        config,
        family,
    };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(v)
}

/// Parses an expression of any kind. `x[..]`/`y[..]` require `family`.
pub fn parse_element(
    config: &AlgebraConfig,
    family: Option<Family>,
    text: &str,
) -> Result<Parsed, ParseError> {
    run(config.symbols(), Some(config), family, text)
}

pub fn parse_scalar(symbols: &Symbols, text: &str) -> Result<Scalar, ParseError> {
    match run(symbols, None, None, text)? {
        Parsed::Scalar(s) => Ok(s),
        _ => unreachable!("generators are rejected without a configuration"),
    }
}

impl Scalar {
    pub fn parse(symbols: &Symbols, text: &str) -> Result<Scalar, ParseError> {
        parse_scalar(symbols, text)
    }
}

fn kind_error(what: &str) -> ParseError {
    ParseError {
        pos: 0,
        kind: ParseErrorKind::Type(format!("expected {what}")),
    }
}

pub fn parse_algebra(config: &AlgebraConfig, text: &str) -> Result<AlgebraElement, ParseError> {
    match parse_element(config, None, text)? {
        Parsed::Algebra(e) => Ok(e),
        Parsed::Scalar(s) if s.is_zero() => Ok(AlgebraElement::zero()),
        _ => Err(kind_error("an algebra element")),
    }
}

pub fn parse_module(
    config: &AlgebraConfig,
    family: Family,
    text: &str,
) -> Result<ModuleVector, ParseError> {
    match parse_element(config, Some(family), text)? {
        Parsed::Module(v) => Ok(v),
        Parsed::Scalar(s) if s.is_zero() => Ok(ModuleVector::zero()),
        _ => Err(kind_error("a module vector")),
    }
}

/// Parses a bare index literal such as `[1,-1/2]` and checks it against
/// `parity`.
pub fn parse_index(config: &AlgebraConfig, parity: Parity, text: &str) -> Result<IndexVector, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        symbols: config.symbols(),
        config: Some(config),
        family: None,
    };
    let pos = p.pos();
    let coords = p.index_literal()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    config
        .index(coords, parity)
        .map_err(|e| p.err(pos, ParseErrorKind::Parity(e.to_string())))
}

fn coefficient_prefix(c: &Scalar, symbols: &Symbols) -> String {
    if c.is_one() {
        return String::new();
    }
    if (-c).is_one() {
        return "-".to_string();
    }
    let text = c.display(symbols).to_string();
    if c.denominator().is_one() && c.numerator().terms().len() == 1 {
        format!("{text}*")
    } else {
        format!("({text})*")
    }
}

fn join_terms(parts: Vec<String>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        match (i, p.strip_prefix('-')) {
            (0, _) => out.push_str(&p),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&p);
            }
        }
    }
    out
}

pub fn print_scalar(s: &Scalar, symbols: &Symbols) -> String {
    s.display(symbols).to_string()
}

pub fn print_algebra(e: &AlgebraElement, symbols: &Symbols) -> String {
    join_terms(
        e.terms()
            .map(|(b, c)| format!("{}{b}", coefficient_prefix(c, symbols)))
            .collect(),
    )
}

pub fn print_module(v: &ModuleVector, symbols: &Symbols) -> String {
    join_terms(
        v.terms()
            .map(|(b, c)| format!("{}{b}", coefficient_prefix(c, symbols)))
            .collect(),
    )
}

pub fn print_basis(b: &BasisElt) -> String {
    b.to_string()
}
