//! Sparse univariate polynomials in `z` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent-to-coefficient map with no stored zero coefficients, so equal
/// polynomials have identical maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    terms: BTreeMap<u32, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff.into(), exp);
        p
    }

    /// Builds `Σ counts[k] z^k`.
    pub fn from_counts(counts: &[u64]) -> Self {
        let terms = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k as u32, BigInt::from(c)))
            .collect();
        IntPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn add_term(&mut self, coeff: BigInt, exp: u32) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&k, c)| c * x.pow(k))
            .fold(BigInt::zero(), |acc, t| acc + t)
    }

    /// Sum of the coefficients, i.e. the value at `z = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser { src: text, pos: 0 }.polynomial()
    }
}

impl fmt::Display for IntPolynomial {
    /// Canonical form: descending exponents, `z^k`, `z` for `k = 1`, bare
    /// constant for `k = 0`, unit coefficients omitted, e.g. `6z^2-z+2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Grammar (whitespace allowed between tokens):
/// `poly := ['-'|'+'] term (('+'|'-') term)*`,
/// `term := digits | [digits ['*']] 'z' ['^' digits]`.
struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::parse(line, column, message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        self.pos += len;
        (len > 0).then(|| &self.src[start..start + len])
    }

    fn polynomial(mut self) -> Result<IntPolynomial> {
        let mut poly = IntPolynomial::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some('+') => {
                    self.pos += 1;
                    false
                }
                None if first => return Err(self.err("empty polynomial")),
                None => break,
                Some(_) if first => false,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            };
            let (coeff, exp) = self.term()?;
            poly.add_term(if negative { -coeff } else { coeff }, exp);
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(BigInt, u32)> {
        let coeff = match self.digits() {
            Some(d) => Some(
                d.parse::<BigInt>()
                    .map_err(|_| self.err("bad coefficient"))?,
            ),
            None => None,
        };
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            if self.peek() != Some('z') {
                return Err(self.err("expected 'z' after '*'"));
            }
        }
        if self.peek() == Some('z') {
            self.pos += 1;
            let exp = if self.peek() == Some('^') {
                self.pos += 1;
                let Some(d) = self.digits() else {
                    return Err(self.err("expected exponent"));
                };
                d.parse::<u32>()
                    .map_err(|_| self.err("exponent too large"))?
            } else {
                1
            };
            Ok((coeff.unwrap_or_else(BigInt::one), exp))
        } else {
            coeff
                .map(|c| (c, 0))
                .ok_or_else(|| self.err("expected coefficient or 'z'"))
        }
    }
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(c.clone(), k);
        }
        out
    }
}

impl Sub<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(-c, k);
        }
        out
    }
}

impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                out.add_term(a * b, i + j);
            }
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| acc + p)
    }
}
