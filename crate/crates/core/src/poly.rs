use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, Zero};

use crate::error::Error;

/// Exact rational number; arithmetic panics on `i128` overflow instead of wrapping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub fn integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Rational::ONE, |acc, _| acc * *self)
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n as i128)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_add(&rhs.0).expect("rational overflow"))
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_mul(&rhs.0).expect("rational overflow"))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(alloc::format!("bad rational `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i128 = n.parse().map_err(|_| bad())?;
        let d: i128 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    }
}

/// The deformation parameter `p = (q - 1)/√q`.
pub fn p_of_q(q: f64) -> f64 {
    (q - 1.0) / libm::sqrt(q)
}

/// Polynomial in the symbol `p` with exact rational coefficients.
///
/// Stored as `(degree, coefficient)` pairs sorted by degree, with no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PolyScalar {
    terms: Vec<(u32, Rational)>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        PolyScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        PolyScalar::constant(Rational::ONE)
    }

    pub fn constant(c: Rational) -> Self {
        PolyScalar::monomial(0, c)
    }

    pub fn integer(n: i64) -> Self {
        PolyScalar::constant(Rational::from(n))
    }

    /// The symbol `p`.
    pub fn p() -> Self {
        PolyScalar::p_pow(1)
    }

    pub fn p_pow(k: u32) -> Self {
        PolyScalar::monomial(k, Rational::ONE)
    }

    pub fn monomial(degree: u32, c: Rational) -> Self {
        if c.is_zero() {
            PolyScalar::zero()
        } else {
            PolyScalar { terms: alloc::vec![(degree, c)] }
        }
    }

    /// Builds from `(degree, coefficient)` pairs in any order, merging duplicates.
    pub fn from_terms(pairs: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        pairs.into_iter().fold(PolyScalar::zero(), |acc, (d, c)| acc + PolyScalar::monomial(d, c))
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.terms.iter().find(|(d, _)| *d == degree).map_or(Rational::ZERO, |&(_, c)| c)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|&(d, _)| d)
    }

    pub fn scale(&self, c: Rational) -> Self {
        if c.is_zero() {
            return PolyScalar::zero();
        }
        PolyScalar { terms: self.terms.iter().map(|&(d, a)| (d, a * c)).collect() }
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: u32) -> Self {
        PolyScalar { terms: self.terms.iter().map(|&(d, a)| (d + k, a)).collect() }
    }

    /// Value at a numeric `p`.
    pub fn eval_p(&self, p: f64) -> f64 {
        self.terms.iter().map(|&(d, c)| c.to_f64() * libm::pow(p, d as f64)).sum()
    }

    /// Value at `p = (q - 1)/√q`.
    pub fn eval(&self, q: f64) -> f64 {
        self.eval_p(p_of_q(q))
    }

    fn merge(&self, other: &Self, sign: Rational) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let a = self.terms.get(i);
            let b = other.terms.get(j);
            match (a, b) {
                (Some(&(da, ca)), Some(&(db, cb))) if da == db => {
                    let c = ca + cb * sign;
                    if !c.is_zero() {
                        out.push((da, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(da, ca)), Some(&(db, _))) if da < db => {
                    out.push((da, ca));
                    i += 1;
                }
                (Some(&(da, ca)), None) => {
                    out.push((da, ca));
                    i += 1;
                }
                (_, Some(&(db, cb))) => {
                    out.push((db, cb * sign));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        PolyScalar { terms: out }
    }
}

impl Add for PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: PolyScalar) -> PolyScalar {
        self.merge(&rhs, Rational::ONE)
    }
}

impl Add<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        self.merge(rhs, Rational::ONE)
    }
}

impl AddAssign<&PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: &PolyScalar) {
        *self = self.merge(rhs, Rational::ONE);
    }
}

impl Sub for PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: PolyScalar) -> PolyScalar {
        self.merge(&rhs, -Rational::ONE)
    }
}

impl Sub<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        self.merge(rhs, -Rational::ONE)
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        self.scale(-Rational::ONE)
    }
}

impl Mul<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut acc = PolyScalar::zero();
        for &(d, c) in &self.terms {
            acc += &rhs.shift(d).scale(c);
        }
        acc
    }
}

impl Mul for PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: PolyScalar) -> PolyScalar {
        &self * &rhs
    }
}

impl fmt::Debug for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyScalar({self})")
    }
}

/// Writes `c p^d` with unit coefficients elided; the sign is written by the caller.
pub(crate) fn write_monomial(f: &mut impl fmt::Write, degree: u32, c: Rational) -> fmt::Result {
    let c = c.abs();
    match degree {
        0 => write!(f, "{c}"),
        _ => {
            if !c.is_one() {
                write!(f, "{c} ")?;
            }
            if degree == 1 {
                f.write_str("p")
            } else {
                write!(f, "p^{degree}")
            }
        }
    }
}

pub(crate) fn write_signed_terms(f: &mut impl fmt::Write, terms: &[(u32, Rational)], first: bool) -> fmt::Result {
    for (i, &(d, c)) in terms.iter().enumerate() {
        match (first && i == 0, c.is_negative()) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        write_monomial(f, d, c)?;
    }
    Ok(())
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write_signed_terms(f, &self.terms, true)
    }
}

impl FromStr for PolyScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parser = crate::text::Parser::new(s)?;
        let poly = parser.polynomial()?;
        parser.expect_end()?;
        Ok(poly)
    }
}

impl PolyScalar {
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}
