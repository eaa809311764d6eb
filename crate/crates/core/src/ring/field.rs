use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses an exact rational written as `p/q` or `p`. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `p/q` (always with a denominator).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// An element `real + root·√−d` of the field `K_d = Q(√−d)`.
///
/// The basis is `{1, √−d}` for every `d`, so for `d ≡ 3 (mod 4)` the generator
/// `ω` of `O_d` has `root = 1/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub real: Rational,
    pub root: Rational,
}

impl FieldElem {
    pub fn new(real: Rational, root: Rational) -> Self {
        FieldElem { real, root }
    }

    pub fn zero() -> Self {
        FieldElem::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        FieldElem::new(Rational::one(), Rational::zero())
    }

    pub fn from_rational(q: Rational) -> Self {
        FieldElem::new(q, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.real.is_zero() && self.root.is_zero()
    }

    pub fn conj(&self) -> Self {
        FieldElem::new(self.real.clone(), -self.root.clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        FieldElem::new(&self.real * k, &self.root * k)
    }

    /// `|z|² = real² + d·root²`.
    pub fn norm(&self, d: i64) -> Rational {
        &self.real * &self.real + &self.root * &self.root * int(d)
    }

    pub fn mul(&self, other: &FieldElem, d: i64) -> FieldElem {
        let dd = int(d);
        FieldElem::new(
            &self.real * &other.real - &self.root * &other.root * dd,
            &self.real * &other.root + &self.root * &other.real,
        )
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, d: i64) -> Option<FieldElem> {
        let n = self.norm(d);
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(FieldElem::new(c.real / &n, c.root / n))
    }

    pub fn div(&self, other: &FieldElem, d: i64) -> Option<FieldElem> {
        other.inv(d).map(|i| self.mul(&i, d))
    }

    pub fn is_negative_real(&self) -> bool {
        self.real.is_negative()
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::new(&self.real + &rhs.real, &self.root + &rhs.root)
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::new(&self.real - &rhs.real, &self.root - &rhs.root)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::new(-self.real.clone(), -self.root.clone())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})·√−d", self.real, self.root)
    }
}
