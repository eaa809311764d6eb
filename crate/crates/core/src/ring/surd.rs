use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::field::Rational;

/// A real number `p + q·√m` with rational `p, q` and a positive integer `m`.
///
/// Signs (and hence comparisons between values sharing the same `m`) are
/// decided with rational arithmetic only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdValue {
    pub p: Rational,
    pub q: Rational,
    pub m: BigInt,
}

impl SurdValue {
    pub fn new(p: Rational, q: Rational, m: impl Into<BigInt>) -> Self {
        let m = m.into();
        assert!(m.is_positive(), "radicand must be positive");
        SurdValue { p, q, m }
    }

    pub fn rational(p: Rational, m: impl Into<BigInt>) -> Self {
        SurdValue::new(p, Rational::zero(), m)
    }

    pub fn scale(&self, k: &Rational) -> SurdValue {
        SurdValue::new(&self.p * k, &self.q * k, self.m.clone())
    }

    /// Sign of `p + q√m` as an [`Ordering`] against zero.
    pub fn sign(&self) -> Ordering {
        let (p, q) = self.fold_perfect_square();
        let sp = sign_of(&p);
        let sq = sign_of(&q);
        if sq == Ordering::Equal || sp == sq {
            return sp;
        }
        if sp == Ordering::Equal {
            return sq;
        }
        // Opposite signs: whichever term has the larger square wins.
        let p2 = &p * &p;
        let q2m = &q * &q * Rational::from_integer(self.m.clone());
        match p2.cmp(&q2m) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_surd(&self, other: &SurdValue) -> Ordering {
        (self - other).sign()
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        SurdValue::new(&self.p - r, self.q.clone(), self.m.clone()).sign()
    }

    pub fn le(&self, other: &SurdValue) -> bool {
        self.cmp_surd(other) != Ordering::Greater
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let m = self.m.to_f64().unwrap_or(f64::INFINITY);
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * m.sqrt()
    }

    fn fold_perfect_square(&self) -> (Rational, Rational) {
        let r = self.m.sqrt();
        if &r * &r == self.m {
            (&self.p + &self.q * Rational::from_integer(r), Rational::zero())
        } else {
            (self.p.clone(), self.q.clone())
        }
    }

    fn assert_same_radicand(&self, other: &SurdValue) {
        assert_eq!(self.m, other.m, "surd arithmetic needs a common radicand");
    }
}

fn sign_of(x: &Rational) -> Ordering {
    if x.is_positive() {
        Ordering::Greater
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl Add for &SurdValue {
    type Output = SurdValue;
    fn add(self, rhs: &SurdValue) -> SurdValue {
        self.assert_same_radicand(rhs);
        SurdValue::new(&self.p + &rhs.p, &self.q + &rhs.q, self.m.clone())
    }
}

impl Sub for &SurdValue {
    type Output = SurdValue;
    fn sub(self, rhs: &SurdValue) -> SurdValue {
        self.assert_same_radicand(rhs);
        SurdValue::new(&self.p - &rhs.p, &self.q - &rhs.q, self.m.clone())
    }
}

impl Mul for &SurdValue {
    type Output = SurdValue;
    fn mul(self, rhs: &SurdValue) -> SurdValue {
        self.assert_same_radicand(rhs);
        let m = Rational::from_integer(self.m.clone());
        SurdValue::new(
            &self.p * &rhs.p + &self.q * &rhs.q * m,
            &self.p * &rhs.q + &self.q * &rhs.p,
            self.m.clone(),
        )
    }
}

impl Neg for &SurdValue {
    type Output = SurdValue;
    fn neg(self) -> SurdValue {
        SurdValue::new(-self.p.clone(), -self.q.clone(), self.m.clone())
    }
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.p, self.q, self.m)
    }
}

/// Decides `√h ≤ √z2 + k` exactly, where `h, z2 ≥ 0` are rational and `k ≥ 0`
/// is given through its square `k_sq` (a surd).
pub fn sqrt_le_sqrt_plus(h: &Rational, z2: &Rational, k_sq: &SurdValue) -> bool {
    if h <= z2 {
        return true;
    }
    // √h − √z2 > 0, so square: h + z2 − k² ≤ 2√(h·z2).
    let x = SurdValue::new(h + z2 - &k_sq.p, -k_sq.q.clone(), k_sq.m.clone());
    if x.sign() != Ordering::Greater {
        return true;
    }
    let x2 = &x * &x;
    x2.cmp_rational(&(h * z2 * Rational::from_integer(4.into()))) != Ordering::Greater
}
