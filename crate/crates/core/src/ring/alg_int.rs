use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element `a + b·ω` of the ring of integers `O_d = Z[ω]`.
///
/// The meaning of `ω` depends on the ambient [`RingContext`](super::RingContext),
/// so multiplication, conjugation and norms live on the context. Addition and
/// negation are coordinate-wise and need no context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct AlgInt {
    pub a: i64,
    pub b: i64,
}

impl AlgInt {
    pub const ZERO: AlgInt = AlgInt { a: 0, b: 0 };
    pub const ONE: AlgInt = AlgInt { a: 1, b: 0 };
    pub const OMEGA: AlgInt = AlgInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        AlgInt { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        AlgInt { a, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `(a, b) > (0, 0)` in lexicographic order.
    pub fn is_lex_positive(&self) -> bool {
        self.a > 0 || (self.a == 0 && self.b > 0)
    }

    pub fn scale(&self, k: i64) -> AlgInt {
        AlgInt::new(self.a * k, self.b * k)
    }
}

impl From<[i64; 2]> for AlgInt {
    fn from(v: [i64; 2]) -> Self {
        AlgInt::new(v[0], v[1])
    }
}

impl From<AlgInt> for [i64; 2] {
    fn from(x: AlgInt) -> Self {
        [x.a, x.b]
    }
}

impl From<i64> for AlgInt {
    fn from(a: i64) -> Self {
        AlgInt::from_int(a)
    }
}

impl Add for AlgInt {
    type Output = AlgInt;
    fn add(self, rhs: AlgInt) -> AlgInt {
        AlgInt::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for AlgInt {
    type Output = AlgInt;
    fn sub(self, rhs: AlgInt) -> AlgInt {
        AlgInt::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for AlgInt {
    type Output = AlgInt;
    fn neg(self) -> AlgInt {
        AlgInt::new(-self.a, -self.b)
    }
}

impl fmt::Display for AlgInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}ω"),
            (a, b) if b < 0 => write!(f, "{a}-{}ω", -b),
            (a, b) => write!(f, "{a}+{b}ω"),
        }
    }
}
