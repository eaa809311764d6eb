//! Exact arithmetic in the ring of integers `O_d` of `K_d = Q(√−d)`, the
//! lattice geometry of `O_d ⊂ C`, ideal norms and bounded Bézout
//! coefficients.

mod alg_int;
mod field;
mod ideal;
mod lattice;
mod surd;

pub use alg_int::AlgInt;
pub use field::{format_rational, int, parse_rational, rat, FieldElem, Rational};
pub use ideal::{hnf_index, IdealBasis};
pub use lattice::lattice_points_in_disk;
pub(crate) use lattice::disk_points;
pub use surd::{sqrt_le_sqrt_plus, SurdValue};

use num_traits::Zero;

use crate::error::{Error, Result};

/// Which integral basis `{1, ω}` the ring uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaMode {
    /// `d ≡ 1, 2 (mod 4)`: `ω = √−d`.
    SqrtMinusD,
    /// `d ≡ 3 (mod 4)`: `ω = (−1 + √−d)/2`.
    HalfInteger,
}

/// Everything that depends on `d`: the multiplication table of `O_d`, its
/// units, and the covering-radius constants `ε_d²` and `C_d = 1 + ε_d`.
///
/// Read-only after construction and cheap to share across threads.
#[derive(Debug, Clone)]
pub struct RingContext {
    d: i64,
    mode: OmegaMode,
    eps_sq: Rational,
    c_d: SurdValue,
    units: Vec<AlgInt>,
}

fn is_squarefree(d: i64) -> bool {
    let mut n = d;
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

impl RingContext {
    pub fn new(d: i64) -> Result<Self> {
        if d <= 0 || !is_squarefree(d) {
            return Err(Error::InvalidDiscriminant(d));
        }
        let mode = if d % 4 == 3 {
            OmegaMode::HalfInteger
        } else {
            OmegaMode::SqrtMinusD
        };
        // ε_d = √(1+d)/2 for the rectangular lattice; for d ≡ 3 (mod 4) it is
        // the circumradius (1+d)/(4√d) = ((1+d)/(4d))·√d of the triangle 0, 1, 1+ω.
        let (eps_sq, c_d) = match mode {
            OmegaMode::SqrtMinusD => (
                rat(1 + d, 4),
                SurdValue::new(int(1), rat(1, 2), 1 + d),
            ),
            OmegaMode::HalfInteger => (
                rat((1 + d) * (1 + d), 16 * d),
                SurdValue::new(int(1), rat(1 + d, 4 * d), d),
            ),
        };
        let mut ctx = RingContext {
            d,
            mode,
            eps_sq,
            c_d,
            units: Vec::new(),
        };
        let mut units: Vec<AlgInt> =
            lattice_points_in_disk(&ctx, &FieldElem::zero(), &int(1))
                .into_iter()
                .filter(|x| ctx.norm(*x) == 1)
                .collect();
        units.sort();
        ctx.units = units;
        Ok(ctx)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn mode(&self) -> OmegaMode {
        self.mode
    }

    pub fn mul(&self, x: AlgInt, y: AlgInt) -> AlgInt {
        let bb = x.b * y.b;
        match self.mode {
            OmegaMode::SqrtMinusD => AlgInt::new(x.a * y.a - self.d * bb, x.a * y.b + x.b * y.a),
            // ω² = −ω − (1+d)/4
            OmegaMode::HalfInteger => AlgInt::new(
                x.a * y.a - bb * ((1 + self.d) / 4),
                x.a * y.b + x.b * y.a - bb,
            ),
        }
    }

    pub fn conj(&self, x: AlgInt) -> AlgInt {
        match self.mode {
            OmegaMode::SqrtMinusD => AlgInt::new(x.a, -x.b),
            // ω̄ = −1 − ω
            OmegaMode::HalfInteger => AlgInt::new(x.a - x.b, -x.b),
        }
    }

    /// `|x|² = x·x̄`.
    pub fn norm(&self, x: AlgInt) -> i64 {
        let (a, b, d) = (x.a as i128, x.b as i128, self.d as i128);
        let n = match self.mode {
            OmegaMode::SqrtMinusD => a * a + d * b * b,
            OmegaMode::HalfInteger => a * a - a * b + b * b * ((1 + d) / 4),
        };
        i64::try_from(n).expect("norm overflows i64")
    }

    /// `x + x̄ = 2·Re(x)`, always an integer.
    pub fn trace(&self, x: AlgInt) -> i64 {
        match self.mode {
            OmegaMode::SqrtMinusD => 2 * x.a,
            OmegaMode::HalfInteger => 2 * x.a - x.b,
        }
    }

    pub fn to_field(&self, x: AlgInt) -> FieldElem {
        match self.mode {
            OmegaMode::SqrtMinusD => FieldElem::new(int(x.a), int(x.b)),
            OmegaMode::HalfInteger => FieldElem::new(rat(2 * x.a - x.b, 2), rat(x.b, 2)),
        }
    }

    /// Coordinates of `z` with respect to the basis `{1, ω}`.
    pub fn omega_coords(&self, z: &FieldElem) -> (Rational, Rational) {
        match self.mode {
            OmegaMode::SqrtMinusD => (z.real.clone(), z.root.clone()),
            OmegaMode::HalfInteger => (&z.real + &z.root, &z.root * int(2)),
        }
    }

    /// `Some(x)` when `z ∈ O_d`.
    pub fn from_field(&self, z: &FieldElem) -> Option<AlgInt> {
        let (a, b) = self.omega_coords(z);
        if !a.is_integer() || !b.is_integer() {
            return None;
        }
        use num_traits::ToPrimitive;
        Some(AlgInt::new(a.to_integer().to_i64()?, b.to_integer().to_i64()?))
    }

    /// `x / y` when it lies in `O_d`.
    pub fn exact_div(&self, x: AlgInt, y: AlgInt) -> Option<AlgInt> {
        let n = self.norm(y);
        if n == 0 {
            return None;
        }
        let p = self.mul(x, self.conj(y));
        if p.a % n == 0 && p.b % n == 0 {
            Some(AlgInt::new(p.a / n, p.b / n))
        } else {
            None
        }
    }

    pub fn field_div(&self, x: AlgInt, y: AlgInt) -> Option<FieldElem> {
        self.to_field(x).div(&self.to_field(y), self.d)
    }

    /// The norm-one elements, sorted lexicographically.
    pub fn units(&self) -> &[AlgInt] {
        &self.units
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn is_unit(&self, x: AlgInt) -> bool {
        self.norm(x) == 1
    }

    /// `ε_d²`, the squared covering radius of `O_d` in `C`.
    pub fn eps_sq(&self) -> &Rational {
        &self.eps_sq
    }

    pub fn covering_radius_sq(&self) -> Rational {
        self.eps_sq.clone()
    }

    /// `ε_d` as a surd over the same radicand as `C_d`.
    pub fn eps(&self) -> SurdValue {
        SurdValue::new(Rational::zero(), self.c_d.q.clone(), self.c_d.m.clone())
    }

    /// `C_d = 1 + ε_d`.
    pub fn c_d(&self) -> &SurdValue {
        &self.c_d
    }

    pub fn c_d_sq(&self) -> SurdValue {
        &self.c_d * &self.c_d
    }

    /// `SurdValue` holding a rational, with `C_d`'s radicand.
    pub fn surd(&self, p: Rational) -> SurdValue {
        SurdValue::rational(p, self.c_d.m.clone())
    }
}
