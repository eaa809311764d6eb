//! Positive-definite binary Hermitian forms over `O_d`.
//!
//! A form is stored as the matrix `[[a, b], [b̄, dd]]` acting on column
//! vectors `v = (X, Z)` by `v* A v = a|X|² + 2·Re(X̄ b Z) + dd|Z|²`. With this
//! convention `ξ(f) = (−b/a, Δ/a²)` satisfies `ξ(g·f) = g·ξ(f)`.

use std::fmt;

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::domain::in_f;
use crate::error::{Error, Result};
use crate::geometry::{GroupElem, Point};
use crate::reduce::{certificate_bound_holds, reduce, ReductionCertificate};
use crate::ring::{int, AlgInt, FieldElem, Rational, RingContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HermitianForm {
    pub a: i64,
    pub b: AlgInt,
    pub dd: i64,
}

/// A form with entries in `K_d`, as produced by `ξ⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldForm {
    pub a: Rational,
    pub b: FieldElem,
    pub dd: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormReduction {
    pub certificate: ReductionCertificate,
    pub f_red: HermitianForm,
    /// `H(g)² ≤ (16·C_d²)²·(H(f)²/Δ)²`.
    pub form_bound_ok: bool,
}

impl HermitianForm {
    pub fn new(a: i64, b: AlgInt, dd: i64) -> Self {
        HermitianForm { a, b, dd }
    }

    pub fn identity() -> Self {
        HermitianForm::new(1, AlgInt::ZERO, 1)
    }

    pub fn discriminant(&self, ctx: &RingContext) -> i64 {
        self.a * self.dd - ctx.norm(self.b)
    }

    pub fn is_positive_definite(&self, ctx: &RingContext) -> bool {
        self.a > 0 && self.discriminant(ctx) > 0
    }

    fn require_definite(&self, ctx: &RingContext) -> Result<()> {
        if self.is_positive_definite(ctx) {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite)
        }
    }

    pub fn xi(&self, ctx: &RingContext) -> Result<Point> {
        self.require_definite(ctx)?;
        let a = int(self.a);
        let z = ctx.to_field(self.b).scale(&-a.recip());
        Point::new(z, int(self.discriminant(ctx)) / (&a * &a))
    }

    /// `(g⁻¹)* A g⁻¹`.
    pub fn act(&self, ctx: &RingContext, g: &GroupElem) -> HermitianForm {
        let [p, q, r, s] = g.inverse().entries();
        let (a, b, dd) = (self.a, self.b, self.dd);
        let mul = |x, y| ctx.mul(x, y);
        let diag = |x: AlgInt, y: AlgInt| {
            a * ctx.norm(x) + ctx.trace(mul(mul(ctx.conj(x), b), y)) + dd * ctx.norm(y)
        };
        let off = mul(ctx.conj(p), q.scale(a) + mul(b, s))
            + mul(ctx.conj(r), mul(ctx.conj(b), q) + s.scale(dd));
        HermitianForm::new(diag(p, r), off, diag(q, s))
    }

    /// `max(a², |b|², dd²)`.
    pub fn height_sq(&self, ctx: &RingContext) -> i64 {
        (self.a * self.a).max(ctx.norm(self.b)).max(self.dd * self.dd)
    }

    pub fn is_reduced(&self, ctx: &RingContext) -> Result<bool> {
        Ok(in_f(ctx, &self.xi(ctx)?))
    }

    /// `D(ξ(f))² ≤ H(f)²/Δ`.
    pub fn lemma41_check(&self, ctx: &RingContext) -> Result<bool> {
        let p = self.xi(ctx)?;
        Ok(p.d_sq(ctx) <= self.height_bound(ctx))
    }

    fn height_bound(&self, ctx: &RingContext) -> Rational {
        Rational::new(self.height_sq(ctx).into(), self.discriminant(ctx).into())
    }

    /// Reduces `f` through its point `ξ(f)`; `g` is the certificate's `γ`.
    pub fn reduce(&self, ctx: &RingContext) -> Result<FormReduction> {
        let certificate = reduce(ctx, &self.xi(ctx)?)?;
        let f_red = self.act(ctx, &certificate.gamma);
        if f_red.discriminant(ctx) != self.discriminant(ctx) || !f_red.is_reduced(ctx)? {
            return Err(Error::InequalityViolated(format!("form {self} did not reduce")));
        }
        let form_bound_ok =
            certificate_bound_holds(ctx, certificate.height_sq, &self.height_bound(ctx));
        Ok(FormReduction { certificate, f_red, form_bound_ok })
    }
}

impl fmt::Display for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.dd)
    }
}

impl FormReduction {
    pub fn bounds_ok(&self) -> bool {
        self.certificate.bound_ok && self.form_bound_ok
    }
}

/// The representative `(1, −z, |z|² + t²)` of `ξ⁻¹(z, t)`.
pub fn xi_inverse(ctx: &RingContext, p: &Point) -> FieldForm {
    FieldForm {
        a: Rational::one(),
        b: -&p.z,
        dd: p.z.norm(ctx.d()) + &p.s,
    }
}

impl FieldForm {
    pub fn scale(&self, k: &Rational) -> FieldForm {
        FieldForm {
            a: &self.a * k,
            b: self.b.scale(k),
            dd: &self.dd * k,
        }
    }

    pub fn discriminant(&self, d: i64) -> Rational {
        &self.a * &self.dd - self.b.norm(d)
    }

    /// The smallest positive multiple with `a, dd ∈ Z` and `b ∈ O_d`.
    pub fn to_integral(&self, ctx: &RingContext) -> Option<HermitianForm> {
        let (x, y) = ctx.omega_coords(&self.b);
        let lambda = [&self.a, &self.dd, &x, &y]
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled = self.scale(&Rational::from_integer(lambda));
        let to_i64 = |q: &Rational| -> Option<i64> {
            use num_traits::ToPrimitive;
            q.is_integer().then(|| q.to_integer().to_i64()).flatten()
        };
        let b = ctx.from_field(&scaled.b)?;
        let a = to_i64(&scaled.a)?;
        Some(HermitianForm::new(a, b, to_i64(&scaled.dd)?))
    }
}
