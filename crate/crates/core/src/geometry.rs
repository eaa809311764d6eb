//! The upper half-space model with exact coordinates and the action of
//! `SL(2, O_d)` on it and on its boundary `P¹(K_d)`.
//!
//! A point `(z, t)` is stored as `(z, s)` with `s = t²`. Every formula used
//! here (the action, `D`, membership in `B_d`) involves `t` only through
//! `t²`, so the whole module stays in `K_d` and `Q`.

use std::cmp::max;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ring::{int, AlgInt, FieldElem, Rational, RingContext};

/// A point `(z, t)` of hyperbolic 3-space, stored as `(z, s = t²)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub z: FieldElem,
    pub s: Rational,
}

impl Point {
    pub fn new(z: FieldElem, s: Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::NonPositiveHeight);
        }
        Ok(Point { z, s })
    }

    /// The point `(0, t)` with `t² = s`.
    pub fn above_origin(s: Rational) -> Result<Self> {
        Point::new(FieldElem::zero(), s)
    }

    /// `D(z, t)² = max{1, |z|², 1/t²}`.
    pub fn d_sq(&self, ctx: &RingContext) -> Rational {
        let one = Rational::one();
        let z2 = self.z.norm(ctx.d());
        let inv_s = self.s.recip();
        max(max(one, z2), inv_s)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(z = {}, t² = {})", self.z, self.s)
    }
}

/// An element of `PSL(2, O_d)`, stored as its canonical `SL(2, O_d)`
/// representative: the first nonzero entry in reading order is
/// lexicographically positive in `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    alpha: AlgInt,
    beta: AlgInt,
    gamma: AlgInt,
    delta: AlgInt,
}

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem {
        alpha: AlgInt::ONE,
        beta: AlgInt::ZERO,
        gamma: AlgInt::ZERO,
        delta: AlgInt::ONE,
    };

    /// `[[0, −1], [1, 0]]`.
    pub const INVOLUTION: GroupElem = GroupElem {
        alpha: AlgInt::ZERO,
        beta: AlgInt::ONE,
        gamma: AlgInt::new(-1, 0),
        delta: AlgInt::ZERO,
    };

    /// Builds `[[α, β], [γ, δ]]`, checking `αδ − βγ = 1`.
    pub fn new(
        ctx: &RingContext,
        alpha: AlgInt,
        beta: AlgInt,
        gamma: AlgInt,
        delta: AlgInt,
    ) -> Result<Self> {
        let det = ctx.mul(alpha, delta) - ctx.mul(beta, gamma);
        if det != AlgInt::ONE {
            return Err(Error::BadDeterminant(det.to_string()));
        }
        Ok(GroupElem::canonical(alpha, beta, gamma, delta))
    }

    fn canonical(alpha: AlgInt, beta: AlgInt, gamma: AlgInt, delta: AlgInt) -> Self {
        let lead = [alpha, beta, gamma, delta]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("determinant-one matrix has a nonzero entry");
        if lead.is_lex_positive() {
            GroupElem { alpha, beta, gamma, delta }
        } else {
            GroupElem { alpha: -alpha, beta: -beta, gamma: -gamma, delta: -delta }
        }
    }

    pub fn alpha(&self) -> AlgInt {
        self.alpha
    }
    pub fn beta(&self) -> AlgInt {
        self.beta
    }
    pub fn gamma(&self) -> AlgInt {
        self.gamma
    }
    pub fn delta(&self) -> AlgInt {
        self.delta
    }

    pub fn entries(&self) -> [AlgInt; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElem::IDENTITY
    }

    pub fn compose(&self, ctx: &RingContext, other: &GroupElem) -> GroupElem {
        let m = |x, y| ctx.mul(x, y);
        GroupElem::canonical(
            m(self.alpha, other.alpha) + m(self.beta, other.gamma),
            m(self.alpha, other.beta) + m(self.beta, other.delta),
            m(self.gamma, other.alpha) + m(self.delta, other.gamma),
            m(self.gamma, other.beta) + m(self.delta, other.delta),
        )
    }

    /// Adjugate inverse `[[δ, −β], [−γ, α]]`.
    pub fn inverse(&self) -> GroupElem {
        GroupElem::canonical(self.delta, -self.beta, -self.gamma, self.alpha)
    }

    pub fn transpose(&self) -> GroupElem {
        GroupElem::canonical(self.alpha, self.gamma, self.beta, self.delta)
    }

    /// `H(M)²`: the largest entry norm.
    pub fn height_sq(&self, ctx: &RingContext) -> i64 {
        self.entries().iter().map(|&x| ctx.norm(x)).max().unwrap_or(0)
    }

    /// `|γz + δ|² + |γ|²·t²`, the denominator of the action at `p`.
    pub fn denominator(&self, ctx: &RingContext, p: &Point) -> Rational {
        let d = ctx.d();
        let cz_d = &ctx.to_field(self.gamma).mul(&p.z, d) + &ctx.to_field(self.delta);
        cz_d.norm(d) + int(ctx.norm(self.gamma)) * &p.s
    }

    /// `M·(z, t)` through the coordinate formula
    /// `z' = ((αz+β)·conj(γz+δ) + α·γ̄·t²) / Q`, `t' = t / Q`,
    /// with `Q = |γz+δ|² + |γ|²t²`.
    pub fn apply(&self, ctx: &RingContext, p: &Point) -> Point {
        let d = ctx.d();
        let [a, b, c, dl] = self.entries().map(|x| ctx.to_field(x));
        let az_b = &a.mul(&p.z, d) + &b;
        let cz_d = &c.mul(&p.z, d) + &dl;
        let q = cz_d.norm(d) + c.norm(d) * &p.s;
        let num = &az_b.mul(&cz_d.conj(), d) + &a.mul(&c.conj(), d).scale(&p.s);
        let inv_q = q.recip();
        Point {
            z: num.scale(&inv_q),
            s: &p.s * &inv_q * &inv_q,
        }
    }

    /// `(αx + βy : γx + δy)`.
    pub fn apply_boundary(&self, ctx: &RingContext, q: &ProjPoint) -> ProjPoint {
        ProjPoint {
            x: ctx.mul(self.alpha, q.x) + ctx.mul(self.beta, q.y),
            y: ctx.mul(self.gamma, q.x) + ctx.mul(self.delta, q.y),
        }
    }

    /// First column `(α : γ)`.
    pub fn first_column(&self) -> ProjPoint {
        ProjPoint { x: self.alpha, y: self.gamma }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.alpha, self.beta, self.gamma, self.delta)
    }
}

/// A point `(x : y)` of `P¹(K_d)` with integral homogeneous coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub x: AlgInt,
    pub y: AlgInt,
}

impl ProjPoint {
    pub fn new(x: AlgInt, y: AlgInt) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::ZeroProjectivePoint);
        }
        Ok(ProjPoint { x, y })
    }

    pub const INFINITY: ProjPoint = ProjPoint { x: AlgInt::ONE, y: AlgInt::ZERO };

    /// Equality in `P¹`: `x₁y₂ = x₂y₁`.
    pub fn same_point(&self, ctx: &RingContext, other: &ProjPoint) -> bool {
        ctx.mul(self.x, other.y) == ctx.mul(other.x, self.y)
    }

    /// `H(P)² = max{|x|², |y|²} / N(⟨x, y⟩)`.
    pub fn height_sq(&self, ctx: &RingContext) -> Rational {
        let n = ctx.ideal_norm(self.x, self.y).expect("projective point is nonzero");
        Rational::new(max(ctx.norm(self.x), ctx.norm(self.y)).into(), n.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn ctx(d: i64) -> RingContext {
        RingContext::new(d).unwrap()
    }

    fn sigma(c: &RingContext, n: i64) -> GroupElem {
        GroupElem::new(c, n.into(), (1 - n * n).into(), (-1).into(), n.into()).unwrap()
    }

    #[test]
    fn identity_fixes_points() {
        let c = ctx(2);
        let p = Point::new(FieldElem::new(rat(1, 3), rat(-2, 5)), rat(7, 11)).unwrap();
        assert_eq!(GroupElem::IDENTITY.apply(&c, &p), p);
    }

    #[test]
    fn sharpness_matrix_sends_witness_to_axis() {
        for d in [1, 2, 3, 5, 7] {
            let c = ctx(d);
            let p = Point::new(FieldElem::from_rational(rat(7, 4)), rat(1, 16)).unwrap();
            let img = sigma(&c, 2).apply(&c, &p);
            assert_eq!(img, Point::above_origin(int(4)).unwrap());
        }
    }

    #[test]
    fn boundary_action() {
        let c = ctx(1);
        assert_eq!(GroupElem::IDENTITY.apply_boundary(&c, &ProjPoint::INFINITY), ProjPoint::INFINITY);
        let s2 = sigma(&c, 2);
        let img = s2.apply_boundary(&c, &ProjPoint::INFINITY);
        assert!(img.same_point(&c, &ProjPoint::new(2.into(), (-1).into()).unwrap()));
        let q = ProjPoint::new(AlgInt::new(3, 1), AlgInt::new(-2, 5)).unwrap();
        let back = s2.inverse().apply_boundary(&c, &s2.apply_boundary(&c, &q));
        assert!(back.same_point(&c, &q));
    }

    #[test]
    fn height_examples() {
        let c1 = ctx(1);
        assert_eq!(GroupElem::IDENTITY.height_sq(&c1), 1);
        for n in 2..8 {
            assert_eq!(sigma(&c1, n).height_sq(&c1), (n * n - 1) * (n * n - 1));
        }
        let m = GroupElem::new(&c1, AlgInt::ONE, AlgInt::new(2, 1), AlgInt::ZERO, AlgInt::ONE).unwrap();
        assert_eq!(m.height_sq(&c1), 5);
    }

    #[test]
    fn d_sq_examples() {
        let c = ctx(1);
        assert_eq!(Point::above_origin(int(1)).unwrap().d_sq(&c), int(1));
        let p = Point::new(FieldElem::from_rational(rat(7, 4)), rat(1, 16)).unwrap();
        assert_eq!(p.d_sq(&c), int(16));
        let p = Point::new(FieldElem::from_rational(int(5)), int(100)).unwrap();
        assert_eq!(p.d_sq(&c), int(25));
    }

    #[test]
    fn projective_height_examples() {
        let c1 = ctx(1);
        assert_eq!(ProjPoint::INFINITY.height_sq(&c1), int(1));
        assert_eq!(ProjPoint::new(3.into(), 3.into()).unwrap().height_sq(&c1), int(1));
        let c5 = ctx(5);
        assert_eq!(ProjPoint::new(2.into(), AlgInt::OMEGA).unwrap().height_sq(&c5), int(5));
        assert!(ProjPoint::new(AlgInt::ZERO, AlgInt::ZERO).is_err());
    }

    #[test]
    fn canonical_form_and_involutions() {
        let c = ctx(3);
        let m = GroupElem::new(&c, (-1).into(), AlgInt::ZERO, AlgInt::new(2, 1), (-1).into()).unwrap();
        assert!(m.alpha().is_lex_positive());
        assert_eq!(m.compose(&c, &m.inverse()), GroupElem::IDENTITY);
        assert_eq!(m.inverse().inverse(), m);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.inverse().transpose(), m.transpose().inverse());
        assert!(GroupElem::new(&c, 2.into(), AlgInt::ZERO, AlgInt::ZERO, 1.into()).is_err());
        assert_eq!(
            GroupElem::new(&c, AlgInt::ZERO, (-1).into(), AlgInt::ONE, AlgInt::ZERO).unwrap(),
            GroupElem::INVOLUTION
        );
    }

    #[test]
    fn rejects_nonpositive_height() {
        assert_eq!(Point::new(FieldElem::zero(), int(0)), Err(Error::NonPositiveHeight));
        assert_eq!(Point::new(FieldElem::zero(), int(-1)), Err(Error::NonPositiveHeight));
    }
}
