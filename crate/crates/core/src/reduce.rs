//! Reduction of points of hyperbolic 3-space into `F_d` with an explicit
//! group element and an exactly checked height certificate
//! `H(γ)² ≤ (16·C_d²)²·D(z, t)⁴`.
//!
//! Reduction happens in two steps: lift the point into `B_d` with a matrix
//! whose bottom row minimises `|γz + δ|² + |γ|²t²`, then slide it into `P_d`
//! with an element of the stabiliser of `∞`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::domain::{in_b, in_f, in_p, mu_witness, MuWitness};
use crate::error::{Error, Result};
use crate::geometry::{GroupElem, Point};
use crate::ring::{
    int, lattice_points_in_disk, rat, sqrt_le_sqrt_plus, AlgInt, FieldElem, OmegaMode, Rational,
    RingContext, SurdValue,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    #[serde(rename = "already_in_F")]
    AlreadyInF,
    UnitColumn,
    General,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::AlreadyInF => "already_in_F",
            Branch::UnitColumn => "unit_column",
            Branch::General => "general",
        })
    }
}

/// A reduction of a point into `F_d` together with its checked height bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub gamma: GroupElem,
    pub image: Point,
    pub d_sq: Rational,
    pub height_sq: i64,
    pub bound_ok: bool,
    pub branch: Branch,
}

/// The first step: `tau` moves the point into `B_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorLift {
    pub tau: GroupElem,
    pub image: Point,
    pub witness: MuWitness,
    pub branch: Branch,
}

/// `(16·C_d²)²`.
pub fn certificate_constant(ctx: &RingContext) -> SurdValue {
    let c2 = ctx.c_d_sq();
    let c4 = &c2 * &c2;
    c4.scale(&int(256))
}

/// `height_sq ≤ (16·C_d²)²·D²²`, decided exactly.
pub fn certificate_bound_holds(ctx: &RingContext, height_sq: i64, d_sq: &Rational) -> bool {
    certificate_constant(ctx)
        .scale(&(d_sq * d_sq))
        .cmp_rational(&int(height_sq))
        != Ordering::Less
}

fn violated(what: impl Into<String>) -> Error {
    Error::InequalityViolated(what.into())
}

/// Lifts `p` into `B_d`.
///
/// The bottom row of `tau` is the `μ`-witness `(γ₀, δ₀)`, so the image has
/// `t'² = t²/m*²`. With `γ₀, δ₀ ≠ 0` the top row comes from bounded Bézout and
/// the chain `|γ₀|² ≤ H(τ)² ≤ 4·C_d²·|γ₀|²·D²` is checked; when one of them
/// vanishes a height-one element suffices.
pub fn reduce_to_b(ctx: &RingContext, p: &Point) -> Result<FloorLift> {
    let w = mu_witness(ctx, p);
    let d_sq = p.d_sq(ctx);
    if w.m_star >= Rational::one() {
        return Ok(FloorLift {
            tau: GroupElem::IDENTITY,
            image: p.clone(),
            witness: w,
            branch: Branch::UnitColumn,
        });
    }
    let (tau, branch) = if w.delta0.is_zero() {
        (unit_column_lift(ctx, p, &w)?, Branch::UnitColumn)
    } else {
        let (gamma0, delta0) = (w.gamma0, w.delta0);
        let (x, y) = ctx.bezout_bounded(gamma0, delta0)?;
        // γ₀x + δ₀y = 1, so [[y, −x], [γ₀, δ₀]] has determinant one.
        let tau = GroupElem::new(ctx, y, -x, gamma0, delta0)?;
        let c2 = ctx.c_d_sq();
        let ng = ctx.norm(gamma0);
        let h = tau.height_sq(ctx);
        let upper = c2.scale(&(int(4 * ng) * &d_sq));
        if h < ng || upper.cmp_rational(&int(h)) == Ordering::Less {
            return Err(violated(format!("matrix height chain for {tau} at {p}")));
        }
        (tau, Branch::General)
    };
    let image = tau.apply(ctx, p);
    if image.s != &p.s / (&w.m_star * &w.m_star) {
        return Err(violated("lifted height differs from t²/m*²"));
    }
    if branch == Branch::General {
        // |z'|² ≤ 9·C_d²·D²/|γ₀|²
        let bound = ctx
            .c_d_sq()
            .scale(&(int(9) * &d_sq / int(ctx.norm(w.gamma0))));
        if bound.cmp_rational(&image.z.norm(ctx.d())) == Ordering::Less {
            return Err(violated(format!("|z'| bound after lifting {p}")));
        }
    }
    Ok(FloorLift { tau, image, witness: w, branch })
}

/// Height-one lift when the witness is `(u, 0)` with `u` a unit: the least
/// canonical `[[α, −u⁻¹], [u, 0]]` with `α ∈ {0} ∪ O_d^*` whose image lies in `B_d`.
fn unit_column_lift(ctx: &RingContext, p: &Point, w: &MuWitness) -> Result<GroupElem> {
    let mut tops = vec![AlgInt::ZERO];
    tops.extend_from_slice(ctx.units());
    let mut cands: Vec<GroupElem> = Vec::new();
    for &u in ctx.units() {
        for &alpha in &tops {
            cands.push(GroupElem::new(ctx, alpha, -ctx.conj(u), u, AlgInt::ZERO)?);
        }
    }
    cands.sort();
    cands.dedup();
    let target = &p.s / (&w.m_star * &w.m_star);
    cands
        .into_iter()
        .find(|g| {
            let img = g.apply(ctx, p);
            img.s == target && in_b(ctx, &img)
        })
        .ok_or_else(|| violated("no height-one lift for a unit witness"))
}

/// `max |w|²` over `w ∈ P_d`.
pub fn polygon_radius_sq(ctx: &RingContext) -> Rational {
    match (ctx.d(), ctx.mode()) {
        (1, _) => rat(1, 2),
        (3, _) => rat(1, 3),
        (d, OmegaMode::SqrtMinusD) => int(1 + d),
        (d, OmegaMode::HalfInteger) => rat(4 + d, 4),
    }
}

/// Squared constant `K_d² = max(C_d, ρ_d)²` in `H(σ) ≤ |z| + K_d`, where
/// `ρ_d` is the radius of `P_d` about the origin.
pub fn translation_constant_sq(ctx: &RingContext) -> SurdValue {
    let c2 = ctx.c_d_sq();
    let rho2 = polygon_radius_sq(ctx);
    if c2.cmp_rational(&rho2) == Ordering::Less {
        ctx.surd(rho2)
    } else {
        c2
    }
}

/// An element `z ↦ u²z + uμ` of the stabiliser of `∞` taking `z` into `P_d`.
///
/// For `d ∉ {1, 3}` this is the translation by the floor of `z` in the cell;
/// for `d ∈ {1, 3}` every unit rotation is tried with every translation that
/// could land in `P_d`, keeping the lowest (then least) element.
pub fn translate_to_p(ctx: &RingContext, z: &FieldElem) -> Result<GroupElem> {
    if in_p(ctx, z) {
        return Ok(GroupElem::IDENTITY);
    }
    let sigma = match ctx.d() {
        1 | 3 => rotation_search(ctx, z)?,
        _ => {
            let floor = |q: &Rational| -> i64 {
                use num_traits::ToPrimitive;
                q.floor().to_integer().to_i64().expect("coordinate overflow")
            };
            let lambda = match ctx.mode() {
                OmegaMode::SqrtMinusD => AlgInt::new(floor(&z.real), floor(&z.root)),
                OmegaMode::HalfInteger => {
                    let b = floor(&(&z.root * int(2)));
                    AlgInt::new(floor(&(&z.real + rat(b, 2))), b)
                }
            };
            GroupElem::new(ctx, AlgInt::ONE, -lambda, AlgInt::ZERO, AlgInt::ONE)?
        }
    };
    let image = sigma.apply(ctx, &Point::new(z.clone(), int(1))?);
    if !in_p(ctx, &image.z) {
        return Err(violated(format!("translation {sigma} missed P_d")));
    }
    let h = int(sigma.height_sq(ctx));
    if !sqrt_le_sqrt_plus(&h, &z.norm(ctx.d()), &translation_constant_sq(ctx)) {
        return Err(violated(format!("translation height for {sigma}")));
    }
    Ok(sigma)
}

fn rotation_search(ctx: &RingContext, z: &FieldElem) -> Result<GroupElem> {
    let d = ctx.d();
    let rho2 = polygon_radius_sq(ctx);
    let mut best: Option<(i64, GroupElem)> = None;
    for &u in ctx.units() {
        let u_f = ctx.to_field(u);
        let w = u_f.mul(&u_f, d).mul(z, d);
        for nu in lattice_points_in_disk(ctx, &-&w, &rho2) {
            if !in_p(ctx, &(&w + &ctx.to_field(nu))) {
                continue;
            }
            // u·μ = ν
            let mu = ctx.mul(ctx.conj(u), nu);
            let g = GroupElem::new(ctx, u, mu, AlgInt::ZERO, ctx.conj(u))?;
            let key = (g.height_sq(ctx), g);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, g)| g)
        .ok_or_else(|| violated("P_d is a fundamental domain for the cusp stabiliser"))
}

/// Reduces `p` into `F_d` and checks the certificate.
pub fn reduce(ctx: &RingContext, p: &Point) -> Result<ReductionCertificate> {
    let d_sq = p.d_sq(ctx);
    if in_f(ctx, p) {
        return Ok(ReductionCertificate {
            gamma: GroupElem::IDENTITY,
            image: p.clone(),
            height_sq: 1,
            bound_ok: certificate_bound_holds(ctx, 1, &d_sq),
            d_sq,
            branch: Branch::AlreadyInF,
        });
    }
    let lift = reduce_to_b(ctx, p)?;
    let sigma = translate_to_p(ctx, &lift.image.z)?;
    let gamma = sigma.compose(ctx, &lift.tau);
    let image = sigma.apply(ctx, &lift.image);
    let height_sq = gamma.height_sq(ctx);
    if height_sq > 4 * sigma.height_sq(ctx) * lift.tau.height_sq(ctx) {
        return Err(violated("H(στ) ≤ 2·H(σ)·H(τ)"));
    }
    if gamma.apply(ctx, p) != image || !in_f(ctx, &image) {
        return Err(violated(format!("reduction of {p} did not land in F_d")));
    }
    Ok(ReductionCertificate {
        gamma,
        image,
        height_sq,
        bound_ok: certificate_bound_holds(ctx, height_sq, &d_sq),
        d_sq,
        branch: lift.branch,
    })
}

/// Upper bound `H(γ)²` on the squared intricacy of `p`.
pub fn intricacy_upper(ctx: &RingContext, p: &Point) -> Result<i64> {
    Ok(reduce(ctx, p)?.height_sq)
}

impl ReductionCertificate {
    /// Re-checks the certificate against the point it was issued for.
    pub fn verify(&self, ctx: &RingContext, original: &Point) -> Result<()> {
        if self.gamma.apply(ctx, original) != self.image {
            return Err(violated("γ does not map the point to the image"));
        }
        if original.d_sq(ctx) != self.d_sq {
            return Err(violated("D² does not match the point"));
        }
        self.verify_image(ctx)
    }

    /// Checks everything recoverable from the certificate alone; the original
    /// point is reconstructed as `γ⁻¹·image`.
    pub fn verify_standalone(&self, ctx: &RingContext) -> Result<()> {
        let original = self.gamma.inverse().apply(ctx, &self.image);
        self.verify(ctx, &original)
    }

    fn verify_image(&self, ctx: &RingContext) -> Result<()> {
        if self.gamma.height_sq(ctx) != self.height_sq {
            return Err(violated("height does not match γ"));
        }
        if !in_f(ctx, &self.image) {
            return Err(violated("image is not in F_d"));
        }
        if !certificate_bound_holds(ctx, self.height_sq, &self.d_sq) {
            return Err(violated("height exceeds (16·C_d²)²·D⁴"));
        }
        Ok(())
    }
}

/// The exact sharpness witness `σ_n = [[n, 1−n²], [−1, n]]` and the point
/// `((2n²−1)/(2n), t = 1/(2n))` it sends to `(0, n)`.
pub fn sharpness_witness(ctx: &RingContext, n: i64) -> Result<(GroupElem, Point)> {
    if n < 2 {
        return Err(Error::SharpnessIndex(n));
    }
    let sigma = GroupElem::new(
        ctx,
        AlgInt::from_int(n),
        AlgInt::from_int(1 - n * n),
        AlgInt::from_int(-1),
        AlgInt::from_int(n),
    )?;
    let p = Point::new(
        FieldElem::from_rational(rat(2 * n * n - 1, 2 * n)),
        rat(1, 4 * n * n),
    )?;
    if sigma.apply(ctx, &p) != Point::above_origin(int(n * n))?
        || sigma.height_sq(ctx) != (n * n - 1) * (n * n - 1)
        || p.d_sq(ctx) != int(4 * n * n)
    {
        return Err(violated(format!("sharpness identities for n = {n}")));
    }
    Ok((sigma, p))
}
