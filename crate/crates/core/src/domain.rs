//! Membership in the floor region `B_d`, the polygon `P_d` and the standard
//! fundamental domain `F_d = {(z, t) ∈ B_d : z ∈ P_d}`. All boundaries are
//! closed.

use num_traits::{One, Signed, Zero};

use crate::geometry::Point;
use crate::ring::{int, lattice_points_in_disk, rat, AlgInt, FieldElem, OmegaMode, Rational, RingContext};

/// Minimiser of `|γz + δ|² + |γ|²t²` over coprime pairs `(γ, δ)`.
///
/// `m_star` equals `μ′_d(z, t)·t`; it is at most 1 because `(0, 1)` is a
/// candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuWitness {
    pub gamma0: AlgInt,
    pub delta0: AlgInt,
    pub m_star: Rational,
}

fn pair_value(ctx: &RingContext, p: &Point, gamma: AlgInt, delta: AlgInt) -> Rational {
    let d = ctx.d();
    let v = &ctx.to_field(gamma).mul(&p.z, d) + &ctx.to_field(delta);
    v.norm(d) + int(ctx.norm(gamma)) * &p.s
}

fn gammas(ctx: &RingContext, p: &Point) -> Vec<AlgInt> {
    let mut gs = lattice_points_in_disk(ctx, &FieldElem::zero(), &p.s.recip());
    gs.sort_by_key(|&g| (ctx.norm(g), g));
    gs
}

/// Every coprime pair `(γ, δ)` with `|γ|²t² ≤ 1` and `|γz + δ|² ≤ 1`.
///
/// Any pair beating `(0, 1)` lies in this set, so it contains all minimisers.
pub fn enumerate_candidates(ctx: &RingContext, p: &Point) -> Vec<(AlgInt, AlgInt)> {
    let d = ctx.d();
    let mut out = Vec::new();
    for gamma in gammas(ctx, p) {
        let center = -&ctx.to_field(gamma).mul(&p.z, d);
        for delta in lattice_points_in_disk(ctx, &center, &Rational::one()) {
            if !(gamma.is_zero() && delta.is_zero()) && ctx.is_coprime(gamma, delta).unwrap_or(false) {
                out.push((gamma, delta));
            }
        }
    }
    out
}

type WitnessKey = (Rational, i64, AlgInt, AlgInt);

/// The exact minimiser, ties broken by `(|γ|², γ, δ)` lexicographically.
///
/// Searches the same region as [`enumerate_candidates`], shrinking the
/// `δ`-disk to the best value found so far. The `γ`-disk is walked in
/// annuli of growing radius so that low points with a small minimum stop
/// long before `|γ|² = 1/t²`.
pub fn mu_witness(ctx: &RingContext, p: &Point) -> MuWitness {
    let d = ctx.d();
    let key = |g: AlgInt, dl: AlgInt| -> WitnessKey { (pair_value(ctx, p, g, dl), ctx.norm(g), g, dl) };
    let bound = |best: &Option<WitnessKey>| best.as_ref().map(|b| b.0.clone()).unwrap_or_else(Rational::one);
    let mut best: Option<WitnessKey> = None;
    let mut inner: Option<Rational> = None;
    let mut outer = int(4);
    loop {
        let limit = bound(&best) / &p.s;
        let cap = if outer < limit { outer.clone() } else { limit };
        let mut gs: Vec<AlgInt> = lattice_points_in_disk(ctx, &FieldElem::zero(), &cap)
            .into_iter()
            .filter(|&g| inner.as_ref().is_none_or(|r| int(ctx.norm(g)) > *r))
            .collect();
        gs.sort_by_key(|&g| (ctx.norm(g), g));
        for gamma in gs {
            let radius = bound(&best) - int(ctx.norm(gamma)) * &p.s;
            if radius.is_negative() {
                // γ are sorted by norm, so every later γ is worse too.
                break;
            }
            let center = -&ctx.to_field(gamma).mul(&p.z, d);
            for delta in lattice_points_in_disk(ctx, &center, &radius) {
                if gamma.is_zero() && delta.is_zero() {
                    continue;
                }
                let k = key(gamma, delta);
                if best.as_ref().is_some_and(|b| k >= *b) {
                    continue;
                }
                if ctx.is_coprime(gamma, delta).unwrap_or(false) {
                    best = Some(k);
                }
            }
        }
        if cap >= bound(&best) / &p.s {
            break;
        }
        inner = Some(cap);
        outer = &outer * int(4);
    }
    let (m_star, _, gamma0, delta0) = best.expect("(0, 1) is always a candidate");
    MuWitness { gamma0, delta0, m_star }
}

/// `z ∈ P_d`, with `z = x + iy`, `x = real`, `y = root·√d`.
pub fn in_p(ctx: &RingContext, z: &FieldElem) -> bool {
    let x = &z.real;
    let b = &z.root;
    let zero = Rational::zero();
    let one = Rational::one();
    match ctx.d() {
        1 => {
            let half = rat(1, 2);
            x.abs() <= half && *b >= zero && *b <= half
        }
        3 => {
            // y = b√3: x/√3 ≤ y ⇔ x ≤ 3b, and so on.
            let three_b = b * int(3);
            let upper = x >= &zero && *x <= three_b && three_b <= &one - x;
            let lower = x >= &zero && *x <= rat(1, 2) && -x.clone() <= three_b && three_b <= *x;
            upper || lower
        }
        _ => {
            let b_max = match ctx.mode() {
                OmegaMode::SqrtMinusD => one.clone(),
                OmegaMode::HalfInteger => rat(1, 2),
            };
            *x >= zero && *x <= one && *b >= zero && *b <= b_max
        }
    }
}

/// `(z, t) ∈ B_d`: `|cz + d|² + |c|²t² ≥ 1` for every coprime pair.
pub fn in_b(ctx: &RingContext, p: &Point) -> bool {
    mu_witness(ctx, p).m_star >= Rational::one()
}

pub fn in_f(ctx: &RingContext, p: &Point) -> bool {
    in_p(ctx, &p.z) && in_b(ctx, p)
}
