#![allow(dead_code)]

use std::collections::BTreeSet;
use std::ops::{Add, Mul, Sub};

use bianchi::geometry::{GroupElem, Point};
use bianchi::hermitian::HermitianForm;
use bianchi::ring::{int, rat, AlgInt, FieldElem, Rational, RingContext};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn ctx(d: i64) -> RingContext {
    RingContext::new(d).unwrap()
}

// ---------------------------------------------------------------------------
// Quaternion oracle for the action.
//
// In the algebra (−d, −s) over Q with basis e0 = 1, e1 = √d·i, e2 = t·j,
// e3 = t√d·k a point (z, t) is real(z)·e0 + root(z)·e1 + e2, and the action
// is P ↦ (aP + b)(cP + d)⁻¹. Only s = t² ever appears.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct Quat {
    pub c: [Rational; 4],
    d: Rational,
    s: Rational,
}

impl Quat {
    pub fn new(c: [Rational; 4], d: i64, s: &Rational) -> Self {
        Quat { c, d: int(d), s: s.clone() }
    }

    fn from_field(z: &FieldElem, d: i64, s: &Rational) -> Self {
        Quat::new([z.real.clone(), z.root.clone(), int(0), int(0)], d, s)
    }

    fn norm(&self) -> Rational {
        let [c0, c1, c2, c3] = &self.c;
        c0 * c0 + &self.d * c1 * c1 + &self.s * c2 * c2 + &self.d * &self.s * c3 * c3
    }

    fn inverse(&self) -> Quat {
        let n = self.norm();
        let [c0, c1, c2, c3] = &self.c;
        Quat {
            c: [c0 / &n, -c1 / &n, -c2 / &n, -c3 / &n],
            d: self.d.clone(),
            s: self.s.clone(),
        }
    }
}

impl Add for &Quat {
    type Output = Quat;
    fn add(self, o: &Quat) -> Quat {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&o.c) {
            *x += y;
        }
        Quat { c, d: self.d.clone(), s: self.s.clone() }
    }
}

impl Sub for &Quat {
    type Output = Quat;
    fn sub(self, o: &Quat) -> Quat {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&o.c) {
            *x -= y;
        }
        Quat { c, d: self.d.clone(), s: self.s.clone() }
    }
}

impl Mul for &Quat {
    type Output = Quat;
    fn mul(self, o: &Quat) -> Quat {
        let (d, s) = (&self.d, &self.s);
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &o.c;
        // e1² = −d, e2² = −s, e3² = −ds; e1e2 = e3 = −e2e1;
        // e2e3 = s·e1 = −e3e2; e3e1 = d·e2 = −e1e3.
        let c0 = a0 * b0 - d * a1 * b1 - s * a2 * b2 - d * s * a3 * b3;
        let c1 = a0 * b1 + a1 * b0 + s * a2 * b3 - s * a3 * b2;
        let c2 = a0 * b2 + a2 * b0 - d * a1 * b3 + d * a3 * b1;
        let c3 = a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1;
        Quat { c: [c0, c1, c2, c3], d: d.clone(), s: s.clone() }
    }
}

/// `(aP + b)(cP + d)⁻¹`, read back as `(z', s')`.
pub fn quaternion_apply(ctx: &RingContext, g: &GroupElem, p: &Point) -> Point {
    let d = ctx.d();
    let s = &p.s;
    let q = |x: AlgInt| Quat::from_field(&ctx.to_field(x), d, s);
    let pt = Quat::new([p.z.real.clone(), p.z.root.clone(), int(1), int(0)], d, s);
    let [a, b, c, dd] = g.entries();
    let num = &(&q(a) * &pt) + &q(b);
    let den = &(&q(c) * &pt) + &q(dd);
    let r = &num * &den.inverse();
    assert!(r.c[3].is_zero(), "k-component must vanish");
    assert!(r.c[2].is_positive(), "image stays in the upper half-space");
    let s_new = &r.c[2] * &r.c[2] * s;
    Point::new(FieldElem::new(r.c[0].clone(), r.c[1].clone()), s_new).unwrap()
}

pub fn quat_sanity(d: i64) -> bool {
    let s = rat(3, 7);
    let e = |i: usize| {
        let mut c = [int(0), int(0), int(0), int(0)];
        c[i] = int(1);
        Quat::new(c, d, &s)
    };
    let (e1, e2, e3) = (e(1), e(2), e(3));
    let neg = |x: &Quat| &Quat::new([int(0), int(0), int(0), int(0)], d, &s) - x;
    (&e1 * &e2) == e3
        && (&e2 * &e1) == neg(&e3)
        && (&e1 * &e1).c[0] == int(-d)
        && (&e3 * &e3).c[0] == -int(d) * &s
}

// ---------------------------------------------------------------------------
// Exhaustive oracle for W_d(T).
// ---------------------------------------------------------------------------

/// All elements of norm at most `t_sq`, by scanning a coordinate box.
pub fn small_elements(ctx: &RingContext, t_sq: i64) -> Vec<AlgInt> {
    let r = 2 * t_sq + 2;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let x = AlgInt::new(a, b);
            if ctx.norm(x) <= t_sq {
                out.push(x);
            }
        }
    }
    out
}

pub fn brute_force_w(ctx: &RingContext, t_sq: i64) -> BTreeSet<GroupElem> {
    let els = small_elements(ctx, t_sq);
    let mut out = BTreeSet::new();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    if let Ok(g) = GroupElem::new(ctx, a, b, c, d) {
                        out.insert(g);
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Random inputs.
// ---------------------------------------------------------------------------

pub fn random_rational(rng: &mut ChaCha8Rng, lo: f64, hi: f64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range((lo * den as f64).ceil() as i64..=(hi * den as f64).floor() as i64);
    rat(num, den)
}

/// `|z| ≤ 10` and `s ∈ [1/100, 100]`, log-uniform in `s`.
pub fn random_point(rng: &mut ChaCha8Rng, d: i64) -> Point {
    let ybound = 7.0 / (d as f64).sqrt();
    let real = random_rational(rng, -7.0, 7.0, 40);
    let root = random_rational(rng, -ybound, ybound, 40);
    let den = rng.gen_range(1..=100i64);
    let target = 10f64.powf(rng.gen_range(-2.0..=2.0));
    let lo = (den as f64 / 100.0).ceil() as i64;
    let hi = 100 * den;
    let num = ((target * den as f64).round() as i64).clamp(lo.max(1), hi);
    Point::new(FieldElem::new(real, root), rat(num, den)).unwrap()
}

pub fn random_alg_int(rng: &mut ChaCha8Rng, bound: i64) -> AlgInt {
    AlgInt::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

pub fn random_coprime_pair(rng: &mut ChaCha8Rng, ctx: &RingContext, bound: i64) -> (AlgInt, AlgInt) {
    loop {
        let (a, b) = (random_alg_int(rng, bound), random_alg_int(rng, bound));
        if !a.is_zero() && !b.is_zero() && ctx.is_coprime(a, b).unwrap() {
            return (a, b);
        }
    }
}

/// A product of `len` random generators: translations by small `λ`, the
/// involution, and diagonal unit matrices.
pub fn random_group_elem(rng: &mut ChaCha8Rng, ctx: &RingContext, len: usize) -> GroupElem {
    let mut g = GroupElem::IDENTITY;
    for _ in 0..len {
        let step = match rng.gen_range(0..3) {
            0 => {
                let l = random_alg_int(rng, 2);
                GroupElem::new(ctx, AlgInt::ONE, l, AlgInt::ZERO, AlgInt::ONE).unwrap()
            }
            1 => GroupElem::INVOLUTION,
            _ => {
                let u = ctx.units()[rng.gen_range(0..ctx.unit_count())];
                GroupElem::new(ctx, u, AlgInt::ZERO, AlgInt::ZERO, ctx.conj(u)).unwrap()
            }
        };
        g = g.compose(ctx, &step);
    }
    g
}

pub fn random_definite_form(rng: &mut ChaCha8Rng, ctx: &RingContext) -> HermitianForm {
    loop {
        let b = random_alg_int(rng, 6);
        let a = rng.gen_range(1..=40);
        let dd = rng.gen_range(1..=40);
        let f = HermitianForm::new(a, b, dd);
        if f.is_positive_definite(ctx) {
            return f;
        }
    }
}
