use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

use super::{AlgInt, FieldElem, OmegaMode, Rational, RingContext};

/// All `λ ∈ O_d` with `|λ − center|² ≤ radius_sq`, ordered by `(b, a)`.
pub fn lattice_points_in_disk(
    ctx: &RingContext,
    center: &FieldElem,
    radius_sq: &Rational,
) -> Vec<AlgInt> {
    disk_points(ctx.d(), ctx.mode(), &center.real, &center.root, radius_sq)
}

/// Disk enumeration over any exact rational type. The box bounds come from
/// integer square roots of floors, padded by one, and every candidate is
/// filtered exactly.
pub(crate) fn disk_points<T>(
    d: i64,
    mode: OmegaMode,
    real: &Ratio<T>,
    root: &Ratio<T>,
    radius_sq: &Ratio<T>,
) -> Vec<AlgInt>
where
    T: Integer + Signed + Clone + Roots + From<i64> + ToPrimitive,
{
    let mut out = Vec::new();
    if radius_sq.is_negative() {
        return out;
    }
    let dd = Ratio::from_integer(T::from(d));
    let two = Ratio::from_integer(T::from(2));
    let isqrt_floor = |x: &Ratio<T>| -> i64 {
        x.floor().to_integer().sqrt().to_i64().expect("disk too large")
    };
    let floor_i64 = |x: &Ratio<T>| -> i64 { x.floor().to_integer().to_i64().expect("disk too far") };
    let as_ratio = |n: i64| Ratio::from_integer(T::from(n));

    match mode {
        OmegaMode::SqrtMinusD => {
            let k = isqrt_floor(&(radius_sq.clone() / dd.clone()));
            let fb = floor_i64(root);
            for b in fb - k - 1..=fb + k + 1 {
                let db = as_ratio(b) - root.clone();
                let rem = radius_sq.clone() - dd.clone() * db.clone() * db;
                if rem.is_negative() {
                    continue;
                }
                let ka = isqrt_floor(&rem);
                let fa = floor_i64(real);
                for a in fa - ka - 1..=fa + ka + 1 {
                    let da = as_ratio(a) - real.clone();
                    if da.clone() * da <= rem {
                        out.push(AlgInt::new(a, b));
                    }
                }
            }
        }
        OmegaMode::HalfInteger => {
            // λ = a + bω has real part a − b/2 and root part b/2.
            let four = Ratio::from_integer(T::from(4));
            let k = isqrt_floor(&(radius_sq.clone() * four / dd.clone()));
            let fb = floor_i64(&(root.clone() * two.clone()));
            for b in fb - k - 1..=fb + k + 1 {
                let half_b = as_ratio(b) / two.clone();
                let db = half_b.clone() - root.clone();
                let rem = radius_sq.clone() - dd.clone() * db.clone() * db;
                if rem.is_negative() {
                    continue;
                }
                let ca = real.clone() + half_b;
                let ka = isqrt_floor(&rem);
                let fa = floor_i64(&ca);
                for a in fa - ka - 1..=fa + ka + 1 {
                    let da = as_ratio(a) - ca.clone();
                    if da.clone() * da <= rem {
                        out.push(AlgInt::new(a, b));
                    }
                }
            }
        }
    }
    out
}

impl RingContext {
    /// The lattice point nearest to `z`, ties broken by the lexicographically
    /// smallest `(a, b)`. The squared distance never exceeds `ε_d²`.
    pub fn round_to_lattice(&self, z: &FieldElem) -> AlgInt {
        let (x, y) = self.omega_coords(z);
        let half = Rational::new(1.into(), 2.into());
        let guess = AlgInt::new(
            (x + &half).floor().to_integer().to_i64().expect("coordinate overflow"),
            (y + &half).floor().to_integer().to_i64().expect("coordinate overflow"),
        );
        let dist = |l: AlgInt| (z - &self.to_field(l)).norm(self.d());
        let r = dist(guess);
        lattice_points_in_disk(self, z, &r)
            .into_iter()
            .map(|l| (dist(l), l))
            .min()
            .map(|(_, l)| l)
            .unwrap_or(guess)
    }
}
