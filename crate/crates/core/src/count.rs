//! Counting elements of `PSL(2, O_d)` and principal projective points of
//! bounded height.
//!
//! A single pass at the largest bound fills histograms indexed by the squared
//! height, so a whole table of bounds costs one enumeration. Elements are
//! enumerated through their first column `(α, γ)`: every coprime pair has the
//! completions `(β₀ + λα, δ₀ + λγ)`, `λ ∈ O_d`, and `λ` is confined to a disk
//! around `−β₀/α` (or `−δ₀/γ`, whichever of `α, γ` is larger).

use std::cmp::Ordering;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GroupElem, ProjPoint};
use crate::ring::disk_points;
use crate::ring::{int, lattice_points_in_disk, AlgInt, FieldElem, OmegaMode, Rational, RingContext};

type Q = Ratio<i128>;

/// Per-height counts, `index = H²`, up to `t_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histograms {
    pub t_max: i64,
    /// Elements of `W_d` with `H(τ)² = h`.
    pub w: Vec<u64>,
    /// Those among them with `H(τ) = H(φ_d(τ))`.
    pub w_tilde: Vec<u64>,
    /// Canonical (mod ±1) coprime pairs with `max(|x|², |y|²) = h`.
    pub pairs: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub t_sq: i64,
    pub n: u64,
    pub n_tilde: u64,
    pub x: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub slope_n: f64,
    pub slope_x: f64,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountTable {
    pub d: i64,
    pub rows: Vec<CountRow>,
    pub fitted_exponent: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub t_sq: i64,
    /// Largest integer `h` with `h·C_d² ≤ T²`.
    pub h_lower: i64,
    pub x_lower: u64,
    pub n: u64,
    pub n_tilde: u64,
    pub x: u64,
    pub holds: bool,
    /// `Ñ_d(T)/#X_d(T)`.
    pub tilde_over_x: Rational,
}

fn check_bound(t_sq: i64) -> Result<()> {
    if t_sq < 1 {
        Err(Error::HeightBoundTooSmall(t_sq))
    } else {
        Ok(())
    }
}

fn coords(mode: OmegaMode, x: AlgInt) -> (i128, i128, i128) {
    // (real, root) = (num_re, num_root) / den
    match mode {
        OmegaMode::SqrtMinusD => (x.a as i128, x.b as i128, 1),
        OmegaMode::HalfInteger => (2 * x.a as i128 - x.b as i128, x.b as i128, 2),
    }
}

/// Every element of norm at most `t_sq`, sorted.
fn first_coordinates(ctx: &RingContext, t_sq: i64) -> Vec<AlgInt> {
    let mut xs = lattice_points_in_disk(ctx, &FieldElem::zero(), &int(t_sq));
    xs.sort();
    xs
}

fn is_canonical_pair(x: AlgInt, y: AlgInt) -> bool {
    if x.is_zero() {
        y.is_lex_positive()
    } else {
        x.is_lex_positive()
    }
}

struct Partial {
    w: Vec<u64>,
    w_tilde: Vec<u64>,
    pairs: Vec<u64>,
}

impl Partial {
    fn new(len: usize) -> Self {
        Partial { w: vec![0; len], w_tilde: vec![0; len], pairs: vec![0; len] }
    }

    fn merge(mut self, other: Partial) -> Partial {
        for (v, o) in [(&mut self.w, &other.w), (&mut self.w_tilde, &other.w_tilde), (&mut self.pairs, &other.pairs)] {
            for (a, b) in v.iter_mut().zip(o) {
                *a += b;
            }
        }
        self
    }
}

/// Visits every element of `W_d(T)` with first column `(α, γ)`, passing the
/// completion `(β, δ)` and the squared height.
fn completions(
    ctx: &RingContext,
    t_sq: i64,
    alpha: AlgInt,
    gamma: AlgInt,
    mut f: impl FnMut(AlgInt, AlgInt, i64),
) -> Result<bool> {
    let (x, y) = match ctx.any_bezout(alpha, gamma) {
        Ok(xy) => xy,
        Err(Error::NotCoprime(..)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let (beta0, delta0) = (-y, x);
    let (na, ng) = (ctx.norm(alpha), ctx.norm(gamma));
    let (lead, lead_base, lead_norm) = if na >= ng { (alpha, beta0, na) } else { (gamma, delta0, ng) };
    // λ with |lead_base + λ·lead|² ≤ T², i.e. |λ + lead_base/lead|² ≤ T²/|lead|².
    let (re, ro, den) = coords(ctx.mode(), ctx.mul(lead_base, ctx.conj(lead)));
    let scale = den * lead_norm as i128;
    let center_re = Q::new(-re, scale);
    let center_ro = Q::new(-ro, scale);
    let radius = Q::new(t_sq as i128, lead_norm as i128);
    for lambda in disk_points(ctx.d(), ctx.mode(), &center_re, &center_ro, &radius) {
        let beta = beta0 + ctx.mul(lambda, alpha);
        let delta = delta0 + ctx.mul(lambda, gamma);
        let (nb, nd) = (ctx.norm(beta), ctx.norm(delta));
        if nb > t_sq || nd > t_sq {
            continue;
        }
        f(beta, delta, na.max(ng).max(nb).max(nd));
    }
    Ok(true)
}

fn scan(ctx: &RingContext, t_sq: i64, alpha: AlgInt, ys: &[AlgInt], acc: &mut Partial) -> Result<()> {
    let na = ctx.norm(alpha);
    for &gamma in ys {
        if !is_canonical_pair(alpha, gamma) {
            continue;
        }
        let col = na.max(ctx.norm(gamma));
        let coprime = completions(ctx, t_sq, alpha, gamma, |_, _, h| {
            acc.w[h as usize] += 1;
            if h == col {
                acc.w_tilde[h as usize] += 1;
            }
        })?;
        if coprime {
            acc.pairs[col as usize] += 1;
        }
    }
    Ok(())
}

/// One enumeration pass at `t_max`, split across `workers` threads by first
/// coordinate. Totals do not depend on the partition.
pub fn histograms(ctx: &RingContext, t_max: i64, workers: Option<usize>) -> Result<Histograms> {
    check_bound(t_max)?;
    let xs = first_coordinates(ctx, t_max);
    let len = t_max as usize + 1;
    let run = || {
        xs.par_iter()
            .map(|&alpha| {
                let mut acc = Partial::new(len);
                scan(ctx, t_max, alpha, &xs, &mut acc).map(|_| acc)
            })
            .try_reduce(|| Partial::new(len), |a, b| Ok(a.merge(b)))
    };
    let total = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Parse(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(Histograms { t_max, w: total.w, w_tilde: total.w_tilde, pairs: total.pairs })
}

impl Histograms {
    fn cumulative(v: &[u64], t_sq: i64) -> u64 {
        let end = (t_sq.max(0) as usize).min(v.len() - 1);
        v[..=end].iter().sum()
    }

    pub fn n(&self, t_sq: i64) -> u64 {
        Self::cumulative(&self.w, t_sq)
    }

    pub fn n_tilde(&self, t_sq: i64) -> u64 {
        Self::cumulative(&self.w_tilde, t_sq)
    }

    /// `#X_d(T)`: each point has `|O_d^*|/2` canonical coprime representatives.
    pub fn x(&self, ctx: &RingContext, t_sq: i64) -> u64 {
        let orbit = ctx.unit_count() as u64 / 2;
        let pairs = Self::cumulative(&self.pairs, t_sq);
        debug_assert_eq!(pairs % orbit, 0);
        pairs / orbit
    }

    pub fn row(&self, ctx: &RingContext, t_sq: i64) -> CountRow {
        CountRow { t_sq, n: self.n(t_sq), n_tilde: self.n_tilde(t_sq), x: self.x(ctx, t_sq) }
    }
}

/// `N_d(T) = #W_d(T)`, `T² = t_sq`.
pub fn enumerate_w(ctx: &RingContext, t_sq: i64) -> Result<u64> {
    Ok(histograms(ctx, t_sq, None)?.n(t_sq))
}

pub fn enumerate_n_tilde(ctx: &RingContext, t_sq: i64) -> Result<u64> {
    Ok(histograms(ctx, t_sq, None)?.n_tilde(t_sq))
}

pub fn enumerate_x(ctx: &RingContext, t_sq: i64) -> Result<u64> {
    Ok(histograms(ctx, t_sq, None)?.x(ctx, t_sq))
}

/// The elements of `W_d(T)` themselves, sorted. Meant for small `T`.
pub fn collect_w(ctx: &RingContext, t_sq: i64) -> Result<Vec<GroupElem>> {
    check_bound(t_sq)?;
    let xs = first_coordinates(ctx, t_sq);
    let mut out = Vec::new();
    for &alpha in &xs {
        for &gamma in &xs {
            if !is_canonical_pair(alpha, gamma) {
                continue;
            }
            let mut found = Vec::new();
            completions(ctx, t_sq, alpha, gamma, |b, d, _| found.push((b, d)))?;
            for (beta, delta) in found {
                out.push(GroupElem::new(ctx, alpha, beta, gamma, delta)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `#X_d(T)` counted directly: a coprime pair is kept when its first nonzero
/// coordinate is the least element of its unit orbit.
pub fn enumerate_x_direct(ctx: &RingContext, t_sq: i64) -> Result<u64> {
    check_bound(t_sq)?;
    let xs = first_coordinates(ctx, t_sq);
    let least = |v: AlgInt| ctx.units().iter().map(|&u| ctx.mul(u, v)).min().expect("units");
    let mut count = 0;
    for &x in &xs {
        for &y in &xs {
            let lead = if x.is_zero() { y } else { x };
            if lead.is_zero() || least(lead) != lead {
                continue;
            }
            if ctx.is_coprime(x, y)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// A right inverse of `φ_d(τ) = (α : γ)` on principal points, with
/// `H(ψ(P))² ≤ C_d²·H(P)²` checked exactly.
pub fn psi(ctx: &RingContext, q: &ProjPoint) -> Result<GroupElem> {
    let g = if q.y.is_zero() {
        GroupElem::IDENTITY
    } else if q.x.is_zero() {
        GroupElem::INVOLUTION
    } else {
        let gen = ctx
            .principal_generator(q.x, q.y)?
            .ok_or(Error::NotPrincipal(q.x, q.y))?;
        let x = ctx.exact_div(q.x, gen).expect("generator divides x");
        let y = ctx.exact_div(q.y, gen).expect("generator divides y");
        let (u, v) = ctx.bezout_bounded(x, y)?;
        GroupElem::new(ctx, x, -v, y, u)?
    };
    let h = q.height_sq(ctx);
    if ctx.c_d_sq().scale(&h).cmp_rational(&int(g.height_sq(ctx))) == Ordering::Less {
        return Err(Error::InequalityViolated(format!("H(ψ({}:{}))", q.x, q.y)));
    }
    Ok(g)
}

/// Largest integer `h ≥ 0` with `h·C_d² ≤ t_sq`.
pub fn lower_height(ctx: &RingContext, t_sq: i64) -> i64 {
    let c2 = ctx.c_d_sq();
    let fits = |h: i64| c2.scale(&int(h)).cmp_rational(&int(t_sq)) != Ordering::Greater;
    let mut h = (t_sq as f64 / c2.to_f64()).floor() as i64 + 1;
    while h > 0 && !fits(h) {
        h -= 1;
    }
    while fits(h + 1) {
        h += 1;
    }
    h
}

/// `#X_d(T/C_d) ≤ N_d(T) ≤ 4·Ñ_d(T)`, decided exactly.
pub fn sandwich_from(ctx: &RingContext, hist: &Histograms, t_sq: i64) -> SandwichReport {
    let h_lower = lower_height(ctx, t_sq);
    let x_lower = if h_lower >= 1 { hist.x(ctx, h_lower) } else { 0 };
    let row = hist.row(ctx, t_sq);
    SandwichReport {
        t_sq,
        h_lower,
        x_lower,
        n: row.n,
        n_tilde: row.n_tilde,
        x: row.x,
        holds: x_lower <= row.n && row.n <= 4 * row.n_tilde,
        tilde_over_x: Rational::new((row.n_tilde as i64).into(), (row.x as i64).into()),
    }
}

pub fn sandwich_check(ctx: &RingContext, t_sq: i64) -> Result<SandwichReport> {
    let hist = histograms(ctx, t_sq, None)?;
    Ok(sandwich_from(ctx, &hist, t_sq))
}

/// Counts for every bound in `grid` from one pass at the largest.
pub fn count_table(ctx: &RingContext, grid: &[i64], workers: Option<usize>) -> Result<(CountTable, Vec<SandwichReport>)> {
    let t_max = *grid.iter().max().ok_or(Error::TooFewRows(0))?;
    let hist = histograms(ctx, t_max, workers)?;
    let rows: Vec<CountRow> = grid.iter().map(|&t| hist.row(ctx, t)).collect();
    let sandwich = grid.iter().map(|&t| sandwich_from(ctx, &hist, t)).collect();
    let fitted_exponent = fit_growth(&rows).ok().map(|f| f.slope_n);
    Ok((CountTable { d: ctx.d(), rows, fitted_exponent }, sandwich))
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Least-squares slopes of `log N` and `log X` against `log T`.
pub fn fit_growth(rows: &[CountRow]) -> Result<GrowthFit> {
    if rows.len() < 4 || rows.windows(2).any(|w| w[0].t_sq >= w[1].t_sq) {
        return Err(Error::TooFewRows(rows.len()));
    }
    let log_t: Vec<f64> = rows.iter().map(|r| 0.5 * (r.t_sq as f64).ln()).collect();
    let log_n: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let log_x: Vec<f64> = rows.iter().map(|r| (r.x as f64).ln()).collect();
    Ok(GrowthFit { slope_n: slope(&log_t, &log_n), slope_x: slope(&log_t, &log_x), rows: rows.len() })
}
