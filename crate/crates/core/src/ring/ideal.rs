use super::{lattice_points_in_disk, AlgInt, FieldElem, RingContext};
use crate::error::{Error, Result};
use crate::ring::int;

/// Hermite normal form of the Z-module spanned by `α, αω, β, βω` inside
/// `O_d ≅ Z²`, together with the integer combinations producing each basis
/// row.
///
/// The basis is upper triangular, `[[h11, h12], [0, h22]]` with `h11, h22 > 0`
/// and `0 ≤ h12 < h22`; its determinant is the index of the module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    pub h11: i128,
    pub h12: i128,
    pub h22: i128,
    /// `coeffs[r][i]` multiplies generator `i` (in the order α, αω, β, βω)
    /// to form basis row `r`.
    pub coeffs: [[i128; 4]; 2],
}

impl IdealBasis {
    pub fn index(&self) -> i128 {
        self.h11 * self.h22
    }
}

struct Row {
    v: [i128; 2],
    c: [i128; 4],
}

impl Row {
    fn sub_mul(&mut self, other: &Row, q: i128) {
        for k in 0..2 {
            self.v[k] -= q * other.v[k];
        }
        for k in 0..4 {
            self.c[k] -= q * other.c[k];
        }
    }

    fn negate(&mut self) {
        self.v.iter_mut().for_each(|x| *x = -*x);
        self.c.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Euclid on column `col` over `rows[from..]`: leaves the gcd in `rows[from]`
/// and zeros below it.
fn clear_column(rows: &mut [Row], from: usize, col: usize) {
    loop {
        let pivot = (from..rows.len())
            .filter(|&i| rows[i].v[col] != 0)
            .min_by_key(|&i| rows[i].v[col].abs());
        let Some(p) = pivot else { return };
        rows.swap(from, p);
        let mut done = true;
        for i in from + 1..rows.len() {
            if rows[i].v[col] != 0 {
                let q = rows[i].v[col].div_euclid(rows[from].v[col]);
                let (head, tail) = rows.split_at_mut(i);
                tail[0].sub_mul(&head[from], q);
                if tail[0].v[col] != 0 {
                    done = false;
                }
            }
        }
        if done {
            return;
        }
    }
}

/// Index in `Z²` of the lattice spanned by `gens`, via HNF; `None` if rank < 2.
pub fn hnf_index(gens: &[[i128; 2]; 4]) -> Option<IdealBasis> {
    let mut rows: Vec<Row> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut c = [0; 4];
            c[i] = 1;
            Row { v: *g, c }
        })
        .collect();
    clear_column(&mut rows, 0, 0);
    clear_column(&mut rows, 1, 1);
    if rows[0].v[0] == 0 || rows[1].v[1] == 0 {
        return None;
    }
    if rows[0].v[0] < 0 {
        rows[0].negate();
    }
    if rows[1].v[1] < 0 {
        rows[1].negate();
    }
    let q = rows[0].v[1].div_euclid(rows[1].v[1]);
    let (head, tail) = rows.split_at_mut(1);
    head[0].sub_mul(&tail[0], q);
    Some(IdealBasis {
        h11: rows[0].v[0],
        h12: rows[0].v[1],
        h22: rows[1].v[1],
        coeffs: [rows[0].c, rows[1].c],
    })
}

impl RingContext {
    fn ideal_generators(&self, alpha: AlgInt, beta: AlgInt) -> [[i128; 2]; 4] {
        let w = AlgInt::OMEGA;
        [alpha, self.mul(alpha, w), beta, self.mul(beta, w)].map(|x| [x.a as i128, x.b as i128])
    }

    pub fn ideal_basis(&self, alpha: AlgInt, beta: AlgInt) -> Result<IdealBasis> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Ok(hnf_index(&self.ideal_generators(alpha, beta))
            .expect("a nonzero ideal of O_d has full rank"))
    }

    /// Absolute norm of the ideal `⟨α, β⟩`, i.e. its index in `O_d`.
    pub fn ideal_norm(&self, alpha: AlgInt, beta: AlgInt) -> Result<i64> {
        let b = self.ideal_basis(alpha, beta)?;
        Ok(i64::try_from(b.index()).expect("ideal norm overflow"))
    }

    pub fn is_coprime(&self, alpha: AlgInt, beta: AlgInt) -> Result<bool> {
        Ok(self.ideal_norm(alpha, beta)? == 1)
    }

    /// Some `(x0, y0)` with `α·x0 + β·y0 = 1`, read off the HNF transform.
    pub fn any_bezout(&self, alpha: AlgInt, beta: AlgInt) -> Result<(AlgInt, AlgInt)> {
        let b = self.ideal_basis(alpha, beta)?;
        if b.index() != 1 {
            return Err(Error::NotCoprime(alpha, beta));
        }
        // index 1 forces the basis [[1, 0], [0, 1]], so row 0 is the element 1.
        let c = b.coeffs[0];
        let cvt = |v: i128| i64::try_from(v).expect("bezout coefficient overflow");
        let x0 = AlgInt::new(cvt(c[0]), cvt(c[1]));
        let y0 = AlgInt::new(cvt(c[2]), cvt(c[3]));
        debug_assert_eq!(self.mul(alpha, x0) + self.mul(beta, y0), AlgInt::ONE);
        Ok((x0, y0))
    }

    /// Bézout coefficients with `|x| ≤ C_d·|β|` and `|y| ≤ C_d·|α|`.
    ///
    /// Starting from any solution `(x0, y0)`, shift by `λ` nearest to `x0/β`.
    /// Both bounds are checked exactly against `C_d²`.
    pub fn bezout_bounded(&self, alpha: AlgInt, beta: AlgInt) -> Result<(AlgInt, AlgInt)> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::ZeroBezoutArgument);
        }
        let (x0, y0) = self.any_bezout(alpha, beta)?;
        let ratio = self.field_div(x0, beta).expect("beta is nonzero");
        let lambda = self.round_to_lattice(&ratio);
        let x = x0 - self.mul(lambda, beta);
        let y = y0 + self.mul(lambda, alpha);
        if self.mul(alpha, x) + self.mul(beta, y) != AlgInt::ONE {
            return Err(Error::InequalityViolated("bezout identity".into()));
        }
        let c2 = self.c_d_sq();
        if !self.norm_le_c_sq(self.norm(x), self.norm(beta), &c2)
            || !self.norm_le_c_sq(self.norm(y), self.norm(alpha), &c2)
        {
            return Err(Error::InequalityViolated(format!(
                "bounded bezout for ({alpha}, {beta}) gave ({x}, {y})"
            )));
        }
        Ok((x, y))
    }

    /// `lhs ≤ C_d²·rhs`, exactly.
    pub(crate) fn norm_le_c_sq(&self, lhs: i64, rhs: i64, c_sq: &super::SurdValue) -> bool {
        c_sq.scale(&int(rhs)).cmp_rational(&int(lhs)) != std::cmp::Ordering::Less
    }

    /// A generator `g` with `⟨α, β⟩ = g·O_d`, if the ideal is principal.
    ///
    /// Tries `α` and `β` themselves first, then searches the elements of norm
    /// `N(⟨α, β⟩)`.
    pub fn principal_generator(&self, alpha: AlgInt, beta: AlgInt) -> Result<Option<AlgInt>> {
        let n = self.ideal_norm(alpha, beta)?;
        let generates = |g: AlgInt| -> bool {
            if self.norm(g) != n {
                return false;
            }
            match (self.exact_div(alpha, g), self.exact_div(beta, g)) {
                (Some(x), Some(y)) => self.is_coprime(x, y).unwrap_or(false),
                _ => false,
            }
        };
        if !alpha.is_zero() && generates(alpha) {
            return Ok(Some(alpha));
        }
        if !beta.is_zero() && generates(beta) {
            return Ok(Some(beta));
        }
        Ok(lattice_points_in_disk(self, &FieldElem::zero(), &int(n))
            .into_iter()
            .find(|&g| generates(g)))
    }

    pub fn is_principal(&self, alpha: AlgInt, beta: AlgInt) -> Result<bool> {
        Ok(self.principal_generator(alpha, beta)?.is_some())
    }
}
