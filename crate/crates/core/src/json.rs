//! JSON encodings. Rationals travel as exact `"p/q"` strings and ring
//! elements as their `{1, ω}`-coordinates `[a, b]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GroupElem, Point};
use crate::hermitian::{FormReduction, HermitianForm};
use crate::reduce::{Branch, ReductionCertificate};
use crate::ring::{format_rational, parse_rational, AlgInt, FieldElem, RingContext};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub z: FieldJson,
    pub s: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub alpha: AlgInt,
    pub beta: AlgInt,
    pub gamma: AlgInt,
    pub delta: AlgInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub d: i64,
    pub gamma: GroupJson,
    pub image: PointJson,
    #[serde(rename = "D_sq")]
    pub d_sq: String,
    pub height_sq: String,
    pub bound_ok: bool,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormReductionJson {
    #[serde(flatten)]
    pub certificate: CertificateJson,
    pub f: HermitianForm,
    pub f_red: HermitianForm,
    pub discriminant: i64,
    pub form_bound_ok: bool,
}

impl From<&Point> for PointJson {
    fn from(p: &Point) -> Self {
        PointJson {
            z: FieldJson { a: format_rational(&p.z.real), b: format_rational(&p.z.root) },
            s: format_rational(&p.s),
        }
    }
}

impl PointJson {
    pub fn to_point(&self) -> Result<Point> {
        let z = FieldElem::new(parse_rational(&self.z.a)?, parse_rational(&self.z.b)?);
        Point::new(z, parse_rational(&self.s)?)
    }
}

impl From<&GroupElem> for GroupJson {
    fn from(g: &GroupElem) -> Self {
        let [alpha, beta, gamma, delta] = g.entries();
        GroupJson { alpha, beta, gamma, delta }
    }
}

impl GroupJson {
    pub fn to_group(&self, ctx: &RingContext) -> Result<GroupElem> {
        GroupElem::new(ctx, self.alpha, self.beta, self.gamma, self.delta)
    }
}

impl CertificateJson {
    pub fn new(ctx: &RingContext, c: &ReductionCertificate) -> Self {
        CertificateJson {
            d: ctx.d(),
            gamma: (&c.gamma).into(),
            image: (&c.image).into(),
            d_sq: format_rational(&c.d_sq),
            height_sq: c.height_sq.to_string(),
            bound_ok: c.bound_ok,
            branch: c.branch,
        }
    }

    pub fn to_certificate(&self, ctx: &RingContext) -> Result<ReductionCertificate> {
        Ok(ReductionCertificate {
            gamma: self.gamma.to_group(ctx)?,
            image: self.image.to_point()?,
            d_sq: parse_rational(&self.d_sq)?,
            height_sq: self
                .height_sq
                .parse()
                .map_err(|_| Error::Parse(format!("height_sq {:?}", self.height_sq)))?,
            bound_ok: self.bound_ok,
            branch: self.branch,
        })
    }
}

impl FormReductionJson {
    pub fn new(ctx: &RingContext, f: &HermitianForm, r: &FormReduction) -> Self {
        FormReductionJson {
            certificate: CertificateJson::new(ctx, &r.certificate),
            f: *f,
            f_red: r.f_red,
            discriminant: r.f_red.discriminant(ctx),
            form_bound_ok: r.form_bound_ok,
        }
    }
}
