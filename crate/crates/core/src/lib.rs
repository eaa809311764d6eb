//! Exact reduction theory for the Bianchi groups `PSL(2, O_d)`.
//!
//! Points of hyperbolic 3-space are kept in exact `K_d`-rational coordinates
//! `(z, t²)`, so every membership test, group action and height inequality is
//! decided without floating point. The crate provides
//!
//! * [`ring`]: arithmetic in `O_d` and `K_d`, ideal norms, bounded Bézout;
//! * [`geometry`]: the Möbius action on the upper half-space and heights;
//! * [`domain`]: membership in the standard fundamental domain `F_d`;
//! * [`reduce`]: reduction of points into `F_d` with checked height certificates;
//! * [`hermitian`]: binary Hermitian forms and their reduction;
//! * [`count`]: counting group elements and projective points of bounded height.

pub mod error;
pub mod ring;
pub mod geometry;
pub mod domain;
pub mod reduce;
pub mod hermitian;
pub mod count;
pub mod json;

pub use error::{Error, Result};
