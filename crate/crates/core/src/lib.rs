//! Exact volumes of Quot spaces on compact Riemann surfaces.
//!
//! Volumes are returned as polynomials in the stability parameter 𝔱, in
//! normalized units (Kähler form ω/4π²):
//!
//! - [`abelian`]: rank-one kernels, via Poincaré intersection numbers on
//!   symmetric powers and the projective-bundle formula for acyclic pairs
//! - [`localization`]: full-rank subsheaves of a split bundle ⊕ℒ_i on a
//!   curve, via a ℂ*-fixed-point sum
//! - [`grothendieck`]: degrees of Grothendieck embeddings
//!
//! [`scalars`] and [`exterior`] hold the exact arithmetic both paths share.

pub mod abelian;
pub mod error;
pub mod exterior;
pub mod grothendieck;
pub mod localization;
pub mod scalars;

pub use error::{Error, Result};
pub use scalars::{Rational, TPoly, TruncSeries, ULaurent};
