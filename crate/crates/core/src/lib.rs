//! Exact computer algebra for parallel lines (offset curves) of parabolas, ellipses and hyperbolas.
//!
//! * [`poly`] — sparse multivariate polynomials over the rationals.
//! * [`groebner`] — Buchberger's algorithm, reduced bases, elimination ideals.
//! * [`conics`] — ideal builders, offset polynomials, critical offsets and singular points.
//! * [`curve`] — float evaluation, parametric samples, implicit tracing and SVG plots.
//! * [`mesh`] — layered quadrilateral meshes between an ellipse and its parallel lines.

pub mod conics;
pub mod curve;
pub mod error;
pub mod groebner;
pub mod highprec;
pub mod mesh;
pub mod poly;
pub mod rational;
pub mod univariate;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{Monomial, MonomialOrder, MultiPoly, OrderKind, Ring};
pub use rational::Rational;
