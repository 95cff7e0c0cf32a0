//! Closed-form fundamental solutions of Laplace's equation on the n-sphere.
//!
//! The Green's function `G_n(θ)` on `S^n_R` satisfies `−ΔG = δ − 1/vol` and
//! depends only on the geodesic angle θ from the source. This crate evaluates
//! it through exact closed forms for every dimension, checks it against
//! adaptive quadrature, and provides a handful of applications (dipoles,
//! Fourier expansion on S², antipodal relations) along with a symbolic
//! contiguous-relation reducer for ₂F₁ with integer and half-integer
//! parameters.

pub mod applications;
pub mod error;
pub mod green;
pub mod quadrature;
pub mod real;
pub mod reduce;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use green::{green, green_derivative, GreenEvaluation, Method, PolarAngle};
pub use quadrature::{quad_green, QuadratureConfig, QuadratureResult};
pub use reduce::{classify, reduce, Case, HypParams, ReducedForm};
pub use real::{DoubleDouble, Real};
pub use special::{HalfInt, SphereGeometry};
