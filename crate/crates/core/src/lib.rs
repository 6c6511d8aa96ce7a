//! Skew ruled surfaces in Euclidean 3-space equipped with polar relative
//! normalizations.
//!
//! A surface is given by its fundamental invariants (distribution parameter
//! δ, conical curvature κ and λ = cot σ) as closed-form functions of the
//! ruling parameter `u`. From these the crate
//!
//! - reconstructs the surface by integrating the moving frame {e, n, z}
//!   ([`surface`]),
//! - evaluates the Euclidean and relative invariants of an arbitrary support
//!   function ([`relative`]),
//! - evaluates the closed forms for polar normalizations `q = f(V)`
//!   ([`polar`]) and for the degenerate family `q = c₁cos V + c₂sin V`
//!   ([`special`]),
//! - recomputes all of them from first principles with finite differences
//!   ([`oracle`]), and
//! - runs batch jobs described by JSON configs ([`job`]).
//!
//! ```
//! use ruled_polar::{fixtures, polar::{PolarSupport, PolarEvaluator}};
//!
//! let surface = fixtures::conical_unit().unwrap();
//! let f = PolarSupport::parse("cos(V)").unwrap();
//! let eval = PolarEvaluator::new(&surface, &f);
//! let inv = eval.invariants(std::f64::consts::FRAC_PI_2, 2.0).unwrap();
//! assert!((inv.pick - 2.25).abs() < 1e-12);
//! ```

pub mod error;
pub mod expr;
pub mod fixtures;
pub mod grid;
pub mod job;
pub mod oracle;
pub mod polar;
pub mod relative;
pub mod special;
pub mod surface;

pub use error::{Error, Result};
pub use expr::{Antiderivative, ScalarExpr};
pub use surface::{FramePath, RuledSurfaceSpec};

/// Components of a vector with respect to the moving frame {e, n, z}.
pub type FrameVector = nalgebra::Vector3<f64>;
