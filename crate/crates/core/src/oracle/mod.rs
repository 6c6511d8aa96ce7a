//! Independent numerical recomputation of the relative invariants, and the
//! residual report that compares them with the closed forms.

mod fd;
mod frenet;
mod geometry;
mod report;

pub use fd::{derivative, fd_jet, mixed_derivative, second_derivative, FdJet};
pub use frenet::{frenet_from_derivatives, frenet_in_frame, frenet_invariants, Frenet};
pub use geometry::{Darboux, OracleSurface, ShapeFit, Steps};
pub use report::{
    residual_report, ReportOptions, ResidualReport, ResidualRow, Status, Summary, Tolerances,
};

use crate::error::Result;
use crate::relative::SupportFunction;
use crate::surface::RuledSurfaceSpec;

/// Shape operator fitted from y_/i = −B_i^j x_/j.
pub fn numeric_shape_operator(
    spec: &RuledSurfaceSpec,
    q: &SupportFunction,
    u: f64,
    v: f64,
) -> Result<ShapeFit> {
    OracleSurface::new(spec, q).shape_operator(u, v)
}

/// Darboux tensor and Pick invariant from covariant derivatives.
pub fn darboux_pick(
    spec: &RuledSurfaceSpec,
    q: &SupportFunction,
    u: f64,
    v: f64,
) -> Result<Darboux> {
    OracleSurface::adapted(spec, q, u, v)?.darboux(u, v)
}

/// Curvature of the relative metric from numerical Christoffel symbols.
pub fn numeric_scalar_curvature(
    spec: &RuledSurfaceSpec,
    q: &SupportFunction,
    u: f64,
    v: f64,
) -> Result<f64> {
    OracleSurface::adapted(spec, q, u, v)?.scalar_curvature(u, v)
}
