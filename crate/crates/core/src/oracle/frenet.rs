//! Curvature and torsion of a sampled space curve.

use nalgebra::Vector3;

use super::fd::derivative;
use crate::error::{Error, Result};
use crate::surface::RuledSurfaceSpec;

type V3 = Vector3<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frenet {
    pub curvature: f64,
    pub torsion: f64,
}

/// κ = |y′×y″|/|y′|³, σ = ⟨y′×y″, y‴⟩/|y′×y″|², valid for any regular
/// parametrization.
pub fn frenet_from_derivatives(d1: V3, d2: V3, d3: V3) -> Result<Frenet> {
    let speed = d1.norm();
    let b = d1.cross(&d2);
    let bn = b.norm();
    if speed < 1e-8 || bn < 1e-8 {
        return Err(Error::Degenerate(format!(
            "curve not regular enough for Frenet data (|y'| = {speed:e}, |y'×y''| = {bn:e})"
        )));
    }
    Ok(Frenet {
        curvature: bn / speed.powi(3),
        torsion: b.dot(&d3) / (bn * bn),
    })
}

/// Frenet data of `curve` at `t` from seven-point stencils of spacing `h`.
pub fn frenet_invariants(curve: impl Fn(f64) -> Result<V3>, t: f64, h: f64) -> Result<Frenet> {
    let mut y = [V3::zeros(); 7];
    for (k, slot) in y.iter_mut().enumerate() {
        *slot = curve(t + (k as f64 - 3.0) * h)?;
    }
    let d1 = (-y[0] + y[1] * 9.0 - y[2] * 45.0 + y[4] * 45.0 - y[5] * 9.0 + y[6]) / (60.0 * h);
    let d2 = (y[0] * 2.0 - y[1] * 27.0 + y[2] * 270.0 - y[3] * 490.0 + y[4] * 270.0 - y[5] * 27.0
        + y[6] * 2.0)
        / (180.0 * h * h);
    let d3 =
        (y[0] - y[1] * 8.0 + y[2] * 13.0 - y[4] * 13.0 + y[5] * 8.0 - y[6]) / (8.0 * h * h * h);
    frenet_from_derivatives(d1, d2, d3)
}

/// Frenet data of a curve given by frame coefficients c(u) along the
/// surface's moving frame. Derivatives are ambient: coefficient derivative
/// plus frame rotation, nested three times.
pub fn frenet_in_frame(
    spec: &RuledSurfaceSpec,
    coords: impl Fn(f64) -> Result<V3>,
    u: f64,
) -> Result<Frenet> {
    let ambient = |f: &dyn Fn(f64) -> Result<V3>, t: f64, h: f64| -> Result<V3> {
        let d = derivative(f, t, h * (1.0 + t.abs()))?;
        let c = f(t)?;
        let k = spec.jet(t)?.kappa;
        Ok(d + V3::new(-c.y, c.x - k * c.z, k * c.y))
    };
    let d1 = |t: f64| ambient(&coords, t, 1e-4);
    let d2 = |t: f64| ambient(&d1, t, 1e-3);
    let d3 = ambient(&d2, u, 1e-2)?;
    frenet_from_derivatives(d1(u)?, d2(u)?, d3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_of_radius_two() {
        let f = frenet_invariants(
            |t| Ok(V3::new(2.0 * t.cos(), 2.0 * t.sin(), 0.0)),
            0.7,
            1e-2,
        )
        .unwrap();
        assert!((f.curvature - 0.5).abs() < 1e-6 && f.torsion.abs() < 1e-6);
    }

    #[test]
    fn helix() {
        let f = frenet_invariants(|t| Ok(V3::new(t.cos(), t.sin(), t)), 1.9, 1e-2).unwrap();
        assert!((f.curvature - 0.5).abs() < 1e-6 && (f.torsion - 0.5).abs() < 1e-6);
    }

    #[test]
    fn straight_line_is_degenerate() {
        assert!(frenet_invariants(|t| Ok(V3::new(t, 2.0 * t, 0.0)), 0.0, 1e-2).is_err());
    }

    #[test]
    fn generator_direction_traces_unit_circle_on_helicoid() {
        // e(u) has curvature 1 and zero torsion when κ = 0
        let s = RuledSurfaceSpec::parse("1", "0", "0", (0.0, 6.0)).unwrap();
        let f = frenet_in_frame(&s, |_| Ok(V3::x()), 2.0).unwrap();
        assert!((f.curvature - 1.0).abs() < 1e-7 && f.torsion.abs() < 1e-7);
    }
}
