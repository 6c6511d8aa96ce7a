//! The normalization q = c₁ cos V + c₂ sin V.
//!
//! Its relative normal does not depend on v, so the relative image is a
//! curve Γ* rather than a surface. This module gives Γ*, its curvature and
//! torsion, and the Pick invariant, Tchebychev and support vectors in the
//! moving frame {e, n, z}.
//!
//! The frame-form displays below carry a factor sgn(δ): with δ < 0 the
//! polar normal picks up that sign through arctan(v/δ).

use crate::error::{Error, Result};
use crate::polar::PolarSupport;
use crate::relative::Q_MIN;
use crate::surface::{InvariantJet, RuledSurfaceSpec};
use crate::FrameVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialPolar {
    pub c1: f64,
    pub c2: f64,
}

/// A point of Γ* with its Frenet data.
#[derive(Debug, Clone, Copy)]
pub struct GammaStar {
    /// Frame coordinates of y(u).
    pub y: FrameVector,
    pub curvature: f64,
    pub torsion: f64,
    /// κ*/σ*; `None` where κ = 0.
    pub slope_ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SpecialFields {
    pub pick: f64,
    /// Tchebychev vector in frame coordinates.
    pub tchebychev: FrameVector,
    /// Support vector in frame coordinates.
    pub support_vector: FrameVector,
}

impl SpecialPolar {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(c1.is_finite() && c2.is_finite()) || c1 * c1 + c2 * c2 == 0.0 {
            return Err(Error::Config(format!(
                "special normalization needs c1² + c2² > 0, got ({c1}, {c2})"
            )));
        }
        Ok(Self { c1, c2 })
    }

    /// The same normalization as a [`PolarSupport`].
    pub fn as_polar(&self) -> PolarSupport {
        PolarSupport::harmonic(self.c1, self.c2)
    }

    /// `(a, b)` with y = sgn(δ)(a n − b z).
    fn coefficients(&self, kappa_integral: f64) -> (f64, f64) {
        let (s, c) = kappa_integral.sin_cos();
        (self.c1 * c - self.c2 * s, self.c2 * c + self.c1 * s)
    }

    fn q(&self, big_v: f64) -> (f64, f64) {
        let (s, c) = big_v.sin_cos();
        (self.c1 * c + self.c2 * s, self.c1 * s - self.c2 * c)
    }

    pub fn gamma_star(&self, spec: &RuledSurfaceSpec, u: f64) -> Result<GammaStar> {
        let jet = spec.jet(u)?;
        let sign = jet.delta.signum();
        let (a, b) = self.coefficients(jet.kappa_integral);
        if a.abs() < Q_MIN {
            return Err(Error::Degenerate(format!(
                "Γ* is singular at u = {u}: n-coefficient {a:e} vanishes"
            )));
        }
        let curvature = 1.0 / a.abs();
        let torsion = -jet.kappa / (sign * a);
        Ok(GammaStar {
            y: FrameVector::new(0.0, sign * a, -sign * b),
            curvature,
            torsion,
            slope_ratio: (jet.kappa != 0.0).then(|| curvature / torsion),
        })
    }

    pub fn special_fields(&self, spec: &RuledSurfaceSpec, u: f64, v: f64) -> Result<SpecialFields> {
        let p = spec.point(u, v)?;
        let j = &p.jet;
        let (d, dd, k, l, w) = (j.delta, j.d_delta, j.kappa, j.lambda, p.w);
        let sign = d.signum();
        let big_v = crate::polar::polar_v_at(&p);
        let (q, alt) = self.q(big_v);
        if q.abs() < Q_MIN {
            return Err(Error::SupportVanishing { u, v, q: q.abs() });
        }
        let (s, c) = j.kappa_integral.sin_cos();
        let (_, b) = self.coefficients(j.kappa_integral);
        let (c1, c2, d2) = (self.c1, self.c2, d * d);

        let brace = c
            * (k * (c2 * v * v + 2.0 * c1 * d * v - c2 * d2) + d * (-c2 * d * l + c1 * dd))
            + s * (k * (c1 * v * v - 2.0 * c2 * d * v - c1 * d2) - d * (c1 * d * l + c2 * dd));
        let pick = 3.0 * b / (2.0 * d2 * w * q) * brace;

        let tchebychev = FrameVector::new(
            w / (2.0 * d2) * q * (2.0 * k * v + dd),
            sign * v / d * b,
            sign * b,
        );
        let sq = alt / (4.0 * w * q);
        let support_vector = FrameVector::new(0.0, sq * v, sq * d);
        Ok(SpecialFields {
            pick,
            tchebychev,
            support_vector,
        })
    }
}

/// X¹x_/1 + X²x_/2 in frame coordinates, with x_/1 = δλe + vn + δz and x_/2 = e.
pub fn coords_to_frame(jet: &InvariantJet, v: f64, x: [f64; 2]) -> FrameVector {
    FrameVector::new(
        x[0] * jet.delta * jet.lambda + x[1],
        x[0] * v,
        x[0] * jet.delta,
    )
}

/// Inverse of [`coords_to_frame`] for tangent vectors. The n-component is
/// redundant and ignored.
pub fn frame_to_coords(jet: &InvariantJet, c: FrameVector) -> [f64; 2] {
    let x1 = c.z / jet.delta;
    [x1, c.x - x1 * jet.delta * jet.lambda]
}
