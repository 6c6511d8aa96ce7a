//! Relative normalizations given by an arbitrary support function.
//!
//! Everything here works for any [`SupportFunction`]; the polar closed forms
//! in [`crate::polar`] are checked against these general expressions.
//!
//! Divergence and rotation with respect to the relative metric G use the
//! same templates as for the first fundamental form, with `g_ij → G_ij` and
//! the area element `w → √|det G|`.

mod support;

pub use support::{make_support, SupportFamily, SupportFunction, SupportJet, Q_MIN};

use nalgebra::Vector3;

use crate::error::Result;
use crate::surface::{RuledSurfaceSpec, SurfacePoint, SymTensor2};
use crate::FrameVector;

/// A surface point together with the support function jet there.
#[derive(Debug, Clone, Copy)]
pub struct RelativePoint {
    pub point: SurfacePoint,
    pub support: SupportJet,
}

impl RelativePoint {
    pub fn new(spec: &RuledSurfaceSpec, q: &SupportFunction, u: f64, v: f64) -> Result<Self> {
        let point = spec.point(u, v)?;
        let support = q.jet(spec, &point)?;
        Ok(Self { point, support })
    }

    /// Relative normal y from the support function, in the moving frame.
    pub fn relative_normal(&self) -> FrameVector {
        let p = &self.point;
        let j = &p.jet;
        let SupportJet { q, q_u, q_v } = self.support;
        let (d, w, v) = (j.delta, p.w, p.v);
        let w2 = w * w;
        Vector3::new(
            -w * (d * q_u + q_v * (j.kappa * w2 + j.d_delta * v)) / (d * d),
            (d * d * q - w2 * v * q_v) / (d * w),
            -(v * q + w2 * q_v) / w,
        )
    }

    /// G_ij = h_ij / q.
    pub fn metric(&self) -> SymTensor2 {
        self.point.second_form().scale(1.0 / self.support.q)
    }

    /// Inverse relative metric in closed form: G^(11) = 0,
    /// G^(12) = wq/δ, G^(22) = wq(κw² + δ′v − δ²λ)/δ².
    pub fn metric_inverse(&self) -> SymTensor2 {
        let p = &self.point;
        let j = &p.jet;
        let wq = p.w * self.support.q;
        SymTensor2::new(
            0.0,
            wq / j.delta,
            wq * (j.kappa * p.w * p.w + j.d_delta * p.v - j.delta * j.delta * j.lambda)
                / (j.delta * j.delta),
        )
    }

    /// `[∂u, ∂v]` of G_ij.
    pub fn metric_partials(&self) -> [SymTensor2; 2] {
        let h = self.point.second_form();
        let dh = self.point.second_form_partials();
        let SupportJet { q, q_u, q_v } = self.support;
        let part = |dh: &SymTensor2, dq: f64| {
            SymTensor2::new(
                dh.a11 / q - h.a11 * dq / (q * q),
                dh.a12 / q - h.a12 * dq / (q * q),
                dh.a22 / q - h.a22 * dq / (q * q),
            )
        };
        [part(&dh[0], q_u), part(&dh[1], q_v)]
    }

    /// Area element of G: √|det G| = |δ|/(w|q|).
    pub fn metric_area(&self) -> f64 {
        self.point.jet.delta.abs() / (self.point.w * self.support.q.abs())
    }

    /// `[∂u, ∂v]` of ln √|det G|.
    pub fn metric_area_log_partials(&self) -> [f64; 2] {
        let p = &self.point;
        let [w_u, w_v] = p.w_partials();
        let SupportJet { q, q_u, q_v } = self.support;
        [
            p.jet.d_delta / p.jet.delta - w_u / p.w - q_u / q,
            -w_v / p.w - q_v / q,
        ]
    }

    /// G-gradient (contravariant) of a scalar with partials `d`.
    pub fn gradient(&self, d: [f64; 2]) -> [f64; 2] {
        let gi = self.metric_inverse();
        [gi.a11 * d[0] + gi.a12 * d[1], gi.a12 * d[0] + gi.a22 * d[1]]
    }

    /// Tchebychev vector for a general support function.
    pub fn tchebychev(&self) -> [f64; 2] {
        let p = &self.point;
        let j = &p.jet;
        let SupportJet { q, q_u, q_v } = self.support;
        let (d, w, v) = (j.delta, p.w, p.v);
        let w2 = w * w;
        let t1 = (w2 * q_v + v * q) / (d * w);
        let t2 = (2.0 * d * w2 * q_u + j.d_delta * q * (d * d - v * v)) / (2.0 * d * d * w)
            + t1 * (j.kappa * w2 + j.d_delta * v - d * d * j.lambda) / d;
        [t1, t2]
    }

    /// Support vector Q = ¼ ∇ᴳ(1/q).
    pub fn support_vector(&self) -> [f64; 2] {
        let SupportJet { q, q_u, q_v } = self.support;
        let s = -0.25 / (q * q);
        self.gradient([s * q_u, s * q_v])
    }

    /// Pick invariant for a general support function.
    pub fn pick(&self) -> f64 {
        let p = &self.point;
        let j = &p.jet;
        let SupportJet { q, q_u, q_v } = self.support;
        let (d, w, v) = (j.delta, p.w, p.v);
        let w2 = w * w;
        3.0 * (w2 * q_v + v * q) / (2.0 * d * d * w2 * w * q)
            * (w2
                * (j.kappa * q * v
                    + 2.0 * d * q_u
                    + q_v * (j.kappa * w2 + j.d_delta * v - d * d * j.lambda))
                - d * d * q * (j.lambda * v - j.d_delta))
    }
}

/// Relative normal y in the moving frame; satisfies ⟨ξ, y⟩ = q.
pub fn relative_normal_general(
    spec: &RuledSurfaceSpec,
    q: &SupportFunction,
    u: f64,
    v: f64,
) -> Result<FrameVector> {
    Ok(RelativePoint::new(spec, q, u, v)?.relative_normal())
}

/// `(G, G⁻¹)` at `(u, v)`.
pub fn relative_metric(
    spec: &RuledSurfaceSpec,
    q: &SupportFunction,
    u: f64,
    v: f64,
) -> Result<(SymTensor2, SymTensor2)> {
    let rp = RelativePoint::new(spec, q, u, v)?;
    Ok((rp.metric(), rp.metric_inverse()))
}

/// A contravariant vector field X = X¹x_/1 + X²x_/2 on the parameter domain.
pub trait VectorField2 {
    fn components(&self, u: f64, v: f64) -> Result<[f64; 2]>;

    /// `[∂u [X¹, X²], ∂v [X¹, X²]]`. Richardson-extrapolated central
    /// differences unless overridden.
    fn partials(&self, u: f64, v: f64) -> Result<[[f64; 2]; 2]> {
        let at = |u: f64, v: f64| self.components(u, v).map(nalgebra::Vector2::from);
        let du = crate::oracle::derivative(|s| at(s, v), u, 1e-4 * (1.0 + u.abs()))?;
        let dv = crate::oracle::derivative(|s| at(u, s), v, 1e-4 * (1.0 + v.abs()))?;
        Ok([du.into(), dv.into()])
    }
}

/// Adapter turning a closure into a [`VectorField2`].
pub struct FnField<F>(pub F);

impl<F> VectorField2 for FnField<F>
where
    F: Fn(f64, f64) -> Result<[f64; 2]>,
{
    fn components(&self, u: f64, v: f64) -> Result<[f64; 2]> {
        (self.0)(u, v)
    }
}

/// The general Tchebychev field of a support function.
pub struct TchebychevField<'a> {
    pub spec: &'a RuledSurfaceSpec,
    pub support: &'a SupportFunction,
}

impl VectorField2 for TchebychevField<'_> {
    fn components(&self, u: f64, v: f64) -> Result<[f64; 2]> {
        Ok(RelativePoint::new(self.spec, self.support, u, v)?.tchebychev())
    }
}

/// The general support vector field of a support function.
pub struct SupportVectorField<'a> {
    pub spec: &'a RuledSurfaceSpec,
    pub support: &'a SupportFunction,
}

impl VectorField2 for SupportVectorField<'_> {
    fn components(&self, u: f64, v: f64) -> Result<[f64; 2]> {
        Ok(RelativePoint::new(self.spec, self.support, u, v)?.support_vector())
    }
}

/// Divergence and rotation of a field with respect to I and to G.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldCalculus {
    pub div_i: f64,
    pub curl_i: f64,
    pub div_g: f64,
    pub curl_g: f64,
    /// Size of the two terms whose difference gives `curl_g`, divided by
    /// the area. Cancellation error in `curl_g` is relative to this.
    pub curl_g_scale: f64,
}

/// div = (a Xⁱ)_/i / a and
/// curl = ((m₁₂X¹ + m₂₂X²)_/1 − (m₁₁X¹ + m₁₂X²)_/2) / a,
/// for (m, a) = (g, w) and (G, √|det G|).
pub fn field_calculus(
    spec: &RuledSurfaceSpec,
    q: &SupportFunction,
    field: &dyn VectorField2,
    u: f64,
    v: f64,
) -> Result<FieldCalculus> {
    let rp = RelativePoint::new(spec, q, u, v)?;
    let x = field.components(u, v)?;
    let dx = field.partials(u, v)?;
    let p = &rp.point;

    let divergence =
        |log_area: [f64; 2]| dx[0][0] + dx[1][1] + log_area[0] * x[0] + log_area[1] * x[1];
    let rotation_terms = |m: &SymTensor2, dm: &[SymTensor2; 2], area: f64| {
        let first = dm[0].a12 * x[0] + m.a12 * dx[0][0] + dm[0].a22 * x[1] + m.a22 * dx[0][1];
        let second = dm[1].a11 * x[0] + m.a11 * dx[1][0] + dm[1].a12 * x[1] + m.a12 * dx[1][1];
        ((first - second) / area, (first.abs() + second.abs()) / area)
    };

    let [w_u, w_v] = p.w_partials();
    let g = p.first_form();
    let dg = p.first_form_partials();
    let big_g = rp.metric();
    let d_big_g = rp.metric_partials();
    let (curl_g, curl_g_scale) = rotation_terms(&big_g, &d_big_g, rp.metric_area());
    Ok(FieldCalculus {
        div_i: divergence([w_u / p.w, w_v / p.w]),
        curl_i: rotation_terms(&g, &dg, p.w).0,
        div_g: divergence(rp.metric_area_log_partials()),
        curl_g,
        curl_g_scale,
    })
}

/// Tchebychev and support vector of a general support function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralFields {
    pub tchebychev: [f64; 2],
    pub support_vector: [f64; 2],
}

pub fn general_fields(
    spec: &RuledSurfaceSpec,
    q: &SupportFunction,
    u: f64,
    v: f64,
) -> Result<GeneralFields> {
    let rp = RelativePoint::new(spec, q, u, v)?;
    Ok(GeneralFields {
        tchebychev: rp.tchebychev(),
        support_vector: rp.support_vector(),
    })
}
