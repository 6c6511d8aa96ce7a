//! Polar normalizations: support functions of the form `q = f(V)` with
//! `V = arctan(v/δ) − ∫κ du`, whose relative normals lie in the polar plane
//! span{n, z}.
//!
//! [`PolarEvaluator`] evaluates the closed forms for the shape operator,
//! relative curvatures, Pick invariant, scalar curvature of the relative
//! metric, and the Tchebychev and support vector fields. Dots denote
//! derivatives of `f` with respect to `V`.

mod classify;

pub use classify::{classify, Classification, ClassifyOptions};

use nalgebra::{Matrix2, Vector3};

use crate::error::{Error, Result};
use crate::expr::{self, ScalarExpr};
use crate::relative::{VectorField2, Q_MIN};
use crate::surface::{RuledSurfaceSpec, SurfacePoint};
use crate::FrameVector;

/// The profile `f` of a polar support function, with its first three
/// derivatives.
#[derive(Debug, Clone)]
pub struct PolarSupport {
    f: ScalarExpr,
    df: ScalarExpr,
    ddf: ScalarExpr,
}

impl PolarSupport {
    pub fn new(f: ScalarExpr) -> Self {
        let df = f.derivative();
        let ddf = df.derivative();
        Self { f, df, ddf }
    }

    /// Parses a profile written in the variable `V`.
    pub fn parse(src: &str) -> Result<Self> {
        Ok(Self::new(ScalarExpr::parse_in(src, "V")?))
    }

    /// `c₁ cos V + c₂ sin V`.
    pub fn harmonic(c1: f64, c2: f64) -> Self {
        Self::new(expr::add(
            expr::mul(ScalarExpr::constant(c1), expr::cos(ScalarExpr::var())),
            expr::mul(ScalarExpr::constant(c2), expr::sin(ScalarExpr::var())),
        ))
    }

    /// `c₂ exp(c₁ V)`.
    pub fn exponential(c1: f64, c2: f64) -> Self {
        Self::new(expr::mul(
            ScalarExpr::constant(c2),
            expr::exp(expr::mul(ScalarExpr::constant(c1), ScalarExpr::var())),
        ))
    }

    pub fn profile(&self) -> &ScalarExpr {
        &self.f
    }

    pub fn value(&self, v: f64) -> Result<f64> {
        self.f.eval(v)
    }

    /// `(f, ḟ, f̈)` at `V`.
    pub fn derivatives(&self, v: f64) -> Result<(f64, f64, f64)> {
        Ok((self.f.eval(v)?, self.df.eval(v)?, self.ddf.eval(v)?))
    }
}

/// V = arctan(v/δ) − ∫_{u₀}^{u} κ, principal branch.
pub fn polar_v_at(p: &SurfacePoint) -> f64 {
    (p.v / p.jet.delta).atan() - p.jet.kappa_integral
}

/// `[V_/1, V_/2] = [−vδ′/w² − κ, δ/w²]`.
pub fn polar_v_partials(p: &SurfacePoint) -> [f64; 2] {
    let w2 = p.w * p.w;
    [-p.v * p.jet.d_delta / w2 - p.jet.kappa, p.jet.delta / w2]
}

#[allow(non_snake_case)]
pub fn polar_V(spec: &RuledSurfaceSpec, u: f64, v: f64) -> Result<f64> {
    Ok(polar_v_at(&spec.point(u, v)?))
}

/// Surface point plus the profile evaluated at V.
#[derive(Debug, Clone, Copy)]
pub struct PolarPoint {
    pub point: SurfacePoint,
    pub big_v: f64,
    pub q: f64,
    pub dq: f64,
    pub ddq: f64,
}

impl PolarPoint {
    /// Common subexpression κw² + δ′v + δ²λ (= −2w³H̃).
    fn mean_factor(&self) -> f64 {
        let j = &self.point.jet;
        let w = self.point.w;
        j.kappa * w * w + j.d_delta * self.point.v + j.delta * j.delta * j.lambda
    }
}

/// Closed-form relative invariants at one point.
#[derive(Debug, Clone, Copy)]
pub struct PolarInvariants {
    pub big_v: f64,
    pub q: f64,
    pub dq: f64,
    pub ddq: f64,
    /// Relative shape operator, `shape[(i, j)] = B_i^j`.
    pub shape: Matrix2<f64>,
    pub relative_curvature: f64,
    pub relative_mean_curvature: f64,
    pub pick: f64,
    pub pick_euclidean: f64,
    pub scalar_curvature: f64,
}

impl PolarInvariants {
    /// 3H − J − 3S; zero on every ruled surface.
    pub fn structural_residual(&self) -> f64 {
        3.0 * self.relative_mean_curvature - self.pick - 3.0 * self.scalar_curvature
    }
}

/// Tchebychev field of a polar normalization and its differential invariants.
#[derive(Debug, Clone, Copy)]
pub struct PolarTchebychev {
    pub t: [f64; 2],
    pub div_i: f64,
    /// Rotation w.r.t. I, with the δ³ factor of the second brace group restored.
    pub curl_i: f64,
    /// Rotation w.r.t. I exactly as printed in the original display.
    pub curl_i_printed: f64,
    pub div_g: f64,
    pub curl_g: f64,
    /// Potential ln(w|q|/|δ|^{1/2}) with additive constant 0.
    pub potential: f64,
}

/// Support vector field of a polar normalization and its invariants.
#[derive(Debug, Clone, Copy)]
pub struct PolarSupportVector {
    pub q: [f64; 2],
    pub div_i: f64,
    /// Rotation w.r.t. I with denominator 4w²q².
    pub curl_i: f64,
    /// Rotation w.r.t. I as printed (denominator 4w²q).
    pub curl_i_printed: f64,
    pub div_g: f64,
    pub curl_g: f64,
    /// Potential 1/(4q) with additive constant 0.
    pub potential: f64,
}

/// Evaluates the polar closed forms for one surface and one profile.
#[derive(Debug, Clone, Copy)]
pub struct PolarEvaluator<'a> {
    pub spec: &'a RuledSurfaceSpec,
    pub support: &'a PolarSupport,
}

impl<'a> PolarEvaluator<'a> {
    pub fn new(spec: &'a RuledSurfaceSpec, support: &'a PolarSupport) -> Self {
        Self { spec, support }
    }

    pub fn point(&self, u: f64, v: f64) -> Result<PolarPoint> {
        let point = self.spec.point(u, v)?;
        let big_v = polar_v_at(&point);
        let (q, dq, ddq) = self.support.derivatives(big_v)?;
        if !(q.abs() >= Q_MIN) {
            return Err(Error::SupportVanishing { u, v, q: q.abs() });
        }
        Ok(PolarPoint {
            point,
            big_v,
            q,
            dq,
            ddq,
        })
    }

    /// y = ((δq − q̇v)/w) n − ((qv + δq̇)/w) z.
    pub fn normal(&self, u: f64, v: f64) -> Result<FrameVector> {
        let pp = self.point(u, v)?;
        let (d, w, v) = (pp.point.jet.delta, pp.point.w, v);
        Ok(Vector3::new(
            0.0,
            (d * pp.q - pp.dq * v) / w,
            -(pp.q * v + d * pp.dq) / w,
        ))
    }

    pub fn invariants(&self, u: f64, v: f64) -> Result<PolarInvariants> {
        Ok(invariants_at(&self.point(u, v)?))
    }

    pub fn tchebychev(&self, u: f64, v: f64) -> Result<PolarTchebychev> {
        Ok(tchebychev_at(&self.point(u, v)?))
    }

    pub fn support_vector(&self, u: f64, v: f64) -> Result<PolarSupportVector> {
        Ok(support_vector_at(&self.point(u, v)?))
    }

    /// Closed-form Tchebychev field as a [`VectorField2`].
    pub fn tchebychev_field(&self) -> PolarField<'a> {
        PolarField {
            eval: *self,
            kind: FieldKind::Tchebychev,
        }
    }

    /// Closed-form support vector field as a [`VectorField2`].
    pub fn support_vector_field(&self) -> PolarField<'a> {
        PolarField {
            eval: *self,
            kind: FieldKind::SupportVector,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum FieldKind {
    Tchebychev,
    SupportVector,
}

/// One of the two polar vector fields, for use with
/// [`crate::relative::field_calculus`].
#[derive(Debug, Clone, Copy)]
pub struct PolarField<'a> {
    eval: PolarEvaluator<'a>,
    kind: FieldKind,
}

impl VectorField2 for PolarField<'_> {
    fn components(&self, u: f64, v: f64) -> Result<[f64; 2]> {
        let pp = self.eval.point(u, v)?;
        Ok(match self.kind {
            FieldKind::Tchebychev => tchebychev_components(&pp),
            FieldKind::SupportVector => support_vector_components(&pp),
        })
    }
}

fn invariants_at(pp: &PolarPoint) -> PolarInvariants {
    let p = &pp.point;
    let j = &p.jet;
    let (d, dd, k, l) = (j.delta, j.d_delta, j.kappa, j.lambda);
    let (w, v) = (p.w, p.v);
    let (q, dq, ddq) = (pp.q, pp.dq, pp.ddq);
    let w2 = w * w;
    let w3 = w2 * w;
    let d2 = d * d;
    let qq = q + ddq;

    let b11 = -(k * w2 + dd * v) * qq / w3;
    let b12 = (-dq * v * v * v - d2 * dq * v
        + d2 * d * (q * (k * l + 1.0) + k * l * ddq)
        + d * v * (q * (k * l * v + v + dd * l) + l * ddq * (k * v + dd)))
        / w3;
    let b21 = d * qq / w3;
    let b22 = -d2 * l * qq / w3;

    let mean_tilde = p.mean_curvature();
    let curvature = -d * (d * q - dq * v) * qq / (w2 * w2);
    let mean = mean_tilde * qq;

    // J_EUK = v·Ĵ; using Ĵ keeps J regular on the striction curve.
    let j_hat = 3.0 * (k * v * v * v + d2 * (k - l) * v + d2 * dd) / (2.0 * d2 * w3);
    let pick_euclidean = v * j_hat;
    let pick = (q * v + d * dq) * (j_hat + 3.0 * mean_tilde * dq / (d * q));

    let m = pp.mean_factor();
    let scalar = (-q * q * (k * w2 * w2 + d2 * ((d2 - v * v) * l + 2.0 * dd * v))
        + d2 * m * dq * dq
        + d * q * ((2.0 * d2 * l * v + (v * v - d2) * dd) * dq - d * m * ddq))
        / (2.0 * d2 * w3 * q);

    PolarInvariants {
        big_v: pp.big_v,
        q,
        dq,
        ddq,
        shape: Matrix2::new(b11, b12, b21, b22),
        relative_curvature: curvature,
        relative_mean_curvature: mean,
        pick,
        pick_euclidean,
        scalar_curvature: scalar,
    }
}

fn tchebychev_components(pp: &PolarPoint) -> [f64; 2] {
    let p = &pp.point;
    let j = &p.jet;
    let (d, w, v, q, dq) = (j.delta, p.w, p.v, pp.q, pp.dq);
    let w2 = w * w;
    [
        (q * v + d * dq) / (d * w),
        (q * (2.0 * j.kappa * v * w2 - 2.0 * d * d * j.lambda * v + j.d_delta * w2)
            - 2.0 * d * d * d * j.lambda * dq)
            / (2.0 * d * d * w),
    ]
}

fn support_vector_components(pp: &PolarPoint) -> [f64; 2] {
    let p = &pp.point;
    let s = pp.dq / (4.0 * p.w * pp.q);
    [-s, p.jet.delta * p.jet.lambda * s]
}

fn tchebychev_at(pp: &PolarPoint) -> PolarTchebychev {
    let p = &pp.point;
    let j = &p.jet;
    let (d, dd, ddd, k, dk, l) = (j.delta, j.d_delta, j.dd_delta, j.kappa, j.d_kappa, j.lambda);
    let (w, v, q, dq, ddq) = (p.w, p.v, pp.q, pp.dq, pp.ddq);
    let (w2, d2) = (w * w, d * d);
    let m = pp.mean_factor();

    let div_i = (2.0 * w2 * q * ((3.0 * v * v + d2) * k - d2 * l)
        + d * ((-dd * v * v + d2 * (-2.0 * l * v + dd)) * dq - 2.0 * d * m * ddq))
        / (2.0 * d2 * w * w2);

    let curl_brace = |middle_scale: f64| {
        2.0 * dd * q * v * v * (2.0 * k * v + dd)
            + d2 * q * (4.0 * (k * l + 1.0) * v * v + dd * (2.0 * k + l) * v + dd * dd)
            + middle_scale
                * (dq * (4.0 * v + (k + l) * (2.0 * k * v + dd)) - q * (2.0 * dk * v + ddd))
            + d * v
                * (2.0 * k * k * dq * v * v + 3.0 * k * dd * dq * v + dd * dd * dq
                    - q * v * (2.0 * dk * v + ddd))
            + 2.0 * d2 * d2 * (q * (k * l + 1.0) + ddq)
    };
    let curl_scale = -1.0 / (2.0 * d2 * d * w2);

    let div_g = (q * q * (k * w2 * w2 + d2 * ((v * v - d2) * l - 2.0 * dd * v))
        + d2 * dq * dq * m
        + d * q * (dq * (2.0 * d2 * l * v + dd * (v * v - d2)) - d * ddq * m))
        / (d2 * w * w2 * q);

    PolarTchebychev {
        t: tchebychev_components(pp),
        div_i,
        curl_i: curl_scale * curl_brace(d2 * d),
        curl_i_printed: curl_scale * curl_brace(1.0),
        div_g,
        curl_g: 0.0,
        potential: (w * q.abs() / d.abs().sqrt()).ln(),
    }
}

fn support_vector_at(pp: &PolarPoint) -> PolarSupportVector {
    let p = &pp.point;
    let j = &p.jet;
    let (d, dd, l) = (j.delta, j.d_delta, j.lambda);
    let (w, v, q, dq, ddq) = (p.w, p.v, pp.q, pp.dq, pp.ddq);
    let m = pp.mean_factor();
    let curl_num = -d * dq * dq + q * (dq * v + d * ddq);
    PolarSupportVector {
        q: support_vector_components(pp),
        div_i: p.mean_curvature() * (dq * dq - q * ddq) / (2.0 * q * q),
        curl_i: curl_num / (4.0 * w * w * q * q),
        curl_i_printed: curl_num / (4.0 * w * w * q),
        div_g: (dq * (q * (-dd * v * v + d * d * (-2.0 * l * v + dd)) - 2.0 * d * dq * m)
            + d * q * ddq * m)
            / (4.0 * d * w * w * w * q * q),
        curl_g: 0.0,
        potential: 1.0 / (4.0 * q),
    }
}

pub fn polar_normal(
    spec: &RuledSurfaceSpec,
    ps: &PolarSupport,
    u: f64,
    v: f64,
) -> Result<FrameVector> {
    PolarEvaluator::new(spec, ps).normal(u, v)
}

/// `(B, K, H)`.
pub fn polar_shape_and_curvatures(
    spec: &RuledSurfaceSpec,
    ps: &PolarSupport,
    u: f64,
    v: f64,
) -> Result<(Matrix2<f64>, f64, f64)> {
    let inv = PolarEvaluator::new(spec, ps).invariants(u, v)?;
    Ok((
        inv.shape,
        inv.relative_curvature,
        inv.relative_mean_curvature,
    ))
}

/// `(J, J_EUK, S)`.
pub fn polar_pick_scalar(
    spec: &RuledSurfaceSpec,
    ps: &PolarSupport,
    u: f64,
    v: f64,
) -> Result<(f64, f64, f64)> {
    let inv = PolarEvaluator::new(spec, ps).invariants(u, v)?;
    Ok((inv.pick, inv.pick_euclidean, inv.scalar_curvature))
}

pub fn polar_tchebychev(
    spec: &RuledSurfaceSpec,
    ps: &PolarSupport,
    u: f64,
    v: f64,
) -> Result<PolarTchebychev> {
    PolarEvaluator::new(spec, ps).tchebychev(u, v)
}

pub fn polar_support_vector(
    spec: &RuledSurfaceSpec,
    ps: &PolarSupport,
    u: f64,
    v: f64,
) -> Result<PolarSupportVector> {
    PolarEvaluator::new(spec, ps).support_vector(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relative::{field_calculus, RelativePoint, SupportFunction};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn spec(d: &str, k: &str, l: &str) -> RuledSurfaceSpec {
        RuledSurfaceSpec::parse(d, k, l, (0.0, 2.0 * PI)).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn v_examples() {
        assert!((polar_V(&spec("1", "0", "0"), 0.7, 1.0).unwrap() - FRAC_PI_4).abs() < 1e-15);
        let c = spec("1", "1", "0");
        assert!((polar_V(&c, FRAC_PI_2, 1.0).unwrap() + FRAC_PI_4).abs() < 1e-15);
        assert_eq!(polar_V(&c, 0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn unit_profile_gives_euclidean_normal() {
        let s = spec("2 + sin(u)", "cos(u)", "u/5");
        let one = PolarSupport::parse("1").unwrap();
        let y = polar_normal(&s, &one, 1.0, -1.5).unwrap();
        let xi = s.point(1.0, -1.5).unwrap().normal();
        assert!((y - xi).amax() < 1e-15);
    }

    #[test]
    fn cosine_normal_on_conical_fixture() {
        let s = spec("1", "1", "0");
        let y = polar_normal(&s, &PolarSupport::parse("cos(V)").unwrap(), 0.0, 1.0).unwrap();
        assert!((y - Vector3::new(0.0, 1.0, 0.0)).amax() < 1e-15);
    }

    #[test]
    fn polar_normal_matches_general_formula() {
        let s = spec("2 + sin(u)", "cos(u)", "u/5");
        for src in ["cos(V)", "exp(V/2)", "2 + sin(V)"] {
            let f = PolarSupport::parse(src).unwrap();
            let q = SupportFunction::polar(f.clone());
            for (u, v) in [(0.4, -2.0), (3.3, 1.1), (5.0, 0.0)] {
                let a = polar_normal(&s, &f, u, v).unwrap();
                let b = RelativePoint::new(&s, &q, u, v).unwrap().relative_normal();
                assert!((a - b).amax() < 1e-10, "{src} at ({u},{v})");
                assert_eq!(a.x, 0.0);
            }
        }
    }

    #[test]
    fn unit_profile_reduces_to_euclidean_invariants() {
        let s = spec("2 + sin(u)", "cos(u)", "u/5");
        let one = PolarSupport::parse("1").unwrap();
        let e = PolarEvaluator::new(&s, &one);
        let inv = e.invariants(2.0, 0.8).unwrap();
        let p = s.point(2.0, 0.8).unwrap();
        assert!(close(inv.relative_curvature, p.gauss_curvature(), 1e-14));
        assert!(close(
            inv.relative_mean_curvature,
            p.mean_curvature(),
            1e-14
        ));
        assert!(close(inv.pick, inv.pick_euclidean, 1e-14));
        let sv = e.support_vector(2.0, 0.8).unwrap();
        assert_eq!(sv.q, [0.0, 0.0]);
        assert_eq!((sv.div_i, sv.curl_i, sv.div_g), (0.0, 0.0, 0.0));
    }

    #[test]
    fn spot_values_on_conical_fixture() {
        let s = spec("1", "1", "0");
        let f = PolarSupport::parse("cos(V)").unwrap();
        let e = PolarEvaluator::new(&s, &f);
        let a = e.invariants(0.0, 1.0).unwrap();
        let expect = Matrix2::new(0.0, 1.0, 0.0, 0.0);
        assert!((a.shape - expect).amax() < 1e-9);
        assert!(a.relative_curvature.abs() < 1e-9 && a.relative_mean_curvature.abs() < 1e-9);

        let b = e.invariants(FRAC_PI_2, 2.0).unwrap();
        assert!((b.pick - 2.25).abs() < 1e-9);
        assert!((b.scalar_curvature + 0.75).abs() < 1e-9);
        let t = e.tchebychev(FRAC_PI_2, 2.0).unwrap();
        assert!((t.t[0] - 1.0).abs() < 1e-9 && (t.t[1] - 4.0).abs() < 1e-9);
        let q = e.support_vector(FRAC_PI_2, 2.0).unwrap();
        assert!((q.q[0] + 1.0 / (8.0 * 5f64.sqrt())).abs() < 1e-9 && q.q[1].abs() < 1e-12);
    }

    #[test]
    fn pick_of_unit_profile_on_conical_fixture() {
        let s = spec("1", "1", "0");
        let (j, j_euk, _) =
            polar_pick_scalar(&s, &PolarSupport::parse("1").unwrap(), 0.3, 1.0).unwrap();
        assert!((j - 3.0 * 2f64.sqrt() / 4.0).abs() < 1e-14);
        assert!((j_euk - j).abs() < 1e-14);
    }

    #[test]
    fn pick_is_regular_on_striction_curve() {
        let s = spec("2 + sin(u)", "cos(u)", "u/5");
        let f = PolarSupport::parse("2 + sin(V)").unwrap();
        let e = PolarEvaluator::new(&s, &f);
        let j0 = e.invariants(1.0, 0.0).unwrap().pick;
        let jp = e.invariants(1.0, 1e-7).unwrap().pick;
        assert!(j0.is_finite() && (j0 - jp).abs() < 1e-5);
    }

    #[test]
    fn closed_forms_agree_with_general_machinery() {
        let s = spec("2 + sin(u)", "cos(u)", "u/5");
        for src in ["cos(V)", "exp(V/2)", "2 + sin(V)"] {
            let f = PolarSupport::parse(src).unwrap();
            let q = SupportFunction::polar(f.clone());
            let e = PolarEvaluator::new(&s, &f);
            for (u, v) in [(0.5, -2.5), (2.2, 0.3), (4.4, 1.9)] {
                let rp = RelativePoint::new(&s, &q, u, v).unwrap();
                let inv = e.invariants(u, v).unwrap();
                let t = e.tchebychev(u, v).unwrap();
                let sv = e.support_vector(u, v).unwrap();
                assert!(close(inv.pick, rp.pick(), 1e-10), "{src} J");
                let tg = rp.tchebychev();
                assert!(
                    close(t.t[0], tg[0], 1e-9) && close(t.t[1], tg[1], 1e-9),
                    "{src} T"
                );
                let qg = rp.support_vector();
                assert!(
                    close(sv.q[0], qg[0], 1e-9) && close(sv.q[1], qg[1], 1e-9),
                    "{src} Q"
                );
                assert!(inv.structural_residual().abs() <= 1e-8 * (1.0 + inv.pick.abs()));
                assert!(close(inv.shape.determinant(), inv.relative_curvature, 1e-9));
                assert!(close(
                    inv.shape.trace() / 2.0,
                    inv.relative_mean_curvature,
                    1e-9
                ));

                let ft = field_calculus(&s, &q, &e.tchebychev_field(), u, v).unwrap();
                assert!(close(t.div_i, ft.div_i, 1e-7), "{src} divI T");
                assert!(close(t.curl_i, ft.curl_i, 1e-7), "{src} curlI T");
                assert!(close(t.div_g, ft.div_g, 1e-7), "{src} divG T");
                assert!(ft.curl_g.abs() < 1e-6, "{src} curlG T");
                let fq = field_calculus(&s, &q, &e.support_vector_field(), u, v).unwrap();
                assert!(close(sv.div_i, fq.div_i, 1e-7), "{src} divI Q");
                assert!(close(sv.curl_i, fq.curl_i, 1e-7), "{src} curlI Q");
                assert!(close(sv.div_g, fq.div_g, 1e-7), "{src} divG Q");
                assert!(fq.curl_g.abs() < 1e-6, "{src} curlG Q");
            }
        }
    }

    #[test]
    fn printed_rotations_differ_only_where_expected() {
        // δ = 1: the missing δ³ is invisible; q = 1: the missing q is invisible
        let s = spec("1", "1", "0");
        let f = PolarSupport::parse("exp(V/2)").unwrap();
        let e = PolarEvaluator::new(&s, &f);
        let t = e.tchebychev(1.0, 0.5).unwrap();
        assert!((t.curl_i - t.curl_i_printed).abs() < 1e-14);
        let g = spec("2 + sin(u)", "cos(u)", "u/5");
        let f = PolarSupport::parse("exp(V/2)").unwrap();
        let e = PolarEvaluator::new(&g, &f);
        let t = e.tchebychev(1.0, 0.5).unwrap();
        assert!((t.curl_i - t.curl_i_printed).abs() > 1e-3);
        let sv = e.support_vector(1.0, 0.5).unwrap();
        assert!((sv.curl_i * sv_q(&e) - sv.curl_i_printed).abs() < 1e-14);
    }

    fn sv_q(e: &PolarEvaluator) -> f64 {
        e.point(1.0, 0.5).unwrap().q
    }

    #[test]
    fn harmonic_profile_is_flat_and_minimal() {
        let g = spec("2 + sin(u)", "cos(u)", "u/5");
        let f = PolarSupport::harmonic(3.0, -2.0);
        let e = PolarEvaluator::new(&g, &f);
        for (u, v) in [(0.5, -2.5), (2.2, 0.3)] {
            let inv = e.invariants(u, v).unwrap();
            assert!(
                inv.relative_curvature.abs() < 1e-12 && inv.relative_mean_curvature.abs() < 1e-12
            );
        }
    }

    #[test]
    fn vanishing_profile_is_an_error() {
        let s = spec("1", "0", "0");
        // V = arctan(v) = 0 at v = 0, where sin vanishes
        let f = PolarSupport::parse("sin(V)").unwrap();
        let e = PolarEvaluator::new(&s, &f);
        assert!(matches!(
            e.invariants(1.0, 0.0),
            Err(Error::SupportVanishing { .. })
        ));
    }
}
