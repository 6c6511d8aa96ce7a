//! Skew ruled surfaces in standard parameters, `x(u, v) = s(u) + v·e(u)`.
//!
//! [`RuledSurfaceSpec`] holds the invariant triple (δ, κ, λ) together with the
//! derivatives and the κ-antiderivative the closed forms need.
//! [`SurfacePoint`] evaluates the Euclidean quantities at one `(u, v)`; those
//! are expressed in the moving frame and therefore do not need the
//! integrated [`FramePath`].

mod frame;

pub use frame::{integrate_frame, integrate_frame_with, surface_jet, Frame, FramePath, SurfaceJet};

use nalgebra::{Matrix2, Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::expr::{Antiderivative, ScalarExpr};
use crate::FrameVector;

/// Smallest admissible |δ| on the domain.
pub const DELTA_MIN: f64 = 1e-8;
const VALIDATION_SAMPLES: usize = 10_000;

/// The fundamental invariants of a skew ruled surface plus placement data.
#[derive(Debug, Clone)]
pub struct RuledSurfaceSpec {
    delta: ScalarExpr,
    kappa: ScalarExpr,
    lambda: ScalarExpr,
    d_delta: ScalarExpr,
    dd_delta: ScalarExpr,
    d_kappa: ScalarExpr,
    d_lambda: ScalarExpr,
    kappa_integral: Antiderivative,
    domain: (f64, f64),
    base: f64,
    initial_frame: Frame,
    initial_point: Vector3<f64>,
}

/// Builder for [`RuledSurfaceSpec`]; validation happens in [`build`](Self::build).
#[derive(Debug, Clone)]
pub struct SurfaceBuilder {
    delta: ScalarExpr,
    kappa: ScalarExpr,
    lambda: ScalarExpr,
    domain: (f64, f64),
    base: Option<f64>,
    frame: Frame,
    origin: Vector3<f64>,
}

impl SurfaceBuilder {
    pub fn domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = (lo, hi);
        self
    }

    /// Base point u₀: the frame is prescribed there and ∫κ vanishes there.
    pub fn base(mut self, u0: f64) -> Self {
        self.base = Some(u0);
        self
    }

    pub fn initial_frame(mut self, frame: Frame) -> Self {
        self.frame = frame;
        self
    }

    pub fn initial_point(mut self, s0: Vector3<f64>) -> Self {
        self.origin = s0;
        self
    }

    pub fn build(self) -> Result<RuledSurfaceSpec> {
        let (lo, hi) = self.domain;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidSpec(format!(
                "domain [{lo}, {hi}] is not a finite interval"
            )));
        }
        let base = self.base.unwrap_or(lo);
        if !(lo..=hi).contains(&base) {
            return Err(Error::Domain { u: base, lo, hi });
        }
        let defect = self.frame.orthonormality_defect();
        if defect > 1e-12 {
            return Err(Error::InvalidSpec(format!(
                "initial frame is not orthonormal (defect {defect:e})"
            )));
        }
        if self.frame.e.cross(&self.frame.n).dot(&self.frame.z) < 0.0 {
            return Err(Error::InvalidSpec("initial frame is left-handed".into()));
        }
        if !self.origin.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidSpec(
                "initial striction point is not finite".into(),
            ));
        }

        let d_delta = self.delta.derivative();
        let dd_delta = d_delta.derivative();
        let d_kappa = self.kappa.derivative();
        let d_lambda = self.lambda.derivative();

        for i in 0..=VALIDATION_SAMPLES {
            let u = lo + (hi - lo) * i as f64 / VALIDATION_SAMPLES as f64;
            let d = self.delta.eval(u)?;
            if d.abs() < DELTA_MIN {
                return Err(Error::InvalidSpec(format!(
                    "distribution parameter vanishes near u = {u} (δ = {d:e}); surface is not skew"
                )));
            }
            for e in [
                &self.kappa,
                &self.lambda,
                &d_delta,
                &dd_delta,
                &d_kappa,
                &d_lambda,
            ] {
                e.eval(u)?;
            }
        }

        let kappa_integral = Antiderivative::new(self.kappa.clone(), base, (lo, hi))?;
        Ok(RuledSurfaceSpec {
            delta: self.delta,
            kappa: self.kappa,
            lambda: self.lambda,
            d_delta,
            dd_delta,
            d_kappa,
            d_lambda,
            kappa_integral,
            domain: (lo, hi),
            base,
            initial_frame: self.frame,
            initial_point: self.origin,
        })
    }
}

/// Values of the invariants and of the derivatives used by the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantJet {
    pub u: f64,
    pub delta: f64,
    pub d_delta: f64,
    pub dd_delta: f64,
    pub kappa: f64,
    pub d_kappa: f64,
    pub lambda: f64,
    pub d_lambda: f64,
    /// ∫_{u₀}^{u} κ
    pub kappa_integral: f64,
}

impl RuledSurfaceSpec {
    pub fn builder(delta: ScalarExpr, kappa: ScalarExpr, lambda: ScalarExpr) -> SurfaceBuilder {
        SurfaceBuilder {
            delta,
            kappa,
            lambda,
            domain: (0.0, 1.0),
            base: None,
            frame: Frame::standard(),
            origin: Vector3::zeros(),
        }
    }

    /// Parses the three invariants and builds with default placement.
    pub fn parse(delta: &str, kappa: &str, lambda: &str, domain: (f64, f64)) -> Result<Self> {
        Self::builder(
            ScalarExpr::parse(delta)?,
            ScalarExpr::parse(kappa)?,
            ScalarExpr::parse(lambda)?,
        )
        .domain(domain.0, domain.1)
        .build()
    }

    pub fn delta(&self) -> &ScalarExpr {
        &self.delta
    }

    pub fn kappa(&self) -> &ScalarExpr {
        &self.kappa
    }

    pub fn lambda(&self) -> &ScalarExpr {
        &self.lambda
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn initial_frame(&self) -> &Frame {
        &self.initial_frame
    }

    pub fn initial_point(&self) -> Vector3<f64> {
        self.initial_point
    }

    pub fn kappa_integral(&self) -> &Antiderivative {
        &self.kappa_integral
    }

    pub fn contains(&self, u: f64) -> bool {
        (self.domain.0..=self.domain.1).contains(&u)
    }

    pub fn check_domain(&self, u: f64) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::Domain {
                u,
                lo: self.domain.0,
                hi: self.domain.1,
            })
        }
    }

    pub fn jet(&self, u: f64) -> Result<InvariantJet> {
        self.check_domain(u)?;
        Ok(InvariantJet {
            u,
            delta: self.delta.eval(u)?,
            d_delta: self.d_delta.eval(u)?,
            dd_delta: self.dd_delta.eval(u)?,
            kappa: self.kappa.eval(u)?,
            d_kappa: self.d_kappa.eval(u)?,
            lambda: self.lambda.eval(u)?,
            d_lambda: self.d_lambda.eval(u)?,
            kappa_integral: self.kappa_integral.eval(u)?,
        })
    }

    pub fn point(&self, u: f64, v: f64) -> Result<SurfacePoint> {
        if !v.is_finite() {
            return Err(Error::InvalidSpec(format!("v = {v} is not finite")));
        }
        Ok(SurfacePoint::new(self.jet(u)?, v))
    }

    /// Right helicoid test by sampling: δ constant, κ ≡ λ ≡ 0.
    pub fn is_right_helicoid(&self, samples: usize, tol: f64) -> Result<bool> {
        let (lo, hi) = self.domain;
        let n = samples.max(2);
        let d0 = self.delta.eval(lo)?;
        for i in 0..n {
            let u = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let j = self.jet(u)?;
            if (j.delta - d0).abs() > tol * (1.0 + d0.abs())
                || j.d_delta.abs() > tol
                || j.kappa.abs() > tol
                || j.lambda.abs() > tol
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Symmetric 2×2 tensor (components of a quadratic form).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymTensor2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl SymTensor2 {
    pub fn new(a11: f64, a12: f64, a22: f64) -> Self {
        Self { a11, a12, a22 }
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => self.a11,
            (1, 1) => self.a22,
            _ => self.a12,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a22 * s)
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.a11, self.a12, self.a12, self.a22)
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        (d != 0.0 && d.is_finite()).then(|| Self::new(self.a22 / d, -self.a12 / d, self.a11 / d))
    }
}

/// Euclidean quantities of the surface at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct SurfacePoint {
    pub jet: InvariantJet,
    pub v: f64,
    /// √(δ² + v²)
    pub w: f64,
}

impl SurfacePoint {
    pub fn new(jet: InvariantJet, v: f64) -> Self {
        let w = (jet.delta * jet.delta + v * v).sqrt();
        Self { jet, v, w }
    }

    pub fn u(&self) -> f64 {
        self.jet.u
    }

    /// x_/1 in the moving frame: δλ e + v n + δ z.
    pub fn x_u(&self) -> FrameVector {
        let j = &self.jet;
        Vector3::new(j.delta * j.lambda, self.v, j.delta)
    }

    /// x_/2 = e.
    pub fn x_v(&self) -> FrameVector {
        Vector3::new(1.0, 0.0, 0.0)
    }

    /// Unit normal ξ = (δ n − v z)/w.
    pub fn normal(&self) -> FrameVector {
        Vector3::new(0.0, self.jet.delta / self.w, -self.v / self.w)
    }

    /// Columns x_/1, x_/2, then ξ.
    pub fn tangent_basis(&self) -> Matrix3<f64> {
        Matrix3::from_columns(&[self.x_u(), self.x_v(), self.normal()])
    }

    pub fn first_form(&self) -> SymTensor2 {
        let j = &self.jet;
        let dl = j.delta * j.lambda;
        SymTensor2::new(self.w * self.w + dl * dl, dl, 1.0)
    }

    pub fn second_form(&self) -> SymTensor2 {
        let j = &self.jet;
        let w = self.w;
        SymTensor2::new(
            -(j.kappa * w * w + j.d_delta * self.v - j.delta * j.delta * j.lambda) / w,
            j.delta / w,
            0.0,
        )
    }

    /// K̃ = −δ²/w⁴.
    pub fn gauss_curvature(&self) -> f64 {
        let w2 = self.w * self.w;
        -self.jet.delta * self.jet.delta / (w2 * w2)
    }

    /// H̃ = −(κw² + δ′v + δ²λ)/(2w³).
    pub fn mean_curvature(&self) -> f64 {
        let j = &self.jet;
        let w = self.w;
        -(j.kappa * w * w + j.d_delta * self.v + j.delta * j.delta * j.lambda) / (2.0 * w * w * w)
    }

    /// `(∂u, ∂v)` of w.
    pub fn w_partials(&self) -> [f64; 2] {
        [self.jet.delta * self.jet.d_delta / self.w, self.v / self.w]
    }

    /// `[∂u, ∂v]` of the first form.
    pub fn first_form_partials(&self) -> [SymTensor2; 2] {
        let j = &self.jet;
        let (d, dd, l, dl) = (j.delta, j.d_delta, j.lambda, j.d_lambda);
        [
            SymTensor2::new(
                2.0 * d * dd + 2.0 * d * dd * l * l + 2.0 * d * d * l * dl,
                dd * l + d * dl,
                0.0,
            ),
            SymTensor2::new(2.0 * self.v, 0.0, 0.0),
        ]
    }

    /// `[∂u, ∂v]` of the second form.
    pub fn second_form_partials(&self) -> [SymTensor2; 2] {
        let j = &self.jet;
        let (w, v) = (self.w, self.v);
        let [w_u, w_v] = self.w_partials();
        let p = j.kappa * w * w + j.d_delta * v - j.delta * j.delta * j.lambda;
        let p_u = j.d_kappa * w * w + 2.0 * j.kappa * j.delta * j.d_delta + j.dd_delta * v
            - 2.0 * j.delta * j.d_delta * j.lambda
            - j.delta * j.delta * j.d_lambda;
        let p_v = 2.0 * j.kappa * v + j.d_delta;
        let w2 = w * w;
        [
            SymTensor2::new(
                -(p_u * w - p * w_u) / w2,
                (j.d_delta * w - j.delta * w_u) / w2,
                0.0,
            ),
            SymTensor2::new(-(p_v * w - p * w_v) / w2, -j.delta * w_v / w2, 0.0),
        ]
    }
}

/// Free-function form: `(I, II)` at `(u, v)`.
pub fn fundamental_forms(
    spec: &RuledSurfaceSpec,
    u: f64,
    v: f64,
) -> Result<(SymTensor2, SymTensor2)> {
    let p = spec.point(u, v)?;
    Ok((p.first_form(), p.second_form()))
}

/// Free-function form: `(K̃, H̃)` at `(u, v)`.
pub fn euclidean_curvatures(spec: &RuledSurfaceSpec, u: f64, v: f64) -> Result<(f64, f64)> {
    let p = spec.point(u, v)?;
    Ok((p.gauss_curvature(), p.mean_curvature()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: &str, k: &str, l: &str) -> RuledSurfaceSpec {
        RuledSurfaceSpec::parse(d, k, l, (0.0, 3.0)).unwrap()
    }

    #[test]
    fn forms_on_unit_helicoid_striction() {
        let (g, h) = fundamental_forms(&spec("1", "0", "0"), 0.5, 0.0).unwrap();
        assert_eq!(g, SymTensor2::new(1.0, 0.0, 1.0));
        assert_eq!(h, SymTensor2::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn forms_on_conical_fixture() {
        let (g, h) = fundamental_forms(&spec("1", "1", "0"), 0.5, 1.0).unwrap();
        assert!((g.a11 - 2.0).abs() < 1e-15 && g.a12 == 0.0);
        assert!((h.a11 + 2f64.sqrt()).abs() < 1e-15);
        assert!((h.a12 - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(h.a22, 0.0);
    }

    #[test]
    fn curvatures() {
        let (k, h) = euclidean_curvatures(&spec("1", "0", "0"), 1.0, 0.0).unwrap();
        assert_eq!((k, h), (-1.0, 0.0));
        let (k, h) = euclidean_curvatures(&spec("1", "1", "0"), 1.0, 1.0).unwrap();
        assert!((k + 0.25).abs() < 1e-15);
        assert!((h + 2f64.sqrt() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_identity_with_w() {
        let s = spec("2 + sin(u)", "cos(u)", "u/5");
        for (u, v) in [(0.3, -2.0), (1.9, 0.7), (2.8, 3.0)] {
            let p = s.point(u, v).unwrap();
            let w4 = p.w.powi(4);
            assert!((p.gauss_curvature() * w4 + p.jet.delta.powi(2)).abs() < 1e-13);
        }
    }

    #[test]
    fn second_form_partials_match_central_differences() {
        let s = spec("2 + sin(u)", "cos(u)", "u/5");
        let (u, v, h) = (1.3, -0.8, 1e-5);
        let p = s.point(u, v).unwrap();
        let [du, dv] = p.second_form_partials();
        let [gu, gv] = p.first_form_partials();
        let at = |u, v| s.point(u, v).unwrap();
        let fd = |f: &dyn Fn(&SurfacePoint) -> f64, dir: usize| {
            let (a, b) = if dir == 0 {
                (at(u + h, v), at(u - h, v))
            } else {
                (at(u, v + h), at(u, v - h))
            };
            (f(&a) - f(&b)) / (2.0 * h)
        };
        assert!((du.a11 - fd(&|p| p.second_form().a11, 0)).abs() < 1e-8);
        assert!((du.a12 - fd(&|p| p.second_form().a12, 0)).abs() < 1e-8);
        assert!((dv.a11 - fd(&|p| p.second_form().a11, 1)).abs() < 1e-8);
        assert!((dv.a12 - fd(&|p| p.second_form().a12, 1)).abs() < 1e-8);
        assert!((gu.a11 - fd(&|p| p.first_form().a11, 0)).abs() < 1e-8);
        assert!((gu.a12 - fd(&|p| p.first_form().a12, 0)).abs() < 1e-8);
        assert!((gv.a11 - fd(&|p| p.first_form().a11, 1)).abs() < 1e-8);
    }

    #[test]
    fn rejects_vanishing_delta() {
        let err = RuledSurfaceSpec::parse("sin(u)", "0", "0", (-1.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }

    #[test]
    fn rejects_base_outside_domain() {
        let b = RuledSurfaceSpec::builder(
            ScalarExpr::constant(1.0),
            ScalarExpr::constant(0.0),
            ScalarExpr::constant(0.0),
        )
        .domain(0.0, 1.0)
        .base(2.0);
        assert!(matches!(b.build(), Err(Error::Domain { .. })));
    }

    #[test]
    fn helicoid_detection() {
        assert!(spec("2", "0", "0").is_right_helicoid(50, 1e-12).unwrap());
        assert!(!spec("2 + sin(u)", "0", "0")
            .is_right_helicoid(50, 1e-12)
            .unwrap());
        assert!(!spec("1", "1", "0").is_right_helicoid(50, 1e-12).unwrap());
    }
}
