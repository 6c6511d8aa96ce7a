use serde::Serialize;

use super::PolarSupport;
use crate::error::Result;
use crate::expr::ScalarExpr;
use crate::surface::RuledSurfaceSpec;

/// Sampling parameters for [`classify`].
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Points per axis of the sampling grid.
    pub grid: usize,
    pub tolerance: f64,
    /// Ruling window used for the V samples and the helicoid check.
    pub v_range: (f64, f64),
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            grid: 40,
            tolerance: 1e-9,
            v_range: (-3.0, 3.0),
        }
    }
}

/// Predicates for one surface and one polar profile.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Classification {
    pub right_helicoid: bool,
    #[serde(rename = "K_zero")]
    pub k_zero: bool,
    #[serde(rename = "H_zero")]
    pub h_zero: bool,
    #[serde(rename = "J_zero")]
    pub j_zero: bool,
    #[serde(rename = "Q_incompressible")]
    pub q_incompressible: bool,
    /// "structural" or "sampled".
    pub harmonic_detection: &'static str,
    pub exponential_detection: &'static str,
    pub grid: usize,
    pub tolerance: f64,
}

/// Classifies `(spec, ps)` by the flatness, minimality, Pick and
/// incompressibility criteria.
pub fn classify(
    spec: &RuledSurfaceSpec,
    ps: &PolarSupport,
    opts: &ClassifyOptions,
) -> Result<Classification> {
    let right_helicoid = spec.is_right_helicoid(opts.grid * opts.grid, opts.tolerance)?;
    let samples = v_samples(spec, opts)?;

    let (harmonic, harmonic_detection) = match harmonic_coeffs(ps.profile()) {
        Some((a, b)) if a != 0.0 || b != 0.0 => (true, "structural"),
        _ => (
            all_within(ps, &samples, opts.tolerance, |q, _, ddq| {
                ((q + ddq).abs(), q.abs() + ddq.abs())
            })?,
            "sampled",
        ),
    };
    let (exponential, exponential_detection) = if exponential_form(ps.profile()) {
        (true, "structural")
    } else {
        (
            all_within(ps, &samples, opts.tolerance, |q, dq, ddq| {
                ((dq * dq - q * ddq).abs(), dq * dq + (q * ddq).abs())
            })?,
            "sampled",
        )
    };

    Ok(Classification {
        right_helicoid,
        k_zero: harmonic,
        h_zero: harmonic || right_helicoid,
        j_zero: right_helicoid,
        q_incompressible: exponential || right_helicoid,
        harmonic_detection,
        exponential_detection,
        grid: opts.grid,
        tolerance: opts.tolerance,
    })
}

/// V over the grid; points where |f| is tiny are dropped since the
/// normalization is undefined there.
fn v_samples(spec: &RuledSurfaceSpec, opts: &ClassifyOptions) -> Result<Vec<f64>> {
    let n = opts.grid.max(2);
    let (lo, hi) = spec.domain();
    let (vlo, vhi) = opts.v_range;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let u = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        for k in 0..n {
            let v = vlo + (vhi - vlo) * k as f64 / (n - 1) as f64;
            out.push(super::polar_V(spec, u, v)?);
        }
    }
    Ok(out)
}

/// Relative test `residual ≤ tol·(1 + scale)` at every sample.
fn all_within(
    ps: &PolarSupport,
    samples: &[f64],
    tol: f64,
    residual: impl Fn(f64, f64, f64) -> (f64, f64),
) -> Result<bool> {
    for &big_v in samples {
        let (q, dq, ddq) = ps.derivatives(big_v)?;
        if q.abs() < crate::relative::Q_MIN {
            continue;
        }
        let (r, scale) = residual(q, dq, ddq);
        if r > tol * (1.0 + scale) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficients (a, b) when `e` is syntactically a·cos V + b·sin V.
fn harmonic_coeffs(e: &ScalarExpr) -> Option<(f64, f64)> {
    use ScalarExpr::*;
    match e {
        Const(c) if *c == 0.0 => Some((0.0, 0.0)),
        Cos(x) if matches!(**x, Var) => Some((1.0, 0.0)),
        Sin(x) if matches!(**x, Var) => Some((0.0, 1.0)),
        Neg(x) => harmonic_coeffs(x).map(|(a, b)| (-a, -b)),
        Add(x, y) | Sub(x, y) => {
            let (a1, b1) = harmonic_coeffs(x)?;
            let (a2, b2) = harmonic_coeffs(y)?;
            let s = if matches!(e, Sub(..)) { -1.0 } else { 1.0 };
            Some((a1 + s * a2, b1 + s * b2))
        }
        Mul(x, y) => match (x.as_const(), y.as_const()) {
            (Some(c), _) => harmonic_coeffs(y).map(|(a, b)| (c * a, c * b)),
            (_, Some(c)) => harmonic_coeffs(x).map(|(a, b)| (c * a, c * b)),
            _ => None,
        },
        Div(x, y) => {
            let c = y.as_const().filter(|c| *c != 0.0)?;
            harmonic_coeffs(x).map(|(a, b)| (a / c, b / c))
        }
        _ => None,
    }
}

/// Whether `e` is syntactically c·exp(aV + b), c ≠ 0.
fn exponential_form(e: &ScalarExpr) -> bool {
    use ScalarExpr::*;
    match e {
        Exp(x) => affine_in_var(x),
        Neg(x) => exponential_form(x),
        Mul(x, y) => match (x.as_const(), y.as_const()) {
            (Some(c), _) => c != 0.0 && exponential_form(y),
            (_, Some(c)) => c != 0.0 && exponential_form(x),
            _ => exponential_form(x) && exponential_form(y),
        },
        Div(x, y) => match y.as_const() {
            Some(c) => c != 0.0 && exponential_form(x),
            None => exponential_form(x) && exponential_form(y),
        },
        _ => false,
    }
}

fn affine_in_var(e: &ScalarExpr) -> bool {
    use ScalarExpr::*;
    match e {
        Const(_) | Var => true,
        Neg(x) => affine_in_var(x),
        Add(x, y) | Sub(x, y) => affine_in_var(x) && affine_in_var(y),
        Mul(x, y) => (x.is_constant() && affine_in_var(y)) || (y.is_constant() && affine_in_var(x)),
        Div(x, y) => y.as_const().is_some_and(|c| c != 0.0) && affine_in_var(x),
        _ => false,
    }
}
