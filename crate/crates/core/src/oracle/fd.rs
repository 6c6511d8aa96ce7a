//! Central differences with one Richardson step.

use std::ops::{Add, Mul, Sub};

use nalgebra::DVector;

use crate::error::Result;

/// Values that finite differences can combine.
pub trait Linear:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
}

impl<T> Linear for T where T: Clone + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// f′(x), fourth order: (4·D(h/2) − D(h))/3 with D the central quotient.
pub fn derivative<T: Linear>(f: impl Fn(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let central = |h: f64| -> Result<T> { Ok((f(x + h)? - f(x - h)?) * (0.5 / h)) };
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    Ok((fine * 4.0 - coarse) * (1.0 / 3.0))
}

/// f″(x), fourth order.
pub fn second_derivative<T: Linear>(f: impl Fn(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let mid = f(x)?;
    let central =
        |h: f64| -> Result<T> { Ok((f(x + h)? + f(x - h)? - mid.clone() * 2.0) * (1.0 / (h * h))) };
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    Ok((fine * 4.0 - coarse) * (1.0 / 3.0))
}

/// ∂²f/∂u∂v, fourth order.
pub fn mixed_derivative<T: Linear>(
    f: impl Fn(f64, f64) -> Result<T>,
    u: f64,
    v: f64,
    hu: f64,
    hv: f64,
) -> Result<T> {
    let central = |s: f64| -> Result<T> {
        let (a, b) = (hu * s, hv * s);
        Ok(
            (f(u + a, v + b)? - f(u + a, v - b)? - f(u - a, v + b)? + f(u - a, v - b)?)
                * (0.25 / (a * b)),
        )
    };
    let coarse = central(1.0)?;
    let fine = central(0.5)?;
    Ok((fine * 4.0 - coarse) * (1.0 / 3.0))
}

/// Step for first-order stencils at coordinate `x`.
pub fn step1(x: f64) -> f64 {
    1e-4 * (1.0 + x.abs())
}

/// Step for second-order stencils.
pub const STEP2: f64 = 1e-3;

/// Partials of a vector field on the (u, v) chart up to second order.
#[derive(Debug, Clone)]
pub struct FdJet {
    pub value: DVector<f64>,
    /// `[∂u, ∂v]`.
    pub first: [DVector<f64>; 2],
    /// `[[∂uu, ∂uv], [∂vu, ∂vv]]`, present when `order ≥ 2`.
    pub second: Option<[[DVector<f64>; 2]; 2]>,
}

/// Finite-difference jet of `field` at (u, v). Orders above 2 are clamped.
pub fn fd_jet(
    field: impl Fn(f64, f64) -> Result<DVector<f64>>,
    u: f64,
    v: f64,
    order: usize,
) -> Result<FdJet> {
    let value = field(u, v)?;
    let du = derivative(|t| field(t, v), u, step1(u))?;
    let dv = derivative(|t| field(u, t), v, step1(v))?;
    let second = if order >= 2 {
        let uu = second_derivative(|t| field(t, v), u, STEP2)?;
        let vv = second_derivative(|t| field(u, t), v, STEP2)?;
        let uv = mixed_derivative(&field, u, v, STEP2, STEP2)?;
        Some([[uu, uv.clone()], [uv, vv]])
    } else {
        None
    };
    Ok(FdJet {
        value,
        first: [du, dv],
        second,
    })
}
