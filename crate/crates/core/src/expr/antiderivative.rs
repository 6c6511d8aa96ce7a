use super::ScalarExpr;
use crate::error::{Error, Result};

// Gauss–Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const ABS_TOL: f64 = 1e-13;
const MAX_DEPTH: u32 = 40;
const KNOT_SPACING: f64 = 0.05;

/// `u ↦ ∫_{base}^{u} integrand(t) dt` on a fixed interval.
///
/// Cumulative values are computed once at construction on a uniform knot
/// grid; a query integrates from the nearest knot. Constant integrands are
/// integrated exactly.
#[derive(Debug, Clone)]
pub struct Antiderivative {
    integrand: ScalarExpr,
    base: f64,
    lo: f64,
    hi: f64,
    knots: Vec<f64>,
    /// ∫_{lo}^{knot}
    cumulative: Vec<f64>,
    /// ∫_{lo}^{base}, computed through the same query path so F(base) == 0.
    at_base: f64,
}

impl Antiderivative {
    pub fn new(integrand: ScalarExpr, base: f64, domain: (f64, f64)) -> Result<Self> {
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidSpec(format!(
                "bad integration domain [{lo}, {hi}]"
            )));
        }
        if !(lo..=hi).contains(&base) {
            return Err(Error::Domain { u: base, lo, hi });
        }
        let segments = (((hi - lo) / KNOT_SPACING).ceil() as usize).max(4);
        let h = (hi - lo) / segments as f64;
        let knots: Vec<f64> = (0..=segments)
            .map(|i| if i == segments { hi } else { lo + i as f64 * h })
            .collect();
        let mut cumulative = Vec::with_capacity(knots.len());
        cumulative.push(0.0);
        for w in knots.windows(2) {
            let prev = *cumulative.last().unwrap();
            cumulative.push(prev + adaptive(&integrand, w[0], w[1], ABS_TOL, MAX_DEPTH)?);
        }
        let mut a = Self {
            integrand,
            base,
            lo,
            hi,
            knots,
            cumulative,
            at_base: 0.0,
        };
        a.at_base = a.integral_from_lo(base)?;
        Ok(a)
    }

    pub fn integrand(&self) -> &ScalarExpr {
        &self.integrand
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// ∫_{base}^{u} integrand.
    pub fn eval(&self, u: f64) -> Result<f64> {
        if !(self.lo..=self.hi).contains(&u) {
            return Err(Error::Domain {
                u,
                lo: self.lo,
                hi: self.hi,
            });
        }
        if let Some(c) = self.integrand.as_const() {
            return Ok(c * (u - self.base));
        }
        Ok(self.integral_from_lo(u)? - self.at_base)
    }

    fn integral_from_lo(&self, u: f64) -> Result<f64> {
        let h = self.knots[1] - self.knots[0];
        let i = (((u - self.lo) / h).round() as usize).min(self.knots.len() - 1);
        let k = self.knots[i];
        if k == u {
            return Ok(self.cumulative[i]);
        }
        Ok(self.cumulative[i] + adaptive(&self.integrand, k, u, ABS_TOL, MAX_DEPTH)?)
    }
}

/// Free function form of [`Antiderivative::eval`].
pub fn cumulative_integral(a: &Antiderivative, u: f64) -> Result<f64> {
    a.eval(u)
}

fn gk15(f: &ScalarExpr, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = f.eval(c)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = r * XGK[j];
        let s = f.eval(c - dx)? + f.eval(c + dx)?;
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Ok((kron * r, ((kron - gauss) * r).abs()))
}

fn adaptive(f: &ScalarExpr, a: f64, b: f64, tol: f64, depth: u32) -> Result<f64> {
    let (val, err) = gk15(f, a, b)?;
    if err <= tol || depth == 0 {
        return Ok(val);
    }
    let m = 0.5 * (a + b);
    Ok(adaptive(f, a, m, 0.5 * tol, depth - 1)? + adaptive(f, m, b, 0.5 * tol, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn anti(src: &str, base: f64, dom: (f64, f64)) -> Antiderivative {
        Antiderivative::new(ScalarExpr::parse(src).unwrap(), base, dom).unwrap()
    }

    /// Composite Simpson with Richardson extrapolation; independent of the
    /// Gauss–Kronrod path.
    fn simpson_richardson(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let simpson = |n: usize| {
            let h = (b - a) / n as f64;
            let mut s = f(a) + f(b);
            for i in 1..n {
                s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            s * h / 3.0
        };
        let (s1, s2) = (simpson(2000), simpson(4000));
        s2 + (s2 - s1) / 15.0
    }

    #[test]
    fn zero_integrand() {
        let a = anti("0", 0.0, (0.0, 5.0));
        assert_eq!(a.eval(3.3).unwrap(), 0.0);
    }

    #[test]
    fn unit_integrand() {
        let a = anti("1", 0.0, (0.0, 5.0));
        assert_eq!(a.eval(FRAC_PI_2).unwrap(), FRAC_PI_2);
    }

    #[test]
    fn sine_against_quadrature_oracle() {
        let a = anti("sin(u)", 0.0, (0.0, 3.0));
        let oracle = simpson_richardson(f64::sin, 0.0, 1.0);
        assert!((oracle - (1.0 - 1f64.cos())).abs() < 1e-13);
        assert!((a.eval(1.0).unwrap() - oracle).abs() <= 1e-10);
    }

    #[test]
    fn vanishes_at_base() {
        let a = anti("cos(u)*exp(u/3)", 1.234, (0.0, 4.0));
        assert_eq!(a.eval(1.234).unwrap(), 0.0);
    }

    #[test]
    fn derivative_recovers_integrand() {
        let a = anti("cos(u)*exp(u/3) + u^2", 0.5, (0.0, 4.0));
        let h = 1e-4;
        for u in [0.3, 1.7, 3.1] {
            let fd = (a.eval(u + h).unwrap() - a.eval(u - h).unwrap()) / (2.0 * h);
            let exact = a.integrand().eval(u).unwrap();
            assert!((fd - exact).abs() <= 1e-8 * (1.0 + exact.abs()), "u={u}");
        }
    }

    #[test]
    fn outside_domain_is_an_error() {
        let a = anti("sin(u)", 0.0, (0.0, 1.0));
        assert!(matches!(a.eval(1.5), Err(Error::Domain { .. })));
    }
}
