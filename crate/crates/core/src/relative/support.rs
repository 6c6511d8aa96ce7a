use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polar::PolarSupport;
use crate::surface::{RuledSurfaceSpec, SurfacePoint};

/// Evaluations with |q| below this raise [`Error::SupportVanishing`].
pub const Q_MIN: f64 = 1e-8;

type ScalarFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// Which relative normalization a support function describes.
#[derive(Clone)]
pub enum SupportFamily {
    /// q ≡ 1.
    Euclidean,
    /// q = |K̃|^a.
    Manhart { a: f64 },
    /// q = f(V).
    Polar(PolarSupport),
    /// Arbitrary q(u, v); partials by central differences.
    Custom { name: String, q: Arc<ScalarFn> },
}

impl fmt::Debug for SupportFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Euclidean => write!(f, "Euclidean"),
            Self::Manhart { a } => write!(f, "Manhart {{ a: {a} }}"),
            Self::Polar(p) => write!(f, "Polar({})", p.profile().display("V")),
            Self::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

impl SupportFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Euclidean => "euclidean",
            Self::Manhart { .. } => "manhart",
            Self::Polar(_) => "polar",
            Self::Custom { .. } => "custom",
        }
    }
}

/// q together with its first partials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportJet {
    pub q: f64,
    pub q_u: f64,
    pub q_v: f64,
}

/// A support function q(u, v) of a relative normalization.
#[derive(Debug, Clone)]
pub struct SupportFunction {
    family: SupportFamily,
}

/// Builds the support function of `family`. Parameters are validated; the
/// non-vanishing of q is checked per evaluation and, on a window, by
/// [`SupportFunction::check_nonvanishing`].
pub fn make_support(family: SupportFamily, _spec: &RuledSurfaceSpec) -> Result<SupportFunction> {
    if let SupportFamily::Manhart { a } = family {
        if !a.is_finite() {
            return Err(Error::Config(format!("Manhart exponent {a} is not finite")));
        }
    }
    Ok(SupportFunction { family })
}

impl SupportFunction {
    pub fn euclidean() -> Self {
        Self {
            family: SupportFamily::Euclidean,
        }
    }

    pub fn manhart(a: f64) -> Self {
        Self {
            family: SupportFamily::Manhart { a },
        }
    }

    pub fn polar(f: PolarSupport) -> Self {
        Self {
            family: SupportFamily::Polar(f),
        }
    }

    pub fn custom(
        name: impl Into<String>,
        q: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            family: SupportFamily::Custom {
                name: name.into(),
                q: Arc::new(q),
            },
        }
    }

    pub fn family(&self) -> &SupportFamily {
        &self.family
    }

    pub fn as_polar(&self) -> Option<&PolarSupport> {
        match &self.family {
            SupportFamily::Polar(p) => Some(p),
            _ => None,
        }
    }

    /// Raw q(u, v) without the vanishing check.
    pub fn value(&self, spec: &RuledSurfaceSpec, u: f64, v: f64) -> Result<f64> {
        match &self.family {
            SupportFamily::Euclidean => Ok(1.0),
            SupportFamily::Manhart { a } => {
                let p = spec.point(u, v)?;
                Ok(p.gauss_curvature().abs().powf(*a))
            }
            SupportFamily::Polar(f) => {
                let p = spec.point(u, v)?;
                f.value(crate::polar::polar_v_at(&p))
            }
            SupportFamily::Custom { name, q } => {
                spec.check_domain(u)?;
                let val = q(u, v);
                if val.is_finite() {
                    Ok(val)
                } else {
                    Err(Error::NonFinite {
                        expr: name.clone(),
                        var: "u",
                        at: u,
                    })
                }
            }
        }
    }

    /// q and its first partials at a surface point; fails if |q| < [`Q_MIN`].
    pub fn jet(&self, spec: &RuledSurfaceSpec, p: &SurfacePoint) -> Result<SupportJet> {
        let (u, v) = (p.u(), p.v);
        let jet = match &self.family {
            SupportFamily::Euclidean => SupportJet {
                q: 1.0,
                q_u: 0.0,
                q_v: 0.0,
            },
            SupportFamily::Manhart { a } => {
                let q = p.gauss_curvature().abs().powf(*a);
                let [w_u, w_v] = p.w_partials();
                let j = &p.jet;
                SupportJet {
                    q,
                    q_u: q * a * (2.0 * j.d_delta / j.delta - 4.0 * w_u / p.w),
                    q_v: q * a * (-4.0 * w_v / p.w),
                }
            }
            SupportFamily::Polar(f) => {
                let (q, dq, _) = f.derivatives(crate::polar::polar_v_at(p))?;
                let [v_u, v_v] = crate::polar::polar_v_partials(p);
                SupportJet {
                    q,
                    q_u: dq * v_u,
                    q_v: dq * v_v,
                }
            }
            SupportFamily::Custom { .. } => {
                let q = self.value(spec, u, v)?;
                let hu = 1e-5 * (1.0 + u.abs());
                let hv = 1e-5 * (1.0 + v.abs());
                SupportJet {
                    q,
                    q_u: (self.value(spec, u + hu, v)? - self.value(spec, u - hu, v)?) / (2.0 * hu),
                    q_v: (self.value(spec, u, v + hv)? - self.value(spec, u, v - hv)?) / (2.0 * hv),
                }
            }
        };
        if !(jet.q.abs() >= Q_MIN) {
            return Err(Error::SupportVanishing {
                u,
                v,
                q: jet.q.abs(),
            });
        }
        Ok(jet)
    }

    /// Samples |q| ≥ [`Q_MIN`] on an `n × n` grid over the window.
    pub fn check_nonvanishing(
        &self,
        spec: &RuledSurfaceSpec,
        u_range: (f64, f64),
        v_range: (f64, f64),
        n: usize,
    ) -> Result<()> {
        let n = n.max(2);
        for i in 0..n {
            let u = u_range.0 + (u_range.1 - u_range.0) * i as f64 / (n - 1) as f64;
            for k in 0..n {
                let v = v_range.0 + (v_range.1 - v_range.0) * k as f64 / (n - 1) as f64;
                let q = self.value(spec, u, v)?;
                if !(q.abs() >= Q_MIN) {
                    return Err(Error::SupportVanishing { u, v, q: q.abs() });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conical() -> RuledSurfaceSpec {
        RuledSurfaceSpec::parse("1", "1", "0", (0.0, 3.0)).unwrap()
    }

    #[test]
    fn euclidean_is_constant_one() {
        let s = conical();
        let q = make_support(SupportFamily::Euclidean, &s).unwrap();
        let j = q.jet(&s, &s.point(1.0, 2.0).unwrap()).unwrap();
        assert_eq!(
            j,
            SupportJet {
                q: 1.0,
                q_u: 0.0,
                q_v: 0.0
            }
        );
    }

    #[test]
    fn affine_manhart_is_one_on_striction_line() {
        let s = RuledSurfaceSpec::parse("1", "0", "0", (0.0, 3.0)).unwrap();
        let q = SupportFunction::manhart(0.25);
        assert_eq!(q.value(&s, 1.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn manhart_partials_against_differences() {
        let s = conical();
        let q = SupportFunction::manhart(1.0);
        let j = q.jet(&s, &s.point(1.0, 1.0).unwrap()).unwrap();
        assert!((j.q - 0.25).abs() < 1e-15);
        assert!((j.q_v + 0.5).abs() < 1e-15);
        let h = 1e-5;
        let fd =
            (q.value(&s, 1.0, 1.0 + h).unwrap() - q.value(&s, 1.0, 1.0 - h).unwrap()) / (2.0 * h);
        assert!((fd - j.q_v).abs() < 1e-9);

        let g = RuledSurfaceSpec::parse("2 + sin(u)", "cos(u)", "u/5", (0.0, 3.0)).unwrap();
        let q = SupportFunction::manhart(-0.7);
        let j = q.jet(&g, &g.point(1.3, -0.4).unwrap()).unwrap();
        let fd =
            (q.value(&g, 1.3 + h, -0.4).unwrap() - q.value(&g, 1.3 - h, -0.4).unwrap()) / (2.0 * h);
        assert!((fd - j.q_u).abs() < 1e-8 * (1.0 + j.q_u.abs()));
    }

    #[test]
    fn vanishing_support_is_rejected() {
        let s = conical();
        let q = SupportFunction::custom("v", |_, v| v);
        let err = q.jet(&s, &s.point(1.0, 0.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::SupportVanishing { .. }));
        assert!(q
            .check_nonvanishing(&s, (0.0, 1.0), (-1.0, 1.0), 3)
            .is_err());
        assert!(q.check_nonvanishing(&s, (0.0, 1.0), (0.5, 1.0), 5).is_ok());
    }

    #[test]
    fn rejects_non_finite_manhart_exponent() {
        assert!(make_support(SupportFamily::Manhart { a: f64::NAN }, &conical()).is_err());
    }
}
