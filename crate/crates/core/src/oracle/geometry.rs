//! Relative invariants recomputed from their definitions.
//!
//! Vectors are stored as coefficients in the moving frame {e, n, z}; the
//! ambient derivative along u is the coefficient derivative plus the frame
//! rotation. Only the values of δ, κ, λ and q are used: every derivative is
//! taken numerically, so nothing here shares a formula with the closed forms.

use nalgebra::{Matrix2, Matrix3x2, SVector, Vector3};

use super::fd::derivative;
use crate::error::{Error, Result};
use crate::relative::SupportFunction;
use crate::surface::RuledSurfaceSpec;

type V3 = Vector3<f64>;
/// Γ^m_ij at index 4m + 2i + j.
type Christoffel = SVector<f64, 8>;
/// Components of ∇_j x_/i at index 3(2i + j) + c.
type Hessian = SVector<f64, 12>;

/// Stencil sizes for the three nesting levels, innermost first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Steps(pub [f64; 3]);

impl Default for Steps {
    fn default() -> Self {
        Steps([1e-4, 1e-3, 1e-2])
    }
}

impl Steps {
    pub fn halved(self) -> Self {
        Steps(self.0.map(|h| h / 2.0))
    }
}

/// Least-squares fit of y_/i = −B_i^j x_/j.
#[derive(Debug, Clone, Copy)]
pub struct ShapeFit {
    pub shape: Matrix2<f64>,
    /// ‖y_/i + B_i^j x_/j‖ / max(‖y_/i‖, ‖y‖) for i = 1, 2. The floor
    /// matters when the relative image degenerates and y_/i vanishes.
    pub residual: [f64; 2],
    /// det[x_/1, x_/2, y].
    pub rank_det: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Darboux {
    /// A_ijk, lower indices.
    pub tensor: [[[f64; 2]; 2]; 2],
    pub pick: f64,
    /// T^m = ½ A_i^{im}.
    pub tchebychev: [f64; 2],
}

impl Darboux {
    /// Largest |A_ijk − A_σ(ijk)| over permutations.
    pub fn asymmetry(&self) -> f64 {
        let a = &self.tensor;
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for (p, q, r) in [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                        worst = worst.max((a[i][j][k] - a[p][q][r]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// First-principles evaluator for one surface and one support function.
#[derive(Debug, Clone, Copy)]
pub struct OracleSurface<'a> {
    spec: &'a RuledSurfaceSpec,
    support: &'a SupportFunction,
    steps: Steps,
}

impl<'a> OracleSurface<'a> {
    pub fn new(spec: &'a RuledSurfaceSpec, support: &'a SupportFunction) -> Self {
        Self::with_steps(spec, support, Steps::default())
    }

    pub fn with_steps(
        spec: &'a RuledSurfaceSpec,
        support: &'a SupportFunction,
        steps: Steps,
    ) -> Self {
        Self {
            spec,
            support,
            steps,
        }
    }

    /// Default steps shrunk by the local length scale ℓ = |q|/|∇q| of the
    /// support function (capped at 1, floored at 1e-3), so that stencils
    /// near a zero of q do not straddle it.
    pub fn adapted(
        spec: &'a RuledSurfaceSpec,
        support: &'a SupportFunction,
        u: f64,
        v: f64,
    ) -> Result<Self> {
        let o = Self::new(spec, support);
        let q = o.q(u, v)?;
        let h = o.steps.0[0];
        let gu = derivative(|t| o.q(t, v), u, h)?;
        let gv = derivative(|t| o.q(u, t), v, h)?;
        let grad = gu.hypot(gv);
        let scale = if grad > 0.0 {
            (q.abs() / grad).clamp(1e-3, 1.0)
        } else {
            1.0
        };
        Ok(Self::with_steps(
            spec,
            support,
            Steps(o.steps.0.map(|h| h * scale)),
        ))
    }

    pub fn steps(&self) -> Steps {
        self.steps
    }

    pub fn q(&self, u: f64, v: f64) -> Result<f64> {
        let q = self.support.value(self.spec, u, v)?;
        if !(q.abs() >= crate::relative::Q_MIN) {
            return Err(Error::SupportVanishing { u, v, q: q.abs() });
        }
        Ok(q)
    }

    fn kappa(&self, u: f64) -> Result<f64> {
        Ok(self.spec.jet(u)?.kappa)
    }

    /// x_/1 and x_/2 in frame coordinates.
    pub fn tangents(&self, u: f64, v: f64) -> Result<[V3; 2]> {
        let j = self.spec.jet(u)?;
        Ok([V3::new(j.delta * j.lambda, v, j.delta), V3::x()])
    }

    pub fn unit_normal(&self, u: f64, v: f64) -> Result<V3> {
        let [a, b] = self.tangents(u, v)?;
        Ok(a.cross(&b).normalize())
    }

    /// Ambient derivative along coordinate `dir` of a frame-coefficient field.
    fn covariant(
        &self,
        f: impl Fn(f64, f64) -> Result<V3>,
        dir: usize,
        u: f64,
        v: f64,
        level: usize,
    ) -> Result<V3> {
        if dir == 1 {
            return derivative(|t| f(u, t), v, self.steps.0[level]);
        }
        let d = derivative(|t| f(t, v), u, self.steps.0[level])?;
        let c = f(u, v)?;
        let k = self.kappa(u)?;
        Ok(d + V3::new(-c.y, c.x - k * c.z, k * c.y))
    }

    /// h_ij = ⟨ξ, ∂_j x_/i⟩.
    pub fn second_form(&self, u: f64, v: f64) -> Result<Matrix2<f64>> {
        let xi = self.unit_normal(u, v)?;
        let mut h = Matrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let d = self.covariant(|a, b| Ok(self.tangents(a, b)?[i]), j, u, v, 0)?;
                h[(i, j)] = xi.dot(&d);
            }
        }
        Ok(h)
    }

    /// G = h/q.
    pub fn metric(&self, u: f64, v: f64) -> Result<Matrix2<f64>> {
        Ok(self.second_form(u, v)? / self.q(u, v)?)
    }

    fn metric_inverse(&self, u: f64, v: f64) -> Result<Matrix2<f64>> {
        self.metric(u, v)?
            .try_inverse()
            .ok_or_else(|| Error::Degenerate(format!("relative metric singular at ({u}, {v})")))
    }

    /// Levi-Civita connection of G.
    pub fn christoffel(&self, u: f64, v: f64) -> Result<Christoffel> {
        let gi = self.metric_inverse(u, v)?;
        let dg = [
            derivative(|t| self.metric(t, v), u, self.steps.0[1])?,
            derivative(|t| self.metric(u, t), v, self.steps.0[1])?,
        ];
        let mut gam = Christoffel::zeros();
        for m in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let mut s = 0.0;
                    for l in 0..2 {
                        s += gi[(m, l)] * (dg[i][(l, j)] + dg[j][(l, i)] - dg[l][(i, j)]);
                    }
                    gam[4 * m + 2 * i + j] = 0.5 * s;
                }
            }
        }
        Ok(gam)
    }

    /// ∇_j x_/i = ∂_j x_/i − Γ^m_ij x_/m.
    fn hessian(&self, u: f64, v: f64) -> Result<Hessian> {
        let x = self.tangents(u, v)?;
        let gam = self.christoffel(u, v)?;
        let mut out = Hessian::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let d = self.covariant(|a, b| Ok(self.tangents(a, b)?[i]), j, u, v, 0)?;
                let n = d - x[0] * gam[2 * i + j] - x[1] * gam[4 + 2 * i + j];
                out.fixed_rows_mut::<3>(3 * (2 * i + j)).copy_from(&n);
            }
        }
        Ok(out)
    }

    /// A_ijk = q⁻¹⟨ξ, ∇_k ∇_j x_/i⟩, J = ½ A_ijk A^{ijk}.
    pub fn darboux(&self, u: f64, v: f64) -> Result<Darboux> {
        let xi = self.unit_normal(u, v)?;
        let q = self.q(u, v)?;
        let gi = self.metric_inverse(u, v)?;
        let gam = self.christoffel(u, v)?;
        let n = self.hessian(u, v)?;
        let nv = |h: &Hessian, i: usize, j: usize| -> V3 {
            h.fixed_rows::<3>(3 * (2 * i + j)).into_owned()
        };
        let k_ = self.kappa(u)?;
        let dn = [
            derivative(|t| self.hessian(t, v), u, self.steps.0[2])?,
            derivative(|t| self.hessian(u, t), v, self.steps.0[2])?,
        ];
        let mut a = [[[0.0; 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut d = nv(&dn[k], i, j);
                    if k == 0 {
                        let c = nv(&n, i, j);
                        d += V3::new(-c.y, c.x - k_ * c.z, k_ * c.y);
                    }
                    for m in 0..2 {
                        d -= nv(&n, m, j) * gam[4 * m + 2 * k + i]
                            + nv(&n, i, m) * gam[4 * m + 2 * k + j];
                    }
                    a[i][j][k] = xi.dot(&d) / q;
                }
            }
        }
        let mut pick = 0.0;
        let mut t = [0.0; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut up = 0.0;
                    for p in 0..2 {
                        for r in 0..2 {
                            for s in 0..2 {
                                up += gi[(i, p)] * gi[(j, r)] * gi[(k, s)] * a[p][r][s];
                            }
                        }
                    }
                    pick += 0.5 * a[i][j][k] * up;
                    for m in 0..2 {
                        t[m] += 0.5 * a[i][j][k] * gi[(j, i)] * gi[(k, m)];
                    }
                }
            }
        }
        Ok(Darboux {
            tensor: a,
            pick,
            tchebychev: t,
        })
    }

    /// Gaussian curvature of G (half its Ricci scalar).
    pub fn scalar_curvature(&self, u: f64, v: f64) -> Result<f64> {
        let gi = self.metric_inverse(u, v)?;
        let g = self.christoffel(u, v)?;
        let dg = [
            derivative(|t| self.christoffel(t, v), u, self.steps.0[2])?,
            derivative(|t| self.christoffel(u, t), v, self.steps.0[2])?,
        ];
        let at = |m: usize, i: usize, j: usize| 4 * m + 2 * i + j;
        // R^a_bcd = ∂_c Γ^a_bd − ∂_d Γ^a_bc + Γ^a_ce Γ^e_bd − Γ^a_de Γ^e_bc
        let riemann = |a: usize, b: usize, c: usize, d: usize| {
            let mut r = dg[c][at(a, b, d)] - dg[d][at(a, b, c)];
            for e in 0..2 {
                r += g[at(a, c, e)] * g[at(e, b, d)] - g[at(a, d, e)] * g[at(e, b, c)];
            }
            r
        };
        let mut ricci_scalar = 0.0;
        for b in 0..2 {
            for d in 0..2 {
                let ric: f64 = (0..2).map(|a| riemann(a, b, a, d)).sum();
                ricci_scalar += gi[(b, d)] * ric;
            }
        }
        Ok(ricci_scalar / 2.0)
    }

    /// y = qξ − h^{ij} q_/i x_/j.
    pub fn relative_normal(&self, u: f64, v: f64) -> Result<V3> {
        let q = self.q(u, v)?;
        let dq = [
            derivative(|t| self.q(t, v), u, self.steps.0[0])?,
            derivative(|t| self.q(u, t), v, self.steps.0[0])?,
        ];
        let hi = self.second_form(u, v)?.try_inverse().ok_or_else(|| {
            Error::Degenerate(format!("second fundamental form singular at ({u}, {v})"))
        })?;
        let x = self.tangents(u, v)?;
        let mut y = self.unit_normal(u, v)? * q;
        for i in 0..2 {
            for j in 0..2 {
                y -= x[j] * (hi[(i, j)] * dq[i]);
            }
        }
        Ok(y)
    }

    /// Shape operator fitted from the derivatives of the relative normal.
    pub fn shape_operator(&self, u: f64, v: f64) -> Result<ShapeFit> {
        let x = self.tangents(u, v)?;
        let basis = Matrix3x2::from_columns(&x);
        let normal_eq = (basis.transpose() * basis)
            .try_inverse()
            .ok_or_else(|| Error::Degenerate(format!("tangent basis singular at ({u}, {v})")))?;
        let y = self.relative_normal(u, v)?;
        let mut shape = Matrix2::zeros();
        let mut residual = [0.0; 2];
        for i in 0..2 {
            let dy = self.covariant(|a, b| self.relative_normal(a, b), i, u, v, 1)?;
            let coeff = -(normal_eq * basis.transpose() * dy);
            shape[(i, 0)] = coeff[0];
            shape[(i, 1)] = coeff[1];
            let miss = (dy + basis * coeff).norm();
            residual[i] = miss / dy.norm().max(y.norm());
        }
        Ok(ShapeFit {
            shape,
            residual,
            rank_det: x[0].cross(&x[1]).dot(&y),
        })
    }

    /// G-gradient G^{ij} ∂_j φ of a scalar function.
    pub fn gradient(
        &self,
        phi: impl Fn(f64, f64) -> Result<f64>,
        u: f64,
        v: f64,
    ) -> Result<[f64; 2]> {
        let gi = self.metric_inverse(u, v)?;
        let d = [
            derivative(|t| phi(t, v), u, self.steps.0[0])?,
            derivative(|t| phi(u, t), v, self.steps.0[0])?,
        ];
        Ok([
            gi[(0, 0)] * d[0] + gi[(0, 1)] * d[1],
            gi[(1, 0)] * d[0] + gi[(1, 1)] * d[1],
        ])
    }
}
