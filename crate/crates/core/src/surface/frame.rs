use nalgebra::{Matrix3, Vector3};

use super::RuledSurfaceSpec;
use crate::error::{Error, Result};
use crate::FrameVector;

/// Orthonormal right-handed triple {e, n, z}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub e: Vector3<f64>,
    pub n: Vector3<f64>,
    pub z: Vector3<f64>,
}

impl Frame {
    pub fn standard() -> Self {
        Self {
            e: Vector3::x(),
            n: Vector3::y(),
            z: Vector3::z(),
        }
    }

    /// Frame whose vectors are the columns of `r`.
    pub fn from_matrix(r: &Matrix3<f64>) -> Self {
        Self {
            e: r.column(0).into(),
            n: r.column(1).into(),
            z: r.column(2).into(),
        }
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_columns(&[self.e, self.n, self.z])
    }

    /// Maps frame components to a vector in space.
    pub fn to_space(&self, c: &FrameVector) -> Vector3<f64> {
        self.e * c.x + self.n * c.y + self.z * c.z
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let m = self.matrix();
        (m.transpose() * m - Matrix3::identity()).amax()
    }

    fn gram_schmidt(&mut self) {
        self.e = self.e.normalize();
        self.n = (self.n - self.e * self.e.dot(&self.n)).normalize();
        self.z = self.e.cross(&self.n);
    }
}

#[derive(Debug, Clone, Copy)]
struct State {
    frame: Frame,
    s: Vector3<f64>,
}

impl State {
    fn axpy(&self, h: f64, d: &State) -> State {
        State {
            frame: Frame {
                e: self.frame.e + d.frame.e * h,
                n: self.frame.n + d.frame.n * h,
                z: self.frame.z + d.frame.z * h,
            },
            s: self.s + d.s * h,
        }
    }
}

fn rhs(spec: &RuledSurfaceSpec, u: f64, st: &State) -> Result<State> {
    let kappa = spec.kappa().eval(u)?;
    let delta = spec.delta().eval(u)?;
    let lambda = spec.lambda().eval(u)?;
    let Frame { e, n, z } = st.frame;
    Ok(State {
        frame: Frame {
            e: n,
            n: -e + z * kappa,
            z: -n * kappa,
        },
        s: e * (delta * lambda) + z * delta,
    })
}

fn rk4_step(spec: &RuledSurfaceSpec, u: f64, h: f64, st: &State) -> Result<State> {
    let k1 = rhs(spec, u, st)?;
    let k2 = rhs(spec, u + 0.5 * h, &st.axpy(0.5 * h, &k1))?;
    let k3 = rhs(spec, u + 0.5 * h, &st.axpy(0.5 * h, &k2))?;
    let k4 = rhs(spec, u + h, &st.axpy(h, &k3))?;
    let mut out = *st;
    for (k, w) in [(&k1, 1.0), (&k2, 2.0), (&k3, 2.0), (&k4, 1.0)] {
        out = out.axpy(h * w / 6.0, k);
    }
    Ok(out)
}

/// The moving frame and striction curve sampled on a uniform grid, with
/// cubic Hermite interpolation in between (slopes from the frame equations).
#[derive(Debug, Clone)]
pub struct FramePath {
    lo: f64,
    hi: f64,
    step: f64,
    states: Vec<State>,
    slopes: Vec<State>,
    max_drift: f64,
}

/// Integrates e′ = n, n′ = −e + κz, z′ = −κn and s′ = δλe + δz from the base
/// point across the whole domain with classical RK4, re-orthonormalizing the
/// frame after every step.
pub fn integrate_frame(spec: &RuledSurfaceSpec) -> Result<FramePath> {
    integrate_frame_with(spec, default_steps(spec.domain()))
}

fn default_steps((lo, hi): (f64, f64)) -> usize {
    // h ≤ 1e-3·|I| and h ≤ 1e-3
    ((hi - lo) / 1e-3).ceil().max(1000.0) as usize
}

/// Same as [`integrate_frame`] with an explicit number of steps.
pub fn integrate_frame_with(spec: &RuledSurfaceSpec, steps: usize) -> Result<FramePath> {
    let (lo, hi) = spec.domain();
    let steps = steps.max(1);
    let step = (hi - lo) / steps as f64;
    let knot = |i: usize| if i == steps { hi } else { lo + i as f64 * step };
    let u0 = spec.base();
    let init = State {
        frame: *spec.initial_frame(),
        s: spec.initial_point(),
    };

    let mut states: Vec<Option<State>> = vec![None; steps + 1];
    let mut max_drift = 0.0_f64;
    let mut advance = |from: f64, to: f64, st: &State| -> Result<State> {
        let mut next = rk4_step(spec, from, to - from, st)?;
        max_drift = max_drift.max(next.frame.orthonormality_defect());
        next.frame.gram_schmidt();
        if !next
            .s
            .iter()
            .chain(next.frame.e.iter())
            .all(|c| c.is_finite())
        {
            return Err(Error::Integration(format!("non-finite state at u = {to}")));
        }
        Ok(next)
    };

    let pos = (u0 - lo) / step;
    let (mut left, mut right) = if (pos - pos.round()).abs() < 1e-9 {
        let k = pos.round() as usize;
        states[k] = Some(init);
        (k, k)
    } else {
        let j = pos.floor() as usize;
        states[j] = Some(advance(u0, knot(j), &init)?);
        states[j + 1] = Some(advance(u0, knot(j + 1), &init)?);
        (j, j + 1)
    };
    while right < steps {
        let st = states[right].unwrap();
        states[right + 1] = Some(advance(knot(right), knot(right + 1), &st)?);
        right += 1;
    }
    while left > 0 {
        let st = states[left].unwrap();
        states[left - 1] = Some(advance(knot(left), knot(left - 1), &st)?);
        left -= 1;
    }

    let states: Vec<State> = states.into_iter().map(|s| s.unwrap()).collect();
    let slopes = states
        .iter()
        .enumerate()
        .map(|(i, st)| rhs(spec, knot(i), st))
        .collect::<Result<Vec<_>>>()?;
    Ok(FramePath {
        lo,
        hi,
        step,
        states,
        slopes,
        max_drift,
    })
}

impl FramePath {
    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn knot_count(&self) -> usize {
        self.states.len()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Largest orthonormality defect produced by a single RK4 step before
    /// it was removed by re-orthonormalization.
    pub fn max_step_drift(&self) -> f64 {
        self.max_drift
    }

    /// Largest orthonormality defect over the stored samples.
    pub fn orthonormality_defect(&self) -> f64 {
        self.states
            .iter()
            .map(|s| s.frame.orthonormality_defect())
            .fold(0.0, f64::max)
    }

    /// Stored sample `i` as `(u, frame, striction point)`.
    pub fn sample(&self, i: usize) -> (f64, Frame, Vector3<f64>) {
        let u = if i + 1 == self.states.len() {
            self.hi
        } else {
            self.lo + i as f64 * self.step
        };
        (u, self.states[i].frame, self.states[i].s)
    }

    /// Interpolated frame and striction point at `u`.
    pub fn at(&self, u: f64) -> Result<(Frame, Vector3<f64>)> {
        if !(self.lo..=self.hi).contains(&u) {
            return Err(Error::Domain {
                u,
                lo: self.lo,
                hi: self.hi,
            });
        }
        let last = self.states.len() - 1;
        let i = (((u - self.lo) / self.step).floor() as usize).min(last - 1);
        let u_i = self.lo + i as f64 * self.step;
        let h = if i + 1 == last {
            self.hi - u_i
        } else {
            self.step
        };
        let t = (u - u_i) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let herm = |p0: Vector3<f64>, m0: Vector3<f64>, p1: Vector3<f64>, m1: Vector3<f64>| {
            p0 * h00 + m0 * (h10 * h) + p1 * h01 + m1 * (h11 * h)
        };
        let (a, b) = (&self.states[i], &self.states[i + 1]);
        let (da, db) = (&self.slopes[i], &self.slopes[i + 1]);
        Ok((
            Frame {
                e: herm(a.frame.e, da.frame.e, b.frame.e, db.frame.e),
                n: herm(a.frame.n, da.frame.n, b.frame.n, db.frame.n),
                z: herm(a.frame.z, da.frame.z, b.frame.z, db.frame.z),
            },
            herm(a.s, da.s, b.s, db.s),
        ))
    }

    /// Point x(u, v) = s(u) + v e(u).
    pub fn position(&self, u: f64, v: f64) -> Result<Vector3<f64>> {
        let (f, s) = self.at(u)?;
        Ok(s + f.e * v)
    }

    /// Frame components at `u` mapped into space.
    pub fn to_space(&self, u: f64, c: &FrameVector) -> Result<Vector3<f64>> {
        Ok(self.at(u)?.0.to_space(c))
    }
}

/// Position, tangents, unit normal and w at one point, in space.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceJet {
    pub x: Vector3<f64>,
    pub x_u: Vector3<f64>,
    pub x_v: Vector3<f64>,
    pub normal: Vector3<f64>,
    pub w: f64,
}

pub fn surface_jet(
    spec: &RuledSurfaceSpec,
    frames: &FramePath,
    u: f64,
    v: f64,
) -> Result<SurfaceJet> {
    let p = spec.point(u, v)?;
    let (f, s) = frames.at(u)?;
    Ok(SurfaceJet {
        x: s + f.e * v,
        x_u: f.to_space(&p.x_u()),
        x_v: f.to_space(&p.x_v()),
        normal: f.to_space(&p.normal()),
        w: p.w,
    })
}
