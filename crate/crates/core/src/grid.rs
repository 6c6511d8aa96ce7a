//! Rectangular (u, v) sampling grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relative::{SupportFunction, Q_MIN};
use crate::surface::RuledSurfaceSpec;

/// `u_count × v_count` grid, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub u_range: (f64, f64),
    pub u_count: usize,
    pub v_range: (f64, f64),
    pub v_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub i: usize,
    pub k: usize,
    pub u: f64,
    pub v: f64,
    /// True if v was moved off a zero of q.
    pub nudged: bool,
}

impl Grid {
    pub fn new(
        u_range: (f64, f64),
        u_count: usize,
        v_range: (f64, f64),
        v_count: usize,
    ) -> Result<Self> {
        let g = Self {
            u_range,
            u_count,
            v_range,
            v_count,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.u_count < 2 || self.v_count < 2 {
            return Err(Error::Config(format!(
                "grid counts must be at least 2, got {} x {}",
                self.u_count, self.v_count
            )));
        }
        let finite = [
            self.u_range.0,
            self.u_range.1,
            self.v_range.0,
            self.v_range.1,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite || self.u_range.0 >= self.u_range.1 || self.v_range.0 >= self.v_range.1 {
            return Err(Error::Config(format!(
                "grid ranges must be finite and increasing, got u {:?}, v {:?}",
                self.u_range, self.v_range
            )));
        }
        Ok(())
    }

    fn coord(range: (f64, f64), n: usize, i: usize) -> f64 {
        range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
    }

    pub fn u_at(&self, i: usize) -> f64 {
        Self::coord(self.u_range, self.u_count, i)
    }

    pub fn v_at(&self, k: usize) -> f64 {
        Self::coord(self.v_range, self.v_count, k)
    }

    pub fn v_cell(&self) -> f64 {
        (self.v_range.1 - self.v_range.0) / (self.v_count - 1) as f64
    }

    /// Points in (u-index, v-index) order.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(self.u_count * self.v_count);
        for i in 0..self.u_count {
            for k in 0..self.v_count {
                out.push(GridPoint {
                    i,
                    k,
                    u: self.u_at(i),
                    v: self.v_at(k),
                    nudged: false,
                });
            }
        }
        out
    }

    /// Like [`Grid::points`], but points where |q| < [`Q_MIN`] are moved by
    /// half a v-cell (up, then down). Points that cannot be rescued are kept
    /// as they are; evaluating them reports the vanishing support.
    pub fn points_avoiding_zeros(
        &self,
        spec: &RuledSurfaceSpec,
        q: &SupportFunction,
    ) -> Result<Vec<GridPoint>> {
        let half = self.v_cell() / 2.0;
        let admissible =
            |u: f64, v: f64| -> Result<bool> { Ok(q.value(spec, u, v)?.abs() >= Q_MIN) };
        let mut pts = self.points();
        for p in &mut pts {
            if admissible(p.u, p.v)? {
                continue;
            }
            for dv in [half, -half] {
                if admissible(p.u, p.v + dv)? {
                    p.v += dv;
                    p.nudged = true;
                    break;
                }
            }
        }
        Ok(pts)
    }
}
