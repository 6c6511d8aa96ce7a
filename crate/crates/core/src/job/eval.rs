use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::Job;
use crate::error::{Error, Result};
use crate::grid::GridPoint;
use crate::oracle::numeric_shape_operator;
use crate::polar::PolarEvaluator;
use crate::relative::{field_calculus, RelativePoint, SupportVectorField, TchebychevField};
use crate::surface::integrate_frame;

pub const CSV_HEADER: &str =
    "u,v,V,q,Ktilde,Htilde,K,H,J,S,T1,T2,Q1,Q2,divI_T,curlI_T,divG_T,divI_Q,curlI_Q,divG_Q";

/// One line of the invariant table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalRow {
    pub u: f64,
    pub v: f64,
    /// Only defined for polar profiles.
    pub big_v: Option<f64>,
    pub q: f64,
    pub k_tilde: f64,
    pub h_tilde: f64,
    pub k: f64,
    pub h: f64,
    pub j: f64,
    pub s: f64,
    pub t: [f64; 2],
    pub sv: [f64; 2],
    pub div_i_t: f64,
    pub curl_i_t: f64,
    pub div_g_t: f64,
    pub div_i_q: f64,
    pub curl_i_q: f64,
    pub div_g_q: f64,
}

impl EvalRow {
    fn values(&self) -> [Option<f64>; 20] {
        let s = |x: f64| Some(x);
        [
            s(self.u),
            s(self.v),
            self.big_v,
            s(self.q),
            s(self.k_tilde),
            s(self.h_tilde),
            s(self.k),
            s(self.h),
            s(self.j),
            s(self.s),
            s(self.t[0]),
            s(self.t[1]),
            s(self.sv[0]),
            s(self.sv[1]),
            s(self.div_i_t),
            s(self.curl_i_t),
            s(self.div_g_t),
            s(self.div_i_q),
            s(self.curl_i_q),
            s(self.div_g_q),
        ]
    }
}

pub(super) fn evaluate(job: &Job, points: &[GridPoint]) -> Result<Vec<EvalRow>> {
    let profile = job.polar_profile();
    points
        .par_iter()
        .map(|p| {
            let row = match &profile {
                Some(f) => polar_row(job, &PolarEvaluator::new(&job.spec, f), p.u, p.v),
                None => general_row(job, p.u, p.v),
            };
            row.map_err(|e| Error::AtPoint {
                u: p.u,
                v: p.v,
                source: Box::new(e),
            })
        })
        .collect()
}

fn polar_row(job: &Job, e: &PolarEvaluator, u: f64, v: f64) -> Result<EvalRow> {
    let inv = e.invariants(u, v)?;
    let t = e.tchebychev(u, v)?;
    let sv = e.support_vector(u, v)?;
    let p = job.spec.point(u, v)?;
    Ok(EvalRow {
        u,
        v,
        big_v: Some(inv.big_v),
        q: inv.q,
        k_tilde: p.gauss_curvature(),
        h_tilde: p.mean_curvature(),
        k: inv.relative_curvature,
        h: inv.relative_mean_curvature,
        j: inv.pick,
        s: inv.scalar_curvature,
        t: t.t,
        sv: sv.q,
        div_i_t: t.div_i,
        curl_i_t: t.curl_i,
        div_g_t: t.div_g,
        div_i_q: sv.div_i,
        curl_i_q: sv.curl_i,
        div_g_q: sv.div_g,
    })
}

/// Non-polar support functions have no closed-form shape operator; B is
/// fitted numerically and S follows from 3H − J − 3S = 0.
fn general_row(job: &Job, u: f64, v: f64) -> Result<EvalRow> {
    let (spec, q) = (&job.spec, &job.support);
    let rp = RelativePoint::new(spec, q, u, v)?;
    let b = numeric_shape_operator(spec, q, u, v)?.shape;
    let (k, h, j) = (b.determinant(), b.trace() / 2.0, rp.pick());
    let tc = field_calculus(spec, q, &TchebychevField { spec, support: q }, u, v)?;
    let qc = field_calculus(spec, q, &SupportVectorField { spec, support: q }, u, v)?;
    Ok(EvalRow {
        u,
        v,
        big_v: None,
        q: rp.support.q,
        k_tilde: rp.point.gauss_curvature(),
        h_tilde: rp.point.mean_curvature(),
        k,
        h,
        j,
        s: h - j / 3.0,
        t: rp.tchebychev(),
        sv: rp.support_vector(),
        div_i_t: tc.div_i,
        curl_i_t: tc.curl_i,
        div_g_t: tc.div_g,
        div_i_q: qc.div_i,
        curl_i_q: qc.curl_i,
        div_g_q: qc.div_g,
    })
}

/// RFC 4180 CSV; numbers use the shortest representation that parses back
/// to the same double.
pub(super) fn to_csv(rows: &[EvalRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 256);
    out.push_str(CSV_HEADER);
    out.push_str("\r\n");
    for r in rows {
        for (i, x) in r.values().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            if let Some(x) = x {
                write!(out, "{x}").expect("writing to a String");
            }
        }
        out.push_str("\r\n");
    }
    out
}

/// Vertices x(u, v) in grid order and one quad per grid cell.
pub(super) fn to_obj(job: &Job, points: &[GridPoint]) -> Result<String> {
    let frames = integrate_frame(&job.spec)?;
    let (nu, nv) = (job.grid.u_count, job.grid.v_count);
    let mut out = String::new();
    for p in points {
        let x = frames.position(p.u, p.v)?;
        writeln!(out, "v {} {} {}", x.x, x.y, x.z).expect("writing to a String");
    }
    for i in 0..nu - 1 {
        for k in 0..nv - 1 {
            let a = i * nv + k + 1;
            let b = (i + 1) * nv + k + 1;
            writeln!(out, "f {} {} {} {}", a, b, b + 1, a + 1).expect("writing to a String");
        }
    }
    Ok(out)
}
