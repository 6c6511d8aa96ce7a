//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use nalgebra::Vector3;
use rand::{rngs::StdRng, Rng, SeedableRng};
use ruled_polar::fixtures;
use ruled_polar::job::{exit, Job, JobConfig};
use ruled_polar::oracle::{
    darboux_pick, frenet_in_frame, numeric_scalar_curvature, numeric_shape_operator, OracleSurface,
};
use ruled_polar::polar::{PolarEvaluator, PolarSupport};
use ruled_polar::relative::{field_calculus, RelativePoint, SupportFunction};
use ruled_polar::special::SpecialPolar;
use ruled_polar::surface::integrate_frame;
use ruled_polar::{RuledSurfaceSpec, ScalarExpr};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

const PROFILES: [&str; 3] = ["cos(V)", "exp(V/2)", "2 + sin(V)"];
const U_RANGE: (f64, f64) = (0.3, TAU - 0.3);
const V_RANGE: (f64, f64) = (-3.0, 3.0);

fn rel(closed: f64, oracle: f64) -> f64 {
    (closed - oracle).abs() / oracle.abs().max(1.0)
}

fn grid(n: usize) -> impl Iterator<Item = (f64, f64)> {
    let at = move |r: (f64, f64), i: usize| r.0 + (r.1 - r.0) * i as f64 / (n - 1) as f64;
    (0..n).flat_map(move |i| (0..n).map(move |k| (at(U_RANGE, i), at(V_RANGE, k))))
}

fn matrix() -> Vec<(&'static str, RuledSurfaceSpec, &'static str, PolarSupport)> {
    let mut out = Vec::new();
    for (name, spec) in fixtures::all().unwrap() {
        for f in PROFILES {
            out.push((name, spec.clone(), f, PolarSupport::parse(f).unwrap()));
        }
    }
    out
}

/// Tracks the worst value of a residual and where it occurred.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: String::new(),
        }
    }

    fn see(&mut self, value: f64, at: impl FnOnce() -> String) {
        if !(value <= self.value) {
            self.value = value;
            self.at = at();
        }
    }

    fn check(&self, name: &str, bound: f64) -> Outcome {
        let at = if self.at.is_empty() {
            "every point"
        } else {
            &self.at
        };
        let line = format!("{name} max {:.2e} (bound {bound:.0e}) at {at}", self.value);
        if self.value <= bound {
            Ok(line)
        } else {
            Err(line)
        }
    }
}

fn all_ok(parts: Vec<Outcome>) -> Outcome {
    let failed: Vec<String> = parts
        .iter()
        .filter_map(|p| p.as_ref().err().cloned())
        .collect();
    if failed.is_empty() {
        Ok(parts
            .into_iter()
            .map(|p| p.unwrap())
            .collect::<Vec<_>>()
            .join("; "))
    } else {
        Err(failed.join("; "))
    }
}

fn structural_identity() -> Outcome {
    let start = Instant::now();
    let mut worst = Worst::new();
    let mut count = 0;
    for (name, spec, f, ps) in matrix() {
        let e = PolarEvaluator::new(&spec, &ps);
        for (u, v) in grid(20) {
            let inv = match e.invariants(u, v) {
                Ok(inv) => inv,
                Err(_) => continue,
            };
            count += 1;
            worst.see(
                inv.structural_residual().abs() / (1.0 + inv.pick.abs()),
                || format!("{name} {f} ({u:.3}, {v:.3})"),
            );
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let identity = worst.check(&format!("{count} points, 3H-J-3S/(1+|J|)"), 1e-8);
    let timing = if secs < 10.0 {
        Ok(format!("{secs:.2} s"))
    } else {
        Err(format!("took {secs:.2} s"))
    };
    all_ok(vec![identity, timing])
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20261016);
    let cases = matrix();
    let (mut k, mut h, mut j, mut s) = (Worst::new(), Worst::new(), Worst::new(), Worst::new());
    let mut drawn = 0;
    while drawn < 200 {
        let (name, spec, f, ps) = &cases[rng.gen_range(0..cases.len())];
        let u = rng.gen_range(U_RANGE.0..U_RANGE.1);
        let v = rng.gen_range(V_RANGE.0..V_RANGE.1);
        let e = PolarEvaluator::new(spec, ps);
        let inv = match e.invariants(u, v) {
            Ok(inv) if inv.q.abs() >= 0.1 => inv,
            _ => continue,
        };
        drawn += 1;
        let q = SupportFunction::polar(ps.clone());
        let at = || format!("{name} {f} ({u:.4}, {v:.4})");
        let fit = numeric_shape_operator(spec, &q, u, v).map_err(|e| format!("{} {e}", at()))?;
        k.see(rel(inv.relative_curvature, fit.shape.determinant()), at);
        h.see(
            rel(inv.relative_mean_curvature, fit.shape.trace() / 2.0),
            at,
        );
        let d = darboux_pick(spec, &q, u, v).map_err(|e| format!("{} {e}", at()))?;
        j.see(rel(inv.pick, d.pick), at);
        let sn = numeric_scalar_curvature(spec, &q, u, v).map_err(|e| format!("{} {e}", at()))?;
        s.see(rel(inv.scalar_curvature, sn), at);
    }
    all_ok(vec![
        k.check("K", 1e-5),
        h.check("H", 1e-5),
        j.check("J", 1e-4),
        s.check("S", 5e-3),
    ])
}

fn spot_values() -> Outcome {
    // Same surface as conical, with room left of u = 0 for the oracle stencils.
    let spec = RuledSurfaceSpec::builder(
        ScalarExpr::constant(1.0),
        ScalarExpr::constant(1.0),
        ScalarExpr::constant(0.0),
    )
    .domain(-1.0, TAU)
    .base(0.0)
    .build()
    .map_err(|e| e.to_string())?;
    let ps = PolarSupport::parse("cos(V)").unwrap();
    let q = SupportFunction::polar(ps.clone());
    let e = PolarEvaluator::new(&spec, &ps);
    let mut parts = Vec::new();
    let mut expect = |what: &str, got: f64, want: f64, tol: f64| {
        let d = (got - want).abs();
        let line = format!("{what} {got:.12} vs {want:.12}");
        parts.push(if d <= tol {
            Ok(line)
        } else {
            Err(format!("{line} off by {d:.2e}"))
        });
    };

    let a = e.invariants(0.0, 1.0).map_err(|e| e.to_string())?;
    for (i, j, want) in [(0, 0, 0.0), (0, 1, 1.0), (1, 0, 0.0), (1, 1, 0.0)] {
        expect(&format!("B{}{}", i + 1, j + 1), a.shape[(i, j)], want, 1e-9);
    }
    expect("K(0,1)", a.relative_curvature, 0.0, 1e-9);
    expect("H(0,1)", a.relative_mean_curvature, 0.0, 1e-9);
    let fit = numeric_shape_operator(&spec, &q, 0.0, 1.0).map_err(|e| e.to_string())?;
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        expect(
            &format!("oracle B{}{}", i + 1, j + 1),
            fit.shape[(i, j)],
            a.shape[(i, j)],
            1e-5,
        );
    }

    let (u, v) = (FRAC_PI_2, 2.0);
    let b = e.invariants(u, v).map_err(|e| e.to_string())?;
    let t = e.tchebychev(u, v).map_err(|e| e.to_string())?;
    let sv = e.support_vector(u, v).map_err(|e| e.to_string())?;
    expect("J", b.pick, 2.25, 1e-9);
    expect("S", b.scalar_curvature, -0.75, 1e-9);
    expect("T1", t.t[0], 1.0, 1e-9);
    expect("T2", t.t[1], 4.0, 1e-9);
    expect("Q1", sv.q[0], -1.0 / (8.0 * 5f64.sqrt()), 1e-9);
    expect("Q2", sv.q[1], 0.0, 1e-9);
    let d = darboux_pick(&spec, &q, u, v).map_err(|e| e.to_string())?;
    expect("oracle J", d.pick, 2.25, 1e-4 * 2.25);
    expect("oracle T1", d.tchebychev[0], 1.0, 1e-4 * 4.0);
    expect("oracle T2", d.tchebychev[1], 4.0, 1e-4 * 4.0);
    let sn = numeric_scalar_curvature(&spec, &q, u, v).map_err(|e| e.to_string())?;
    expect("oracle S", sn, -0.75, 5e-3);
    let n = parts.len();
    all_ok(parts).map(|_| format!("{n} closed-form and oracle values match"))
}

fn vanishing_results() -> Outcome {
    let (mut kh, mut j, mut div) = (Worst::new(), Worst::new(), Worst::new());
    for (name, spec) in fixtures::all().unwrap() {
        for f in ["cos(V)", "sin(V)", "2*cos(V) - 3*sin(V)"] {
            let ps = PolarSupport::parse(f).unwrap();
            let e = PolarEvaluator::new(&spec, &ps);
            for (u, v) in grid(20) {
                if let Ok(inv) = e.invariants(u, v) {
                    let m = inv
                        .relative_curvature
                        .abs()
                        .max(inv.relative_mean_curvature.abs());
                    kh.see(m, || format!("{name} {f} ({u:.3}, {v:.3})"));
                }
            }
        }
        for f in ["exp(V)", "exp(-V/2)", "exp(3*V)"] {
            let ps = PolarSupport::parse(f).unwrap();
            let e = PolarEvaluator::new(&spec, &ps);
            for (u, v) in grid(20) {
                if let Ok(sv) = e.support_vector(u, v) {
                    div.see(sv.div_i.abs(), || format!("{name} {f} ({u:.3}, {v:.3})"));
                }
            }
        }
    }
    let helicoid = fixtures::helicoid().unwrap();
    for f in PROFILES {
        let ps = PolarSupport::parse(f).unwrap();
        let e = PolarEvaluator::new(&helicoid, &ps);
        for (u, v) in grid(20) {
            if let Ok(inv) = e.invariants(u, v) {
                j.see(inv.pick.abs(), || format!("{f} ({u:.3}, {v:.3})"));
            }
        }
    }
    all_ok(vec![
        kh.check("harmonic |K|,|H|", 1e-10),
        j.check("helicoid |J|", 1e-10),
        div.check("exponential |divI Q|", 1e-10),
    ])
}

fn potentials() -> Outcome {
    let (mut t, mut q, mut curl) = (Worst::new(), Worst::new(), Worst::new());
    for (name, spec, f, ps) in matrix() {
        let e = PolarEvaluator::new(&spec, &ps);
        let support = SupportFunction::polar(ps.clone());
        let q_of = |a: f64, b: f64| support.value(&spec, a, b);
        let tau = |a: f64, b: f64| -> ruled_polar::Result<f64> {
            let p = spec.point(a, b)?;
            Ok((p.w * q_of(a, b)?.abs() / p.jet.delta.abs().sqrt()).ln())
        };
        let quarter_inverse =
            |a: f64, b: f64| -> ruled_polar::Result<f64> { Ok(0.25 / q_of(a, b)?) };
        for (u, v) in grid(8) {
            let closed_t = match e.tchebychev(u, v) {
                Ok(c) if c_q(&e, u, v) >= 0.1 => c,
                _ => continue,
            };
            let closed_q = e.support_vector(u, v).map_err(|e| e.to_string())?;
            let at = || format!("{name} {f} ({u:.3}, {v:.3})");
            let o = OracleSurface::adapted(&spec, &support, u, v).map_err(|e| e.to_string())?;
            let gt = o.gradient(tau, u, v).map_err(|e| e.to_string())?;
            let gq = o
                .gradient(quarter_inverse, u, v)
                .map_err(|e| e.to_string())?;
            for m in 0..2 {
                t.see(rel(closed_t.t[m], gt[m]), at);
                q.see(rel(closed_q.q[m], gq[m]), at);
            }
            for field in [
                &e.tchebychev_field() as &dyn ruled_polar::relative::VectorField2,
                &e.support_vector_field(),
            ] {
                let c = field_calculus(&spec, &support, field, u, v).map_err(|e| e.to_string())?;
                curl.see(c.curl_g.abs(), at);
            }
        }
    }
    all_ok(vec![
        t.check("T vs grad tau", 1e-6),
        q.check("Q vs grad 1/(4q)", 1e-6),
        curl.check("|curlG|", 1e-6),
    ])
}

fn c_q(e: &PolarEvaluator, u: f64, v: f64) -> f64 {
    e.point(u, v).map(|p| p.q.abs()).unwrap_or(0.0)
}

fn tangency_and_rank() -> Outcome {
    let (mut fit_res, mut min_det) = (Worst::new(), f64::INFINITY);
    let mut det_at = String::new();
    for (name, spec, f, ps) in matrix() {
        let support = SupportFunction::polar(ps.clone());
        let e = PolarEvaluator::new(&spec, &ps);
        for (u, v) in grid(10) {
            if c_q(&e, u, v) < 1e-3 {
                continue;
            }
            let fit = numeric_shape_operator(&spec, &support, u, v).map_err(|e| e.to_string())?;
            fit_res.see(fit.residual[0].max(fit.residual[1]), || {
                format!("{name} {f} ({u:.3}, {v:.3})")
            });
            if fit.rank_det.abs() < min_det {
                min_det = fit.rank_det.abs();
                det_at = format!("{name} {f} ({u:.3}, {v:.3})");
            }
        }
    }
    let rank = format!("min |det[x1, x2, y]| {min_det:.2e} at {det_at}");
    all_ok(vec![
        fit_res.check("tangency residual", 1e-6),
        if min_det >= 1e-8 { Ok(rank) } else { Err(rank) },
    ])
}

fn special_curve() -> Outcome {
    let mut dy = Worst::new();
    let mut frenet = Worst::new();
    let mut slope = Worst::new();
    for (c1, c2) in [(1.0, 0.0), (0.0, 1.0), (1.0, 0.5), (-2.0, 3.0)] {
        let sp = SpecialPolar::new(c1, c2).map_err(|e| e.to_string())?;
        let support = SupportFunction::polar(sp.as_polar());
        for (name, spec) in fixtures::all().unwrap() {
            for (u, v) in grid(10) {
                let at = || format!("{name} ({c1}, {c2}) ({u:.3}, {v:.3})");
                let (y0, y1) = match (
                    RelativePoint::new(&spec, &support, u, v),
                    RelativePoint::new(&spec, &support, u, v + 0.5),
                ) {
                    (Ok(a), Ok(b)) => (a.relative_normal(), b.relative_normal()),
                    _ => continue,
                };
                dy.see((y1 - y0).norm() / 0.5, at);
            }
            if name == "general" {
                continue;
            }
            for i in 0..12 {
                let u = U_RANGE.0 + (U_RANGE.1 - U_RANGE.0) * i as f64 / 11.0;
                let g = match sp.gamma_star(&spec, u) {
                    Ok(g) if g.curvature < 20.0 => g,
                    _ => continue,
                };
                let at = || format!("{name} ({c1}, {c2}) u = {u:.3}");
                let fr = frenet_in_frame(&spec, |t| sp.gamma_star(&spec, t).map(|g| g.y), u)
                    .map_err(|e| format!("{} {e}", at()))?;
                frenet.see(
                    rel(g.curvature, fr.curvature).max(rel(g.torsion, fr.torsion)),
                    at,
                );
                if name == "conical" {
                    if let Some(r) = g.slope_ratio {
                        let kappa = spec.jet(u).map_err(|e| e.to_string())?.kappa;
                        slope.see(((r * kappa).abs() - 1.0).abs(), at);
                    }
                }
            }
        }
    }
    all_ok(vec![
        dy.check("|dy/dv|", 1e-8),
        frenet.check("Frenet", 1e-5),
        slope.check("| |ratio*kappa| - 1 |", 1e-8),
    ])
}

fn frame_quality() -> Outcome {
    let long = RuledSurfaceSpec::parse("2 + sin(u)", "cos(u)", "u/5", (0.0, 10.0))
        .map_err(|e| e.to_string())?;
    let frames = integrate_frame(&long).map_err(|e| e.to_string())?;
    let defect = frames.orthonormality_defect();
    let drift = format!("orthonormality defect over |I| = 10: {defect:.2e}");

    let helicoid = fixtures::helicoid().unwrap();
    let frames = integrate_frame(&helicoid).map_err(|e| e.to_string())?;
    let (f0, s0) = frames.at(0.0).map_err(|e| e.to_string())?;
    let r = f0.matrix();
    let mut worst = Worst::new();
    for i in 0..=40 {
        let u = TAU * i as f64 / 40.0;
        for v in [-3.0, -1.0, 0.0, 0.5, 2.0, 3.0] {
            let explicit = s0 + r * Vector3::new(v * u.cos(), v * u.sin(), u);
            let x = frames.position(u, v).map_err(|e| e.to_string())?;
            worst.see((x - explicit).norm(), || format!("({u:.3}, {v})"));
        }
    }
    all_ok(vec![
        if defect <= 1e-9 {
            Ok(drift)
        } else {
            Err(drift)
        },
        worst.check("helicoid reconstruction", 1e-7),
    ])
}

const CLI_CONFIG: &str = r#"{
  "surface": {"delta": "2 + sin(u)", "kappa": "cos(u)", "lambda": "u/5", "domain": [0, 3]},
  "normalization": {"family": "polar", "f": "exp(V/2)"},
  "grid": {"u_count": 6, "v_range": [-3, 3], "v_count": 7},
  "outputs": {"csv": "t.csv", "obj": "m.obj", "report": "r.json"}
}"#;

fn read(p: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(p).map_err(|e| format!("{}: {e}", p.display()))
}

fn cli_determinism() -> Outcome {
    let dirs: Vec<tempfile::TempDir> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    let cfg = JobConfig::from_json(CLI_CONFIG).map_err(|e| e.to_string())?;
    for d in &dirs[..2] {
        let job = Job::new(cfg.clone(), d.path(), 1.0).map_err(|e| e.to_string())?;
        job.run_eval().map_err(|e| e.to_string())?;
        job.run_verify().map_err(|e| e.to_string())?;
    }
    let config_path = dirs[2].path().join("job.json");
    std::fs::write(&config_path, CLI_CONFIG).unwrap();
    for sub in ["eval", "verify"] {
        let status = Command::new(env!("CARGO_BIN_EXE_ruled-polar"))
            .args([sub, "--config"])
            .arg(&config_path)
            .arg("--out-dir")
            .arg(dirs[2].path())
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!(
                "ruled-polar {sub} exited with {:?}",
                status.status.code()
            ));
        }
    }
    let mut parts = Vec::new();
    for file in ["t.csv", "m.obj", "r.json"] {
        let a = read(&dirs[0].path().join(file))?;
        let same = dirs[1..]
            .iter()
            .all(|d| read(&d.path().join(file)).map(|b| b == a).unwrap_or(false));
        parts.push(if same {
            Ok(format!("{file} identical"))
        } else {
            Err(format!("{file} differs between runs"))
        });
    }

    let mut bad = cfg.clone();
    bad.negative_control = true;
    bad.outputs = Default::default();
    let out = Job::new(bad, dirs[0].path(), 1.0)
        .and_then(|j| j.run_verify())
        .map_err(|e| format!("negative control errored instead of failing: {e}"))?;
    let s = out.report.summary;
    let line = format!("negative control {s} exit {}", out.exit_code());
    parts.push(
        if out.exit_code() == exit::VERIFY_FAILED && s.failed > 0 && s.passed > 0 {
            Ok(line)
        } else {
            Err(line)
        },
    );
    all_ok(parts)
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("structural identity", structural_identity),
        ("oracle equivalence", oracle_equivalence),
        ("spot values", spot_values),
        ("vanishing results", vanishing_results),
        ("gradient and potential identities", potentials),
        ("tangency and rank", tangency_and_rank),
        ("degenerate relative image and Frenet", special_curve),
        ("frame quality", frame_quality),
        ("CLI determinism and negative control", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} [{secs:.1} s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} [{secs:.1} s]: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
