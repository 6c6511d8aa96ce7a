//! Closed-form invariants of polar normalizations on the conical fixture.

use ruled_polar::fixtures;
use ruled_polar::polar::{PolarEvaluator, PolarSupport};

fn main() -> ruled_polar::Result<()> {
    let spec = fixtures::conical_unit()?;
    let (u, v) = (std::f64::consts::FRAC_PI_2, 2.0);
    for src in ["cos(V)", "exp(V/3)", "2 + sin(V)"] {
        let f = PolarSupport::parse(src)?;
        let e = PolarEvaluator::new(&spec, &f);
        let inv = e.invariants(u, v)?;
        let t = e.tchebychev(u, v)?;
        let q = e.support_vector(u, v)?;
        println!("f(V) = {src}");
        println!("  V = {:.9}  q = {:.9}", inv.big_v, inv.q);
        println!(
            "  K = {:.9}  H = {:.9}  J = {:.9}  S = {:.9}",
            inv.relative_curvature, inv.relative_mean_curvature, inv.pick, inv.scalar_curvature
        );
        println!("  3H - J - 3S = {:.2e}", inv.structural_residual());
        println!(
            "  T = {:?}  div_I T = {:.9}  curl_I T = {:.9}",
            t.t, t.div_i, t.curl_i
        );
        println!("  Q = {:?}  div_G Q = {:.9}", q.q, q.div_g);
    }
    Ok(())
}
