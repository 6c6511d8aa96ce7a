//! Relative normal, metric, Pick invariant and Tchebychev field for a
//! support function that is not polar.

use ruled_polar::fixtures;
use ruled_polar::oracle::{darboux_pick, numeric_shape_operator};
use ruled_polar::relative::{field_calculus, RelativePoint, SupportFunction, TchebychevField};

fn main() -> ruled_polar::Result<()> {
    let spec = fixtures::general()?;
    let supports = [
        SupportFunction::euclidean(),
        SupportFunction::manhart(0.25),
        SupportFunction::custom("2 + sin(uv)", |u, v| 2.0 + (u * v).sin()),
    ];
    let (u, v) = (1.2, -0.4);
    for q in &supports {
        let rp = RelativePoint::new(&spec, q, u, v)?;
        let y = rp.relative_normal();
        let fit = numeric_shape_operator(&spec, q, u, v)?;
        let d = darboux_pick(&spec, q, u, v)?;
        let tc = field_calculus(
            &spec,
            q,
            &TchebychevField {
                spec: &spec,
                support: q,
            },
            u,
            v,
        )?;
        println!("{}", q.family().tag());
        println!(
            "  <xi, y> = {:.12}  q = {:.12}",
            rp.point.normal().dot(&y),
            rp.support.q
        );
        println!(
            "  K = {:.8}  H = {:.8}",
            fit.shape.determinant(),
            fit.shape.trace() / 2.0
        );
        println!("  J = {:.8}  Darboux J = {:.8}", rp.pick(), d.pick);
        println!("  T = {:?}  curl_G T = {:.2e}", rp.tchebychev(), tc.curl_g);
    }
    Ok(())
}
