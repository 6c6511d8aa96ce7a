//! Fundamental forms and curvatures of the three reference surfaces.

use ruled_polar::fixtures;

fn main() -> ruled_polar::Result<()> {
    for (name, spec) in fixtures::all()? {
        let p = spec.point(1.0, 0.5)?;
        let g = p.first_form();
        let h = p.second_form();
        println!("{name}: g = [{:.6}, {:.6}; {:.6}]", g.a11, g.a12, g.a22);
        println!("{name}: h = [{:.6}, {:.6}; {:.6}]", h.a11, h.a12, h.a22);
        println!(
            "{name}: K = {:.9}  H = {:.9}  -delta^2/w^4 = {:.9}",
            p.gauss_curvature(),
            p.mean_curvature(),
            -p.jet.delta.powi(2) / p.w.powi(4)
        );
    }
    Ok(())
}
