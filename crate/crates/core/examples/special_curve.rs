//! The curve traced by the relative normal of q = c1 cos V + c2 sin V.

use ruled_polar::fixtures;
use ruled_polar::oracle::frenet_in_frame;
use ruled_polar::special::SpecialPolar;

fn main() -> ruled_polar::Result<()> {
    let sp = SpecialPolar::new(1.0, 0.5)?;
    for (name, spec) in fixtures::all()? {
        println!("{name}");
        for u in [0.4, 1.0, 1.9] {
            let g = match sp.gamma_star(&spec, u) {
                Ok(g) => g,
                Err(e) => {
                    println!("  u = {u}: {e}");
                    continue;
                }
            };
            let fr = frenet_in_frame(&spec, |t| sp.gamma_star(&spec, t).map(|g| g.y), u)?;
            println!(
                "  u = {u}: curvature {:.8} (numeric {:.8})  torsion {:.8} (numeric {:.8})  ratio {:?}",
                g.curvature, fr.curvature, g.torsion, fr.torsion, g.slope_ratio
            );
        }
    }
    Ok(())
}
