//! Which polar normalizations are flat, minimal, have vanishing Pick
//! invariant or an incompressible support vector field.

use ruled_polar::fixtures;
use ruled_polar::polar::{classify, ClassifyOptions, PolarSupport};

fn main() -> ruled_polar::Result<()> {
    let opts = ClassifyOptions::default();
    for (name, spec) in fixtures::all()? {
        for src in ["cos(V)", "3*cos(V) - sin(V)", "exp(2*V)", "1 + V^2"] {
            let c = classify(&spec, &PolarSupport::parse(src)?, &opts)?;
            println!(
                "{name:>8}  {src:<18} K=0 {:<5} H=0 {:<5} J=0 {:<5} divQ=0 {:<5} ({} / {})",
                c.k_zero,
                c.h_zero,
                c.j_zero,
                c.q_incompressible,
                c.harmonic_detection,
                c.exponential_detection
            );
        }
    }
    Ok(())
}
