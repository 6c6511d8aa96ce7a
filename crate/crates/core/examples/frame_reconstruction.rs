//! Rebuild a surface from its invariants and check the integrator.

use ruled_polar::fixtures;
use ruled_polar::surface::{integrate_frame, surface_jet};

fn main() -> ruled_polar::Result<()> {
    let spec = fixtures::general()?;
    let frames = integrate_frame(&spec)?;
    println!(
        "domain {:?}, {} knots, step {:.2e}",
        frames.domain(),
        frames.knot_count(),
        frames.step()
    );
    println!("max per-step drift {:.2e}", frames.max_step_drift());
    println!(
        "orthonormality defect {:.2e}",
        frames.orthonormality_defect()
    );

    for u in [0.5, 1.5, 2.5] {
        let j = surface_jet(&spec, &frames, u, 0.7)?;
        println!(
            "x({u}, 0.7) = [{:.6}, {:.6}, {:.6}]  |N| = {:.15}  w = {:.6}",
            j.x.x,
            j.x.y,
            j.x.z,
            j.normal.norm(),
            j.w
        );
    }

    // The right helicoid winds around a straight striction line.
    let helicoid = fixtures::helicoid()?;
    let frames = integrate_frame(&helicoid)?;
    let (_, s0) = frames.at(helicoid.domain().0)?;
    let (_, s1) = frames.at(helicoid.domain().1)?;
    println!(
        "helicoid striction displacement {:?}",
        (s1 - s0).map(|c| (c * 1e9).round() / 1e9)
    );
    Ok(())
}
