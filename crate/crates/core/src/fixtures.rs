//! Reference surfaces used throughout the tests and examples.
//!
//! All of them live on `u ∈ [0, 2π]` with base point `u₀ = 0`, standard
//! initial frame and the striction curve starting at the origin.

use crate::error::Result;
use crate::surface::RuledSurfaceSpec;

pub const DOMAIN: (f64, f64) = (0.0, std::f64::consts::TAU);

/// Right helicoid δ = 1, κ = λ = 0.
pub fn helicoid() -> Result<RuledSurfaceSpec> {
    RuledSurfaceSpec::parse("1", "0", "0", DOMAIN)
}

/// Right helicoid with pitch `c` (δ = c).
pub fn helicoid_with_pitch(c: f64) -> Result<RuledSurfaceSpec> {
    RuledSurfaceSpec::parse(&format!("{c:?}"), "0", "0", DOMAIN)
}

/// δ = 1, κ = 1, λ = 0.
pub fn conical_unit() -> Result<RuledSurfaceSpec> {
    RuledSurfaceSpec::parse("1", "1", "0", DOMAIN)
}

/// δ = 2 + sin u, κ = cos u, λ = u/5.
pub fn general() -> Result<RuledSurfaceSpec> {
    RuledSurfaceSpec::parse("2 + sin(u)", "cos(u)", "u/5", DOMAIN)
}

/// The three fixtures with their short names.
pub fn all() -> Result<Vec<(&'static str, RuledSurfaceSpec)>> {
    Ok(vec![
        ("helicoid", helicoid()?),
        ("conical", conical_unit()?),
        ("general", general()?),
    ])
}
