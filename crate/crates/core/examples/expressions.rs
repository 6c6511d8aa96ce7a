//! Parse a coefficient function, differentiate it symbolically and integrate
//! it numerically.

use ruled_polar::{Antiderivative, ScalarExpr};

fn main() -> ruled_polar::Result<()> {
    let delta = ScalarExpr::parse("2 + sin(u)*exp(-u/3)")?;
    let d_delta = delta.derivative();
    println!("delta   = {}", delta.display("u"));
    println!("delta'  = {}", d_delta.display("u"));

    let u = 1.25;
    let h = 1e-5;
    let fd = (delta.eval(u + h)? - delta.eval(u - h)?) / (2.0 * h);
    println!(
        "delta'({u}) = {:.12}  central difference {:.12}",
        d_delta.eval(u)?,
        fd
    );

    let kappa = ScalarExpr::parse("cos(u)")?;
    let k = Antiderivative::new(kappa, 0.0, (0.0, 6.0))?;
    for u in [0.5, 2.0, 5.0] {
        println!(
            "int_0^{u} cos = {:.12}  sin({u}) = {:.12}",
            k.eval(u)?,
            f64::sin(u)
        );
    }

    match ScalarExpr::parse("sin(") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
