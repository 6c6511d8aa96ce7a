//! Compare every closed form with its numerical oracle on a small grid,
//! then show that a corrupted Pick invariant is caught.

use ruled_polar::fixtures;
use ruled_polar::grid::Grid;
use ruled_polar::oracle::{residual_report, ReportOptions, Status};
use ruled_polar::polar::PolarSupport;
use ruled_polar::relative::SupportFunction;

fn main() -> ruled_polar::Result<()> {
    let spec = fixtures::general()?;
    let q = SupportFunction::polar(PolarSupport::parse("exp(V/3)")?);
    let grid = Grid::new((0.3, 2.7), 5, (-2.0, 2.0), 5)?;
    let points = grid.points_avoiding_zeros(&spec, &q)?;

    let report = residual_report(&spec, &q, &points, &ReportOptions::default());
    println!("passed/failed/inconclusive: {}", report.summary);
    for name in ["K", "J", "S", "curlG_T"] {
        let worst = report
            .rows_for(name)
            .filter_map(|r| r.rel_residual)
            .fold(0.0_f64, f64::max);
        println!("  worst {name:<8} {worst:.2e}");
    }

    let corrupted = residual_report(
        &spec,
        &q,
        &points,
        &ReportOptions {
            corrupt_pick: true,
            ..Default::default()
        },
    );
    let failed_j = corrupted
        .rows_for("J")
        .filter(|r| r.status == Status::Fail)
        .count();
    println!(
        "negative control: {failed_j} of {} J rows fail",
        corrupted.rows_for("J").count()
    );
    Ok(())
}
