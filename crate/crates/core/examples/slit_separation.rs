//! Choosing the slit separation so the screen edges sit on first nodes.
//!
//!     cargo run --example slit_separation

use mesoscope::geometry::{pl_delta, solve_slit_separation};
use mesoscope::model::ExperimentGeometry;

fn main() -> mesoscope::Result<()> {
    let g = ExperimentGeometry::default();
    let half_wave = 0.5 * g.lambda1;

    let s = solve_slit_separation(half_wave, 0.0, &g)?;
    println!(
        "half-wave edge difference needs S = {:.5} lambda1",
        s / g.lambda1
    );

    let check = pl_delta(0.0, s, &g.with_slit_separation(s))?;
    println!(
        "check: PLdelta(D = S) = {:.12} lambda1",
        check.pl_delta / g.lambda1
    );

    for z in [-1.0, -0.5, 0.5, 1.0] {
        let s = solve_slit_separation(half_wave, z * g.lambda1, &g)?;
        println!(
            "mirror at z = {z:+.1} lambda1 -> S = {:.4} lambda1",
            s / g.lambda1
        );
    }

    match solve_slit_separation(30.0 * g.lambda1, 0.0, &g) {
        Err(e) => println!("unreachable target: {e}"),
        Ok(s) => println!("unexpected root {s:e}"),
    }
    Ok(())
}
