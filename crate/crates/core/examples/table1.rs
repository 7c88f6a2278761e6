//! Edge path differences for a mirror displaced by ±λ₁.
//!
//!     cargo run --example table1

use mesoscope::geometry::pl_delta;
use mesoscope::model::ExperimentGeometry;

fn main() -> mesoscope::Result<()> {
    let g = ExperimentGeometry::default();
    println!(
        "S = {:.2} lambda1, L = {:.2} lambda1",
        g.slit_separation / g.lambda1,
        g.slit_mirror_distance / g.lambda1
    );
    println!(
        "{:>8} {:>10} {:>10} {:>10}",
        "z_m", "path A", "path B", "PLdelta"
    );
    for (label, k) in [("+1", 1.0), ("0", 0.0), ("-1", -1.0)] {
        let pair = pl_delta(k * g.lambda1, g.slit_separation, &g)?;
        println!(
            "{label:>8} {:>10.4} {:>10.4} {:>10.4}",
            pair.path_from_a / g.lambda1,
            pair.path_from_b / g.lambda1,
            pair.pl_delta / g.lambda1
        );
    }
    // a mirror closer to the slits (negative z) sees the larger difference
    Ok(())
}
