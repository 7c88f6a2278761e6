//! A λ₂ detection pins the mirror to |z| ≤ W_a/(4cosθ) and truncates its
//! position density.
//!
//!     cargo run --example probe_collapse

use mesoscope::geometry::{probe_resolution, recoil_displacement};
use mesoscope::model::ExperimentGeometry;
use mesoscope::wavepacket::{density_value, truncate, PositionDensity};

fn main() -> mesoscope::Result<()> {
    let g = ExperimentGeometry::default();
    for theta in [0.0_f64, 0.1, 0.3, 0.6] {
        let bound = probe_resolution(g.lambda2, theta, g.probe_aperture)?;
        println!(
            "theta = {theta:.1} rad -> |z_m| <= {:.4} lambda1",
            bound / g.lambda1
        );
    }

    let bound = probe_resolution(g.lambda2, 0.0, g.probe_aperture)?;
    let before = PositionDensity::gaussian(g.lambda1)?;
    let after = truncate(&before, -bound, bound)?;
    if let PositionDensity::TruncatedGaussian { renorm, .. } = &after {
        println!(
            "\nprobability inside the bound {:.6}, renormalization x{renorm:.4}",
            1.0 / renorm
        );
    }
    println!("{:>10} {:>14} {:>14}", "z/lambda1", "P before", "P after");
    for k in -4..=4 {
        let z = k as f64 * 0.1 * g.lambda1;
        println!(
            "{:>10.2} {:>14.6e} {:>14.6e}",
            z / g.lambda1,
            density_value(&before, z)?,
            density_value(&after, z)?
        );
    }

    let drift = recoil_displacement(g.lambda2, 1.1e-17, 1e-9)?;
    println!(
        "\nrecoil drift over 1 ns: {drift:.3e} cm = {:.2e} lambda1",
        drift / g.lambda1
    );
    Ok(())
}
