//! A mirror split into two branches a quarter wavelength apart.
//!
//!     cargo run --example bifurcated_mirror

use mesoscope::interference::{bifurcated_center_phase, Interferometer, Slit};
use mesoscope::model::ExperimentGeometry;
use mesoscope::wavepacket::{spb_velocity, PositionDensity};

fn main() -> mesoscope::Result<()> {
    let g = ExperimentGeometry::default();
    let sep = g.lambda1 / 4.0;

    let phase = bifurcated_center_phase(0.0, sep, g.lambda1)?;
    println!(
        "branch phase difference: {phase:.15} rad (pi = {:.15})",
        std::f64::consts::PI
    );

    // one SPB photon kicks the mirror by h/(λM)
    let kick = spb_velocity(g.lambda1, 1.1e-17)?;
    println!(
        "bifurcation velocity h/(lambda1 M) = {kick:.4e} cm/s, time to separate: {:.4e} s",
        sep / kick
    );

    let ifm = Interferometer::new(g);
    let split = PositionDensity::bifurcated(0.0, sep, 0.5)?;
    for (name, p) in [
        ("near branch", PositionDensity::delta(0.0)),
        ("far branch", PositionDensity::delta(sep)),
        ("both", split),
    ] {
        let e = ifm.field_from_slit(&p, 0.0, Slit::A)?;
        println!("vertical reflection field, {name:<11}: {e:+.6}");
    }

    let pattern = ifm.pattern(&PositionDensity::symmetric_bifurcation(sep), 11)?;
    println!("\nD/lambda1   I");
    for (d, i) in pattern.d_grid.iter().zip(&pattern.intensity) {
        println!("{:>8.3}   {i:.6}", d / g.lambda1);
    }
    Ok(())
}
