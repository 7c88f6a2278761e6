//! Loading an arbitrary mirror density from CSV and comparing its pattern
//! with the fixed mirror.
//!
//!     cargo run --example tabulated_density [density.csv]

use mesoscope::interference::{node_metrics, Interferometer};
use mesoscope::model::ExperimentGeometry;
use mesoscope::wavepacket::{PositionDensity, TabulatedDensity};

const SAMPLE: &str = "\
z_cm,p
# a lopsided bump, not normalized
-2.0e-7,0
-1.0e-7,1
0,3
0.5e-7,2
1.5e-7,0
";

fn main() -> mesoscope::Result<()> {
    let table = match std::env::args().nth(1) {
        Some(path) => TabulatedDensity::from_csv_path(path)?,
        None => TabulatedDensity::from_csv_reader(SAMPLE.as_bytes())?,
    };
    let (lo, hi) = table.support();
    println!(
        "{} points on [{lo:.2e}, {hi:.2e}] cm, renormalized x{:.4e}",
        table.grid().len(),
        table.renormalization()
    );

    let ifm = Interferometer::new(ExperimentGeometry::default());
    let report = ifm.compare_densities(
        &PositionDensity::Tabulated(table),
        &PositionDensity::delta(0.0),
        501,
    )?;
    println!(
        "tabulated node_depth_ratio {:.4e}",
        report.metrics_first.node_depth_ratio
    );
    println!(
        "fixed     node_depth_ratio {:.4e}",
        report.metrics_second.node_depth_ratio
    );
    println!("sharper: {:?}", report.sharper);

    let pattern = ifm.pattern(&PositionDensity::delta(0.0), 5)?;
    println!(
        "fixed-mirror nodes: {:?}",
        node_metrics(&pattern)?.node_positions
    );
    Ok(())
}
