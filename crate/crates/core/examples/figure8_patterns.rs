//! Screen patterns for a fixed, a spread and a probe-truncated mirror, and
//! how sharp their edge nodes are.
//!
//!     cargo run --release --example figure8_patterns [out_dir]

use std::path::PathBuf;

use mesoscope::geometry::geometry_probe_resolution;
use mesoscope::interference::{node_metrics, Interferometer};
use mesoscope::model::ExperimentGeometry;
use mesoscope::wavepacket::{truncate, PositionDensity};

fn main() -> mesoscope::Result<()> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    let g = ExperimentGeometry::default().with_slit_separation(2.3e-6);
    let ifm = Interferometer::new(g);

    let gaussian = PositionDensity::gaussian(g.lambda1)?;
    let bound = geometry_probe_resolution(&g)?;
    let densities = [
        ("delta", PositionDensity::delta(0.0)),
        ("gaussian", gaussian.clone()),
        ("truncated", truncate(&gaussian, -bound, bound)?),
    ];

    println!(
        "{:<10} {:>14} {:>14} {:>14}  nodes (D/lambda1)",
        "density", "central peak", "edge min", "ratio"
    );
    for (name, p) in &densities {
        let pattern = ifm.pattern(p, 1001)?;
        let m = node_metrics(&pattern)?;
        let nodes: Vec<String> = m
            .node_positions
            .iter()
            .map(|d| format!("{:.3}", d / g.lambda1))
            .collect();
        println!(
            "{name:<10} {:>14.6e} {:>14.6e} {:>14.6e}  {}",
            m.central_peak,
            m.edge_min,
            m.node_depth_ratio,
            nodes.join(" ")
        );
        if let Some(dir) = &out_dir {
            let path = dir.join(format!("pattern_{name}.csv"));
            std::fs::write(&path, pattern.to_csv()).map_err(|e| mesoscope::Error::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
        }
    }
    Ok(())
}
