//! Feasibility report across a wavelength range, written as CSV.
//!
//!     cargo run --example parameter_sweep -- 'lambda1=1e-7:1e-5:log:9'

use mesoscope::config::RunConfig;
use mesoscope::sweep::{run_sweep, sweep_csv, SweepSpec};

fn main() -> mesoscope::Result<()> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "lambda1=1e-7:1e-5:log:9".into());
    let spec: SweepSpec = arg.parse()?;
    let rows = run_sweep(&RunConfig::default(), &spec)?;
    print!("{}", sweep_csv(&spec, &rows));

    let (lo, hi) = (&rows[0], &rows[rows.len() - 1]);
    eprintln!(
        "T_R {:.3e} K -> {:.3e} K, binding {} -> {}",
        lo.1.t_r, hi.1.t_r, lo.1.binding_limit, hi.1.binding_limit
    );
    Ok(())
}
