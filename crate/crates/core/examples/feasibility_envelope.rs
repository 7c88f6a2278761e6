//! Temperature limits for the free spread and where each one binds.
//!
//!     cargo run --example feasibility_envelope

use mesoscope::feasibility::{feasibility_report, radiation_temperature_for_window};
use mesoscope::model::{default_config, EnvironmentSpec};

fn main() -> mesoscope::Result<()> {
    let (g, m, e) = default_config();
    let report = feasibility_report(&m, &g, &e)?;
    print!("{}", report.to_text());

    let full = radiation_temperature_for_window(&m, &g, report.t_s)?;
    println!("\nradiating over the whole t_s instead of t_s/4: T_R = {full:.1} K");

    println!(
        "\n{:>8} {:>12} {:>12} {:>8}",
        "alpha", "T_g [K]", "rho [mol/L]", "binds"
    );
    for alpha in [1.0, 5.0, 30.0, 300.0, 1e3, 1e6] {
        let r = feasibility_report(&m, &g, &EnvironmentSpec::rubidium_85(alpha))?;
        println!(
            "{alpha:>8.0e} {:>12.4e} {:>12.4e} {:>8}",
            r.t_g, r.rho_alpha, r.binding_limit
        );
    }
    Ok(())
}
