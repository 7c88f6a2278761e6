//! Sizing the levitation field that holds the mirror in its ground state.
//!
//!     cargo run --example trap_design

use mesoscope::model::default_config;
use mesoscope::trap::{design_trap, em_force, grad_product_check, release_check};

fn main() -> mesoscope::Result<()> {
    let (g, m, _) = default_config();
    let d = design_trap(&m, &g, 1e-3, 0.1, 0.25)?;
    print!("{}", d.to_text());

    println!("\nsuperconducting fraction trade-off:");
    for (nu, eta) in [(1e-4, 0.1), (1e-3, 0.1), (1e-2, 0.1), (1e-3, 0.5)] {
        let grad = grad_product_check(&d, nu, eta);
        println!(
            "  nu = {nu:.0e}, eta = {eta:.1}: B0 dB0/dz = {grad:.3e} G^2/cm, B0 = {:.1} G",
            (grad * g.lambda1 / d.gradient_fraction).sqrt()
        );
    }

    let omega = 10.0;
    println!("\nforce over half a drive period (omega = {omega} rad/s):");
    for k in 0..=4 {
        let t = k as f64 * std::f64::consts::PI / (8.0 * omega);
        println!(
            "  t = {t:.4} s  F = {:.4e} dyn",
            em_force(t, &d, d.b0, omega)?
        );
    }
    println!(
        "dF/dz at the centre: {:.4e} (k = {:.4e})",
        d.force_gradient(1e-3 * g.lambda1),
        d.k
    );

    for t_r in [1e-7, 1e-5, 1e-4] {
        let c = release_check(t_r, &d)?;
        println!(
            "release in {t_r:.0e} s: spread {}, oscillator {}",
            c.ok_spread, c.ok_oscillator
        );
    }
    Ok(())
}
