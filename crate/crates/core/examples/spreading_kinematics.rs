//! How fast the released mirror spreads, linear model against the exact
//! free Gaussian.
//!
//!     cargo run --example spreading_kinematics

use mesoscope::model::MirrorSpec;
use mesoscope::wavepacket::{trap_spring_constant, SpreadingState};

fn main() -> mesoscope::Result<()> {
    let m = MirrorSpec::vanadium();
    let lambda1 = 1e-6;
    let s = SpreadingState::new(lambda1, m.delta_q_i, m.mass)?;

    println!(
        "M = {:.2e} g, dq_i = {:.2e} cm ({:.0} atoms)",
        m.mass,
        m.delta_q_i,
        m.atom_count()
    );
    println!("dv_i  = {:.4e} cm/s", s.delta_v_i);
    println!("dv_spb = {:.4e} cm/s", s.delta_v_spb);
    println!("t_s   = {:.4e} s", s.t_s);
    println!(
        "k     = {:.4e} erg/cm^2",
        trap_spring_constant(m.delta_q_i, m.mass)?
    );

    println!("\n{:>8} {:>14} {:>14}", "t/t_s", "linear", "exact");
    for f in [0.0, 1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0] {
        let t = f * s.t_s;
        println!(
            "{f:>8} {:>14.6e} {:>14.6e}",
            s.linear_width_at(t),
            s.sigma_at(t)?
        );
    }
    Ok(())
}
