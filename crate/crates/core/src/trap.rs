//! Magnetic levitation trap that prepares the mirror in its ground state
//! before release.
//!
//! The superconducting mirror is modelled as a ring of radius λ₁ carrying
//! the current induced by an oscillating field B₀ sin(ωt). The field
//! magnitude is chosen so the vertical force gradient matches the spring
//! constant that gives a ground-state width of Δq_i.

use std::f64::consts::PI;

use crate::constants::{ELECTRON_CHARGE, ELECTRON_MASS, LIGHT_SPEED_C};
use crate::error::{ensure_positive, Error, Result};
use crate::format::fmt_sci;
use crate::model::{ExperimentGeometry, MirrorSpec};
use crate::wavepacket::{spread_time, spreading_velocity, trap_spring_constant};

/// Release must be this many times faster than the spread ("t_R ≪ t_s").
pub const RELEASE_MARGIN: f64 = 100.0;
/// Relative change of B₀ over one λ₁.
pub const DEFAULT_GRADIENT_FRACTION: f64 = 0.25;
pub const DEFAULT_NU: f64 = 1e-3;
pub const DEFAULT_ETA: f64 = 1e-1;

pub const E_FIELD_NOTE: &str =
    "turning the field off briefly exposes the mirror to a strong induced E field (not modelled)";

/// e²/(m_e c²), the classical electron radius.
fn electron_radius() -> f64 {
    ELECTRON_CHARGE * ELECTRON_CHARGE / (ELECTRON_MASS * LIGHT_SPEED_C * LIGHT_SPEED_C)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapDesign {
    /// erg/cm²
    pub k: f64,
    /// rad/s
    pub omega_os: f64,
    pub n_atoms: f64,
    /// Cooper pairs per lattice site.
    pub nu: f64,
    /// B_⊥/B₀.
    pub eta: f64,
    pub gradient_fraction: f64,
    /// B₀·∂B₀/∂z, G²/cm.
    pub grad_product: f64,
    /// G
    pub b0: f64,
    pub t_r_max_spread: f64,
    pub t_r_max_oscillator: f64,
    pub lambda1: f64,
    pub mass: f64,
    pub t_s: f64,
}

fn unit_interval(name: &'static str, value: f64, closed: bool) -> Result<f64> {
    let ok = value > 0.0 && if closed { value <= 1.0 } else { value < 1.0 };
    if ok {
        Ok(value)
    } else {
        Err(Error::InvalidConfig(vec![crate::Violation::new(
            name,
            if closed {
                "must lie in (0, 1]"
            } else {
                "must lie in (0, 1)"
            },
        )]))
    }
}

pub fn design_trap(
    mirror: &MirrorSpec,
    geom: &ExperimentGeometry,
    nu: f64,
    eta: f64,
    gradient_fraction: f64,
) -> Result<TrapDesign> {
    let nu = ensure_positive("nu", nu)?;
    let eta = unit_interval("eta", eta, false)?;
    let gradient_fraction = unit_interval("gradient_fraction", gradient_fraction, true)?;
    let lambda1 = ensure_positive("lambda1", geom.lambda1)?;
    let mass = ensure_positive("mass", mirror.mass)?;
    ensure_positive("atomic_weight", mirror.atomic_weight)?;

    let k = trap_spring_constant(mirror.delta_q_i, mass)?;
    let omega_os = (k / mass).sqrt();
    let n_atoms = mirror.atom_count();
    let grad_product = k / (2.0 * n_atoms * nu * eta * electron_radius() * lambda1);
    let b0 = (grad_product * lambda1 / gradient_fraction).sqrt();
    let t_s = spread_time(lambda1, spreading_velocity(mirror.delta_q_i, mass)?)?;

    Ok(TrapDesign {
        k,
        omega_os,
        n_atoms,
        nu,
        eta,
        gradient_fraction,
        grad_product,
        b0,
        t_r_max_spread: t_s / RELEASE_MARGIN,
        t_r_max_oscillator: 2.0 * PI / omega_os,
        lambda1,
        mass,
        t_s,
    })
}

/// B₀·∂B₀/∂z needed by `design` for a different superconducting fraction.
pub fn grad_product_check(design: &TrapDesign, nu: f64, eta: f64) -> f64 {
    design.k / (2.0 * design.n_atoms * nu * eta * electron_radius() * design.lambda1)
}

impl TrapDesign {
    /// Peak upward force per unit B₀², dyn/G².
    fn force_coefficient(&self) -> f64 {
        self.n_atoms * self.nu * self.eta * electron_radius() * self.lambda1
    }

    /// Field amplitude at height `z` above the trap centre.
    pub fn b0_at(&self, z: f64) -> f64 {
        self.b0 * (1.0 + self.gradient_fraction * z / self.lambda1)
    }

    /// Time-peak force with the mirror displaced by `z`.
    pub fn max_force_at_offset(&self, z: f64) -> f64 {
        let b = self.b0_at(z);
        self.force_coefficient() * b * b
    }

    /// Central finite difference of the peak force over ±`h`.
    pub fn force_gradient(&self, h: f64) -> f64 {
        (self.max_force_at_offset(h) - self.max_force_at_offset(-h)) / (2.0 * h)
    }

    pub const CSV_HEADER: &'static str =
        "k,omega_os,N_atoms,nu,eta,gradient_fraction,grad_product,B0,t_R_max_spread,t_R_max_oscillator";

    pub fn csv_row(&self) -> String {
        [
            self.k,
            self.omega_os,
            self.n_atoms,
            self.nu,
            self.eta,
            self.gradient_fraction,
            self.grad_product,
            self.b0,
            self.t_r_max_spread,
            self.t_r_max_oscillator,
        ]
        .iter()
        .map(|v| fmt_sci(*v))
        .collect::<Vec<_>>()
        .join(",")
    }

    pub fn to_text(&self) -> String {
        let rows = [
            ("k", self.k, "erg/cm^2"),
            ("omega_os", self.omega_os, "rad/s"),
            ("N_atoms", self.n_atoms, ""),
            ("nu", self.nu, ""),
            ("eta", self.eta, ""),
            ("gradient_fraction", self.gradient_fraction, ""),
            ("B0*dB0/dz", self.grad_product, "G^2/cm"),
            ("B0", self.b0, "G"),
            ("t_R max (t_s/100)", self.t_r_max_spread, "s"),
            ("t_R max (2pi/w_os)", self.t_r_max_oscillator, "s"),
        ];
        let mut out = String::new();
        for (name, value, unit) in rows {
            out.push_str(&format!("{name:<20} {value:>12.4e} {unit}\n"));
        }
        out.push_str(&format!("note: {E_FIELD_NOTE}\n"));
        out
    }
}

/// Instantaneous upward force N·ν·η·(e²λ₁/m_e c²)·B₀²·sin²(ωt).
///
/// The drive should be slow compared with the spread; a faster drive is
/// allowed but logged.
pub fn em_force(t: f64, design: &TrapDesign, b0: f64, omega_drive: f64) -> Result<f64> {
    let omega = ensure_positive("omega_drive", omega_drive)?;
    let b0 = ensure_positive("b0", b0)?;
    if 2.0 * PI / omega < RELEASE_MARGIN * design.t_s {
        log::warn!(
            "drive period {:.3e} s is not long compared with t_s = {:.3e} s",
            2.0 * PI / omega,
            design.t_s
        );
    }
    let s = (omega * t).sin();
    Ok(design.force_coefficient() * b0 * b0 * s * s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReleaseCheck {
    pub ok_spread: bool,
    pub ok_oscillator: bool,
}

pub fn release_check(t_r: f64, design: &TrapDesign) -> Result<ReleaseCheck> {
    let t_r = ensure_positive("t_R", t_r)?;
    Ok(ReleaseCheck {
        ok_spread: t_r <= design.t_r_max_spread,
        ok_oscillator: t_r < design.t_r_max_oscillator,
    })
}
