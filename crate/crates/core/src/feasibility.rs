//! Temperature and gas-density envelope within which the released mirror
//! spreads coherently: thermal radiation (T_R), the lowest phonon mode
//! (T_c), background gas (T_g) and the collision-free volume (ρ_α).
//!
//! The characteristic length W of the position information is the mirror
//! diameter; the radiating area is both faces of a disk of that diameter.

use std::f64::consts::PI;
use std::fmt;

use crate::constants::{
    AVOGADRO, BOLTZMANN_KB, HBAR, LIGHT_SPEED_C, PLANCK_H, STEFAN_BOLTZMANN_SIGMA,
};
use crate::error::{ensure_positive, Error, Result};
use crate::format::fmt_sci;
use crate::model::{EnvironmentSpec, ExperimentGeometry, MirrorSpec};
use crate::wavepacket::{spread_time, spreading_velocity};

/// Folded constant of the collapsed radiation limit, K⁴·cm⁷.
pub const RADIATION_COLLAPSED_CONSTANT: f64 = 2.6e-35;
/// Folded constants of the collapsed phonon cutoff: K·cm and 1/cm.
pub const PHONON_COLLAPSED_CONSTANT: f64 = 5.7e-6;
pub const PHONON_COLLAPSED_LOG_SCALE: f64 = 1.1e12;

/// Fraction of t_s during which radiated photons could carry away
/// which-position information.
pub const RADIATING_WINDOW_FRACTION: f64 = 0.25;

pub const BROWNIAN_NOTE: &str = "if the actual gas density is far below rho_alpha, the mirror \
may approach the trap with a Brownian velocity and the gas limit relaxes (not modelled)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadiationMode {
    /// Explicit physical formula.
    #[default]
    Symbolic,
    /// Numeric form with folded constants.
    Collapsed,
}

/// Energy of one photon able to resolve the mirror position, hc/W.
pub fn energy_budget(geom: &ExperimentGeometry) -> Result<f64> {
    let w = ensure_positive("mirror_diameter", geom.mirror_diameter)?;
    Ok(PLANCK_H * LIGHT_SPEED_C / w)
}

fn radiating_area(geom: &ExperimentGeometry) -> f64 {
    let r = 0.5 * geom.mirror_diameter;
    2.0 * PI * r * r
}

/// Temperature at which the mirror radiates `energy_budget` over `window`.
pub fn radiation_temperature_for_window(
    mirror: &MirrorSpec,
    geom: &ExperimentGeometry,
    window: f64,
) -> Result<f64> {
    let window = ensure_positive("window", window)?;
    let emissivity = ensure_positive("emissivity", mirror.emissivity)?;
    let e_t = energy_budget(geom)?;
    Ok((e_t / (window * emissivity * STEFAN_BOLTZMANN_SIGMA * radiating_area(geom))).powf(0.25))
}

/// Highest mirror temperature at which thermal radiation does not leak
/// position information during the spread.
pub fn radiation_temperature(
    mirror: &MirrorSpec,
    geom: &ExperimentGeometry,
    mode: RadiationMode,
) -> Result<f64> {
    match mode {
        RadiationMode::Symbolic => {
            let dv = spreading_velocity(mirror.delta_q_i, mirror.mass)?;
            let t_s = spread_time(geom.lambda1, dv)?;
            radiation_temperature_for_window(mirror, geom, RADIATING_WINDOW_FRACTION * t_s)
        }
        RadiationMode::Collapsed => {
            let lambda1 = ensure_positive("lambda1", geom.lambda1)?;
            let dq = ensure_positive("delta_q_i", mirror.delta_q_i)?;
            Ok((RADIATION_COLLAPSED_CONSTANT / (lambda1.powi(6) * dq)).powf(0.25))
        }
    }
}

/// Lowest acoustic mode of the disk, 2πv_s/W.
pub fn phonon_mode_frequency(geom: &ExperimentGeometry, mirror: &MirrorSpec) -> Result<f64> {
    let v_s = ensure_positive("sound_speed", mirror.sound_speed)?;
    let w = ensure_positive("mirror_diameter", geom.mirror_diameter)?;
    Ok(2.0 * PI * v_s / w)
}

/// Temperature below which the lowest phonon mode is frozen out relative
/// to the spreading kinetic energy.
pub fn phonon_cutoff(
    mirror: &MirrorSpec,
    geom: &ExperimentGeometry,
    mode: RadiationMode,
) -> Result<f64> {
    match mode {
        RadiationMode::Symbolic => {
            let omega = phonon_mode_frequency(geom, mirror)?;
            let dv = spreading_velocity(mirror.delta_q_i, mirror.mass)?;
            let quantum = HBAR * omega;
            let arg = quantum / (mirror.mass * dv * dv) + 1.0;
            if !(arg > 1.0) {
                return Err(Error::LogDomain(arg));
            }
            Ok(quantum / BOLTZMANN_KB / arg.ln())
        }
        RadiationMode::Collapsed => {
            let lambda1 = ensure_positive("lambda1", geom.lambda1)?;
            let arg = lambda1 * PHONON_COLLAPSED_LOG_SCALE;
            if !(arg > 1.0) {
                return Err(Error::LogDomain(arg));
            }
            Ok(PHONON_COLLAPSED_CONSTANT / (lambda1 * arg.ln()))
        }
    }
}

/// Gas temperature at which the mirror's thermal velocity is α·Δv_i.
pub fn gas_temperature_limit(alpha: f64, mirror: &MirrorSpec) -> Result<f64> {
    let alpha = ensure_positive("alpha", alpha)?;
    let v = alpha * spreading_velocity(mirror.delta_q_i, mirror.mass)?;
    Ok(mirror.mass * v * v / (3.0 * BOLTZMANN_KB))
}

/// RMS ideal-gas speed √(3k_BT/m).
pub fn thermal_velocity(temperature: f64, mass: f64) -> Result<f64> {
    let t = ensure_positive("temperature", temperature)?;
    let m = ensure_positive("mass", mass)?;
    Ok((3.0 * BOLTZMANN_KB * t / m).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionConstraint {
    /// Background gas speed at T_g, cm/s.
    pub gas_velocity: f64,
    /// Volume swept by gas particles reaching the mirror during t_s, cm³.
    pub volume: f64,
    /// Density giving one particle in `volume`, mol/L.
    pub rho_alpha: f64,
}

/// Largest gas density for which no particle is expected to hit the
/// mirror during the spread.
pub fn collision_constraint(
    alpha: f64,
    mirror: &MirrorSpec,
    geom: &ExperimentGeometry,
    env: &EnvironmentSpec,
) -> Result<CollisionConstraint> {
    let t_g = gas_temperature_limit(alpha, mirror)?;
    let gas_velocity = thermal_velocity(t_g, env.gas_particle_mass)?;
    let t_s = spread_time(
        geom.lambda1,
        spreading_velocity(mirror.delta_q_i, mirror.mass)?,
    )?;
    let r = 0.5 * ensure_positive("mirror_diameter", geom.mirror_diameter)?;
    let volume = gas_velocity * t_s * PI * r * r;
    Ok(CollisionConstraint {
        gas_velocity,
        volume,
        // mol/cm³ → mol/L
        rho_alpha: 1000.0 / (AVOGADRO * volume),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemperatureLimit {
    Radiation,
    PhononCutoff,
    Gas,
}

impl TemperatureLimit {
    pub fn symbol(&self) -> &'static str {
        match self {
            TemperatureLimit::Radiation => "T_R",
            TemperatureLimit::PhononCutoff => "T_c",
            TemperatureLimit::Gas => "T_g",
        }
    }
}

impl fmt::Display for TemperatureLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The full envelope at one parameter point. Temperatures in K.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub alpha: f64,
    pub delta_v_i: f64,
    pub t_s: f64,
    pub e_t: f64,
    pub t_r: f64,
    pub t_c: f64,
    pub t_g: f64,
    /// Mirror thermal velocity at T_g (= α·Δv_i).
    pub v_t: f64,
    pub v_g: f64,
    pub collision_volume: f64,
    pub rho_alpha: f64,
    pub binding_limit: TemperatureLimit,
    pub binding_value: f64,
    pub t_r_collapsed: f64,
    pub t_c_collapsed: f64,
}

impl FeasibilityReport {
    pub const CSV_HEADER: &'static str = "alpha,delta_v_i,t_s,E_T,T_R,T_c,T_g,v_T,v_g,V,rho_alpha,\
binding_limit,binding_value,T_R_collapsed,T_c_collapsed";

    pub fn csv_row(&self) -> String {
        let nums = [
            self.alpha,
            self.delta_v_i,
            self.t_s,
            self.e_t,
            self.t_r,
            self.t_c,
            self.t_g,
            self.v_t,
            self.v_g,
            self.collision_volume,
            self.rho_alpha,
        ];
        let mut fields: Vec<String> = nums.iter().map(|v| fmt_sci(*v)).collect();
        fields.push(self.binding_limit.symbol().to_string());
        fields.push(fmt_sci(self.binding_value));
        fields.push(fmt_sci(self.t_r_collapsed));
        fields.push(fmt_sci(self.t_c_collapsed));
        fields.join(",")
    }

    pub fn to_text(&self) -> String {
        let rows = [
            ("alpha", self.alpha, ""),
            ("delta_v_i", self.delta_v_i, "cm/s"),
            ("t_s", self.t_s, "s"),
            ("E_T", self.e_t, "erg"),
            ("T_R", self.t_r, "K"),
            ("T_R (collapsed)", self.t_r_collapsed, "K"),
            ("T_c", self.t_c, "K"),
            ("T_c (collapsed)", self.t_c_collapsed, "K"),
            ("T_g", self.t_g, "K"),
            ("v_T", self.v_t, "cm/s"),
            ("v_g", self.v_g, "cm/s"),
            ("V", self.collision_volume, "cm^3"),
            ("rho_alpha", self.rho_alpha, "mol/L"),
        ];
        let mut out = String::new();
        for (name, value, unit) in rows {
            out.push_str(&format!("{name:<16} {value:>12.4e} {unit}\n"));
        }
        out.push_str(&format!(
            "binding limit    {} = {:.4e} K\nnote: {BROWNIAN_NOTE}\n",
            self.binding_limit, self.binding_value
        ));
        out
    }
}

/// Evaluates every limit (symbolic forms) and picks the binding one.
pub fn feasibility_report(
    mirror: &MirrorSpec,
    geom: &ExperimentGeometry,
    env: &EnvironmentSpec,
) -> Result<FeasibilityReport> {
    let alpha = env.alpha;
    let delta_v_i = spreading_velocity(mirror.delta_q_i, mirror.mass)?;
    let t_s = spread_time(geom.lambda1, delta_v_i)?;
    let t_r = radiation_temperature(mirror, geom, RadiationMode::Symbolic)?;
    let t_c = phonon_cutoff(mirror, geom, RadiationMode::Symbolic)?;
    let t_g = gas_temperature_limit(alpha, mirror)?;
    let collision = collision_constraint(alpha, mirror, geom, env)?;

    let (binding_limit, binding_value) = [
        (TemperatureLimit::Radiation, t_r),
        (TemperatureLimit::PhononCutoff, t_c),
        (TemperatureLimit::Gas, t_g),
    ]
    .into_iter()
    .fold((TemperatureLimit::Radiation, f64::INFINITY), |best, cur| {
        if cur.1 < best.1 {
            cur
        } else {
            best
        }
    });

    Ok(FeasibilityReport {
        alpha,
        delta_v_i,
        t_s,
        e_t: energy_budget(geom)?,
        t_r,
        t_c,
        t_g,
        v_t: thermal_velocity(t_g, mirror.mass)?,
        v_g: collision.gas_velocity,
        collision_volume: collision.volume,
        rho_alpha: collision.rho_alpha,
        binding_limit,
        binding_value,
        t_r_collapsed: radiation_temperature(mirror, geom, RadiationMode::Collapsed)?,
        t_c_collapsed: phonon_cutoff(mirror, geom, RadiationMode::Collapsed)?,
    })
}
