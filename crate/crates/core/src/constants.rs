//! Physical constants in CGS-Gaussian units (CODATA 2018 values).
//!
//! Lengths are in cm, masses in g, energies in erg, charges in statC and
//! magnetic fields in gauss throughout the crate.

use std::f64::consts::PI;

/// Planck constant (erg·s).
pub const PLANCK_H: f64 = 6.626_070_15e-27;

/// Reduced Planck constant ħ = h/2π (erg·s).
pub const HBAR: f64 = PLANCK_H / (2.0 * PI);

/// Speed of light in vacuum (cm/s).
pub const LIGHT_SPEED_C: f64 = 2.997_924_58e10;

/// Boltzmann constant (erg/K).
pub const BOLTZMANN_KB: f64 = 1.380_649e-16;

/// Stefan-Boltzmann constant (erg·cm⁻²·s⁻¹·K⁻⁴).
pub const STEFAN_BOLTZMANN_SIGMA: f64 = 5.670_374_419e-5;

/// Elementary charge (statC).
pub const ELECTRON_CHARGE: f64 = 4.803_204_712_570_263e-10;

/// Electron rest mass (g).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-28;

/// Atomic mass unit (g).
pub const AMU: f64 = 1.660_539_066_60e-24;

/// Avogadro constant (1/mol).
pub const AVOGADRO: f64 = 6.022_140_76e23;

/// Mass of a rubidium-85 atom in amu.
pub const RUBIDIUM_85_AMU: f64 = 84.911_789_738;

/// The constant set as a value, for callers that want to pass it around or
/// print it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub planck_h: f64,
    pub hbar: f64,
    pub light_speed_c: f64,
    pub boltzmann_kb: f64,
    pub stefan_boltzmann_sigma: f64,
    pub electron_charge: f64,
    pub electron_mass: f64,
    pub amu: f64,
}

impl PhysicalConstants {
    pub const CGS: PhysicalConstants = PhysicalConstants {
        planck_h: PLANCK_H,
        hbar: HBAR,
        light_speed_c: LIGHT_SPEED_C,
        boltzmann_kb: BOLTZMANN_KB,
        stefan_boltzmann_sigma: STEFAN_BOLTZMANN_SIGMA,
        electron_charge: ELECTRON_CHARGE,
        electron_mass: ELECTRON_MASS,
        amu: AMU,
    };

    fn all(&self) -> [f64; 8] {
        [
            self.planck_h,
            self.hbar,
            self.light_speed_c,
            self.boltzmann_kb,
            self.stefan_boltzmann_sigma,
            self.electron_charge,
            self.electron_mass,
            self.amu,
        ]
    }

    pub fn all_positive(&self) -> bool {
        self.all().iter().all(|v| *v > 0.0 && v.is_finite())
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CGS
    }
}
