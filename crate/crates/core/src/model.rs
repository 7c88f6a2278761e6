//! Experiment configuration: apparatus geometry, mirror material and the
//! cryogenic environment, plus whole-configuration validation.
//!
//! All defaults are expressed relative to the interfering wavelength λ₁, so
//! [`ExperimentGeometry::for_wavelength`] rescales the whole apparatus.

use std::f64::consts::FRAC_PI_2;

use crate::constants::{AMU, RUBIDIUM_85_AMU};
use crate::error::{Error, Result, Violation};

/// Interfering wavelength of the reference design (cm).
pub const DEFAULT_LAMBDA1: f64 = 1e-6;

/// Slit separation in units of λ₁.
pub const SLIT_SEPARATION_OVER_LAMBDA1: f64 = 2.29;
/// Slit plane (and screen) to mirror distance in units of λ₁.
pub const SLIT_MIRROR_DISTANCE_OVER_LAMBDA1: f64 = 2.5;
/// Mirror diameter in units of λ₁.
pub const MIRROR_DIAMETER_OVER_LAMBDA1: f64 = 2.5;
/// Probe wavelength λ₂ in units of λ₁.
pub const LAMBDA2_OVER_LAMBDA1: f64 = 0.25;

/// Apparatus geometry. Lengths in cm, angles in rad.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentGeometry {
    pub lambda1: f64,
    pub slit_separation: f64,
    pub slit_mirror_distance: f64,
    pub mirror_diameter: f64,
    pub lambda2: f64,
    pub probe_angle: f64,
    pub probe_aperture: f64,
}

impl ExperimentGeometry {
    /// Reference design scaled to `lambda1`, with the probe at normal
    /// incidence and `W_a = 4 λ₂ cos θ`.
    pub fn for_wavelength(lambda1: f64) -> Self {
        Self::with_probe_angle(lambda1, 0.0)
    }

    pub fn with_probe_angle(lambda1: f64, probe_angle: f64) -> Self {
        let lambda2 = LAMBDA2_OVER_LAMBDA1 * lambda1;
        Self {
            lambda1,
            slit_separation: SLIT_SEPARATION_OVER_LAMBDA1 * lambda1,
            slit_mirror_distance: SLIT_MIRROR_DISTANCE_OVER_LAMBDA1 * lambda1,
            mirror_diameter: MIRROR_DIAMETER_OVER_LAMBDA1 * lambda1,
            lambda2,
            probe_angle,
            probe_aperture: 4.0 * lambda2 * probe_angle.cos(),
        }
    }

    /// Same geometry with a different slit separation.
    pub fn with_slit_separation(self, slit_separation: f64) -> Self {
        Self {
            slit_separation,
            ..self
        }
    }

    /// Multiplies every length by `factor`; the probe angle is unchanged.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            lambda1: self.lambda1 * factor,
            slit_separation: self.slit_separation * factor,
            slit_mirror_distance: self.slit_mirror_distance * factor,
            mirror_diameter: self.mirror_diameter * factor,
            lambda2: self.lambda2 * factor,
            probe_angle: self.probe_angle,
            probe_aperture: self.probe_aperture * factor,
        }
    }

    fn check(&self, out: &mut Vec<Violation>) {
        let lengths = [
            ("lambda1", self.lambda1),
            ("slit_separation", self.slit_separation),
            ("slit_mirror_distance", self.slit_mirror_distance),
            ("mirror_diameter", self.mirror_diameter),
            ("lambda2", self.lambda2),
            ("probe_aperture", self.probe_aperture),
        ];
        for (field, value) in lengths {
            positive(out, field, value);
        }
        if !(self.probe_angle >= 0.0 && self.probe_angle < FRAC_PI_2) {
            out.push(Violation::new("probe_angle", "must lie in [0, π/2)"));
        }
    }
}

impl Default for ExperimentGeometry {
    fn default() -> Self {
        Self::for_wavelength(DEFAULT_LAMBDA1)
    }
}

/// The mesoscopic mirror. Vanadium by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorSpec {
    /// g
    pub mass: f64,
    /// Initial (trapped ground-state) position uncertainty, cm.
    pub delta_q_i: f64,
    /// g/cm³
    pub density: f64,
    /// cm/s
    pub sound_speed: f64,
    /// amu
    pub atomic_weight: f64,
    /// cm
    pub lattice_spacing: f64,
    /// Thermal emissivity in (0, 1]; 1 is the hottest-radiating bound.
    pub emissivity: f64,
}

impl MirrorSpec {
    pub const VANADIUM_DENSITY: f64 = 6.1;
    pub const VANADIUM_SOUND_SPEED: f64 = 3e5;
    pub const VANADIUM_ATOMIC_WEIGHT: f64 = 50.0;
    pub const VANADIUM_LATTICE_SPACING: f64 = 2.4e-8;
    pub const DEFAULT_MASS: f64 = 1.1e-17;

    pub fn vanadium() -> Self {
        Self {
            mass: Self::DEFAULT_MASS,
            delta_q_i: Self::VANADIUM_LATTICE_SPACING / 2.0,
            density: Self::VANADIUM_DENSITY,
            sound_speed: Self::VANADIUM_SOUND_SPEED,
            atomic_weight: Self::VANADIUM_ATOMIC_WEIGHT,
            lattice_spacing: Self::VANADIUM_LATTICE_SPACING,
            emissivity: 1.0,
        }
    }

    /// Number of atoms in the mirror.
    pub fn atom_count(&self) -> f64 {
        self.mass / (self.atomic_weight * AMU)
    }

    fn check(&self, out: &mut Vec<Violation>) {
        let fields = [
            ("mass", self.mass),
            ("delta_q_i", self.delta_q_i),
            ("density", self.density),
            ("sound_speed", self.sound_speed),
            ("atomic_weight", self.atomic_weight),
            ("lattice_spacing", self.lattice_spacing),
            ("emissivity", self.emissivity),
        ];
        for (field, value) in fields {
            positive(out, field, value);
        }
        if self.emissivity > 1.0 {
            out.push(Violation::new("emissivity", "must be ≤ 1"));
        }
    }
}

impl Default for MirrorSpec {
    fn default() -> Self {
        Self::vanadium()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentSpec {
    /// Ratio of the allowed pre-trap thermal velocity to Δv_i.
    pub alpha: f64,
    /// Mass of a background gas particle, g.
    pub gas_particle_mass: f64,
}

impl EnvironmentSpec {
    pub const DEFAULT_ALPHA: f64 = 5.0;

    pub fn rubidium_85(alpha: f64) -> Self {
        Self {
            alpha,
            gas_particle_mass: RUBIDIUM_85_AMU * AMU,
        }
    }

    fn check(&self, out: &mut Vec<Violation>) {
        positive(out, "alpha", self.alpha);
        positive(out, "gas_particle_mass", self.gas_particle_mass);
    }
}

impl Default for EnvironmentSpec {
    fn default() -> Self {
        Self::rubidium_85(Self::DEFAULT_ALPHA)
    }
}

fn positive(out: &mut Vec<Violation>, field: &'static str, value: f64) {
    if !(value > 0.0 && value.is_finite()) {
        out.push(Violation::new(field, "must be positive"));
    }
}

/// A configuration whose every field passed [`validate_config`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedConfig {
    geometry: ExperimentGeometry,
    mirror: MirrorSpec,
    environment: EnvironmentSpec,
}

impl ValidatedConfig {
    pub fn geometry(&self) -> &ExperimentGeometry {
        &self.geometry
    }

    pub fn mirror(&self) -> &MirrorSpec {
        &self.mirror
    }

    pub fn environment(&self) -> &EnvironmentSpec {
        &self.environment
    }

    pub fn into_parts(self) -> (ExperimentGeometry, MirrorSpec, EnvironmentSpec) {
        (self.geometry, self.mirror, self.environment)
    }
}

/// Checks every invariant and reports all violations at once.
pub fn validate_config(
    geometry: ExperimentGeometry,
    mirror: MirrorSpec,
    environment: EnvironmentSpec,
) -> Result<ValidatedConfig> {
    let mut violations = Vec::new();
    geometry.check(&mut violations);
    mirror.check(&mut violations);
    environment.check(&mut violations);
    if violations.is_empty() {
        Ok(ValidatedConfig {
            geometry,
            mirror,
            environment,
        })
    } else {
        Err(Error::InvalidConfig(violations))
    }
}

/// The reference design: λ₁ = 1e-6 cm, Vanadium mirror, rubidium background.
pub fn default_config() -> (ExperimentGeometry, MirrorSpec, EnvironmentSpec) {
    (
        ExperimentGeometry::default(),
        MirrorSpec::default(),
        EnvironmentSpec::default(),
    )
}
