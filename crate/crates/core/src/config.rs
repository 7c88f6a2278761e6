//! Run configuration files.
//!
//! ```text
//! # comments start with '#'
//! [geometry]
//! lambda1_cm = 2e-6
//! [environment]
//! alpha = 5
//! ```
//!
//! Every key is optional. Geometry lengths that are not set are derived
//! from λ₁, so setting only `lambda1_cm` rescales the whole apparatus.
//! Keys may also appear before the first section header.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result, Violation};
use crate::format::fmt_sci;
use crate::interference::DEFAULT_POINTS;
use crate::model::{
    validate_config, EnvironmentSpec, ExperimentGeometry, MirrorSpec, DEFAULT_LAMBDA1,
    LAMBDA2_OVER_LAMBDA1, MIRROR_DIAMETER_OVER_LAMBDA1, SLIT_MIRROR_DISTANCE_OVER_LAMBDA1,
    SLIT_SEPARATION_OVER_LAMBDA1,
};
use crate::quadrature::QuadratureSettings;
use crate::trap::{DEFAULT_ETA, DEFAULT_GRADIENT_FRACTION, DEFAULT_NU};

const SECTIONS: [&str; 6] = [
    "geometry",
    "mirror",
    "environment",
    "quadrature",
    "output",
    "trap",
];

const KEYS: [(&str, &str); 28] = [
    ("geometry", "lambda1_cm"),
    ("geometry", "slit_separation_cm"),
    ("geometry", "slit_mirror_distance_cm"),
    ("geometry", "mirror_diameter_cm"),
    ("geometry", "lambda2_cm"),
    ("geometry", "probe_angle_rad"),
    ("geometry", "probe_aperture_cm"),
    ("mirror", "mass_g"),
    ("mirror", "delta_q_i_cm"),
    ("mirror", "density_g_cm3"),
    ("mirror", "sound_speed_cm_s"),
    ("mirror", "atomic_weight_amu"),
    ("mirror", "lattice_spacing_cm"),
    ("mirror", "emissivity"),
    ("environment", "alpha"),
    ("environment", "gas_particle_mass_g"),
    ("quadrature", "initial_intervals"),
    ("quadrature", "max_intervals"),
    ("quadrature", "rel_tolerance"),
    ("quadrature", "support_half_width_sigmas"),
    ("output", "points"),
    ("output", "k_scale"),
    ("output", "inverse_path_amplitude"),
    ("output", "release_time_s"),
    ("trap", "nu"),
    ("trap", "eta"),
    ("trap", "gradient_fraction"),
    ("trap", "drive_omega_rad_s"),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputSettings {
    /// Screen grid size for patterns.
    pub points: usize,
    pub k_scale: f64,
    pub inverse_path_amplitude: bool,
    /// Release duration checked by the trap command, s.
    pub release_time: f64,
}

impl Default for OutputSettings {
    fn default() -> Self {
        Self {
            points: DEFAULT_POINTS,
            k_scale: 1.0,
            inverse_path_amplitude: false,
            release_time: 1e-7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapSettings {
    pub nu: f64,
    pub eta: f64,
    pub gradient_fraction: f64,
    /// Field drive frequency, rad/s.
    pub drive_omega: f64,
}

impl Default for TrapSettings {
    fn default() -> Self {
        Self {
            nu: DEFAULT_NU,
            eta: DEFAULT_ETA,
            gradient_fraction: DEFAULT_GRADIENT_FRACTION,
            drive_omega: 1.0,
        }
    }
}

/// A parsed and validated configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub geometry: ExperimentGeometry,
    pub mirror: MirrorSpec,
    pub environment: EnvironmentSpec,
    pub quadrature: QuadratureSettings,
    pub output: OutputSettings,
    pub trap: TrapSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            geometry: ExperimentGeometry::default(),
            mirror: MirrorSpec::default(),
            environment: EnvironmentSpec::default(),
            quadrature: QuadratureSettings::default(),
            output: OutputSettings::default(),
            trap: TrapSettings::default(),
        }
    }
}

struct Entry {
    key: &'static str,
    value: String,
    line: usize,
}

struct Raw(Vec<Entry>);

impl Raw {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.0.iter().find(|e| e.key == key)
    }

    fn parse_with<T>(
        &self,
        key: &str,
        parse: impl Fn(&str) -> Option<T>,
        what: &str,
    ) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(e) => parse(&e.value).map(Some).ok_or_else(|| Error::Parse {
                line: e.line,
                reason: format!("{key}: expected {what}, got {:?}", e.value),
            }),
        }
    }

    fn real(&self, key: &str) -> Result<Option<f64>> {
        self.parse_with(key, |s| s.parse::<f64>().ok(), "a real number")
    }

    fn count(&self, key: &str) -> Result<Option<usize>> {
        self.parse_with(key, |s| s.parse::<usize>().ok(), "a non-negative integer")
    }

    fn flag(&self, key: &str) -> Result<Option<bool>> {
        self.parse_with(key, |s| s.parse::<bool>().ok(), "true or false")
    }
}

fn lex(text: &str) -> Result<Raw> {
    let mut section: Option<&'static str> = None;
    let mut entries: Vec<Entry> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parse_err = |reason: String| Error::Parse { line, reason };
        if let Some(name) = content.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| parse_err(format!("malformed section header {content:?}")))?
                .trim();
            section = Some(
                SECTIONS
                    .iter()
                    .copied()
                    .find(|s| *s == name)
                    .ok_or_else(|| parse_err(format!("unknown section [{name}]")))?,
            );
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(format!("expected `key = value`, got {content:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let &(home, key) = KEYS
            .iter()
            .find(|(_, k)| *k == key)
            .ok_or_else(|| parse_err(format!("unknown key {key:?}")))?;
        if let Some(current) = section {
            if current != home {
                return Err(parse_err(format!(
                    "key {key:?} belongs in [{home}], not [{current}]"
                )));
            }
        }
        if let Some(prev) = entries.iter().find(|e| e.key == key) {
            return Err(parse_err(format!(
                "duplicate key {key:?} (first set on line {})",
                prev.line
            )));
        }
        if value.is_empty() {
            return Err(parse_err(format!("missing value for {key:?}")));
        }
        entries.push(Entry {
            key,
            value: value.to_string(),
            line,
        });
    }
    Ok(Raw(entries))
}

impl RunConfig {
    /// Parses and validates configuration text.
    pub fn parse(text: &str) -> Result<Self> {
        let raw = lex(text)?;

        let lambda1 = raw.real("lambda1_cm")?.unwrap_or(DEFAULT_LAMBDA1);
        let lambda2 = raw
            .real("lambda2_cm")?
            .unwrap_or(LAMBDA2_OVER_LAMBDA1 * lambda1);
        let probe_angle = raw.real("probe_angle_rad")?.unwrap_or(0.0);
        let geometry = ExperimentGeometry {
            lambda1,
            slit_separation: raw
                .real("slit_separation_cm")?
                .unwrap_or(SLIT_SEPARATION_OVER_LAMBDA1 * lambda1),
            slit_mirror_distance: raw
                .real("slit_mirror_distance_cm")?
                .unwrap_or(SLIT_MIRROR_DISTANCE_OVER_LAMBDA1 * lambda1),
            mirror_diameter: raw
                .real("mirror_diameter_cm")?
                .unwrap_or(MIRROR_DIAMETER_OVER_LAMBDA1 * lambda1),
            lambda2,
            probe_angle,
            probe_aperture: raw
                .real("probe_aperture_cm")?
                .unwrap_or(4.0 * lambda2 * probe_angle.min(FRAC_PI_2).cos()),
        };

        let v = MirrorSpec::vanadium();
        let lattice_spacing = raw.real("lattice_spacing_cm")?.unwrap_or(v.lattice_spacing);
        let mirror = MirrorSpec {
            mass: raw.real("mass_g")?.unwrap_or(v.mass),
            delta_q_i: raw.real("delta_q_i_cm")?.unwrap_or(lattice_spacing / 2.0),
            density: raw.real("density_g_cm3")?.unwrap_or(v.density),
            sound_speed: raw.real("sound_speed_cm_s")?.unwrap_or(v.sound_speed),
            atomic_weight: raw.real("atomic_weight_amu")?.unwrap_or(v.atomic_weight),
            lattice_spacing,
            emissivity: raw.real("emissivity")?.unwrap_or(v.emissivity),
        };

        let e = EnvironmentSpec::default();
        let environment = EnvironmentSpec {
            alpha: raw.real("alpha")?.unwrap_or(e.alpha),
            gas_particle_mass: raw
                .real("gas_particle_mass_g")?
                .unwrap_or(e.gas_particle_mass),
        };

        let q = QuadratureSettings::default();
        let quadrature = QuadratureSettings {
            initial_intervals: raw
                .count("initial_intervals")?
                .unwrap_or(q.initial_intervals),
            max_intervals: raw.count("max_intervals")?.unwrap_or(q.max_intervals),
            rel_tolerance: raw.real("rel_tolerance")?.unwrap_or(q.rel_tolerance),
            support_half_width_sigmas: raw
                .real("support_half_width_sigmas")?
                .unwrap_or(q.support_half_width_sigmas),
        };

        let o = OutputSettings::default();
        let output = OutputSettings {
            points: raw.count("points")?.unwrap_or(o.points),
            k_scale: raw.real("k_scale")?.unwrap_or(o.k_scale),
            inverse_path_amplitude: raw
                .flag("inverse_path_amplitude")?
                .unwrap_or(o.inverse_path_amplitude),
            release_time: raw.real("release_time_s")?.unwrap_or(o.release_time),
        };

        let t = TrapSettings::default();
        let trap = TrapSettings {
            nu: raw.real("nu")?.unwrap_or(t.nu),
            eta: raw.real("eta")?.unwrap_or(t.eta),
            gradient_fraction: raw
                .real("gradient_fraction")?
                .unwrap_or(t.gradient_fraction),
            drive_omega: raw.real("drive_omega_rad_s")?.unwrap_or(t.drive_omega),
        };

        let config = RunConfig {
            geometry,
            mirror,
            environment,
            quadrature,
            output,
            trap,
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks every section and reports all violations together.
    pub fn validate(&self) -> Result<()> {
        let mut violations = match validate_config(self.geometry, self.mirror, self.environment) {
            Ok(_) => Vec::new(),
            Err(Error::InvalidConfig(v)) => v,
            Err(e) => return Err(e),
        };
        match self.quadrature.validate() {
            Ok(()) => {}
            Err(Error::InvalidConfig(v)) => violations.extend(v),
            Err(e) => return Err(e),
        }
        if self.output.points < 3 {
            violations.push(Violation::new("points", "must be ≥ 3"));
        }
        let finite = |v: f64| v.is_finite();
        if !finite(self.output.k_scale) {
            violations.push(Violation::new("k_scale", "must be finite"));
        }
        if !(self.output.release_time > 0.0 && finite(self.output.release_time)) {
            violations.push(Violation::new("release_time_s", "must be positive"));
        }
        if !(self.trap.nu > 0.0 && finite(self.trap.nu)) {
            violations.push(Violation::new("nu", "must be positive"));
        }
        if !(self.trap.eta > 0.0 && self.trap.eta < 1.0) {
            violations.push(Violation::new("eta", "must lie in (0, 1)"));
        }
        if !(self.trap.gradient_fraction > 0.0 && self.trap.gradient_fraction <= 1.0) {
            violations.push(Violation::new("gradient_fraction", "must lie in (0, 1]"));
        }
        if !(self.trap.drive_omega > 0.0 && finite(self.trap.drive_omega)) {
            violations.push(Violation::new("drive_omega_rad_s", "must be positive"));
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(violations))
        }
    }

    /// Every setting written out explicitly; [`RunConfig::parse`] reads it
    /// back to an identical configuration.
    pub fn dump(&self) -> String {
        let g = &self.geometry;
        let m = &self.mirror;
        let e = &self.environment;
        let q = &self.quadrature;
        let o = &self.output;
        let t = &self.trap;
        let mut out = String::new();
        let mut section = |name: &str, items: &[(&str, String)]| {
            let _ = writeln!(out, "[{name}]");
            for (k, v) in items {
                let _ = writeln!(out, "{k} = {v}");
            }
            out.push('\n');
        };
        section(
            "geometry",
            &[
                ("lambda1_cm", fmt_sci(g.lambda1)),
                ("slit_separation_cm", fmt_sci(g.slit_separation)),
                ("slit_mirror_distance_cm", fmt_sci(g.slit_mirror_distance)),
                ("mirror_diameter_cm", fmt_sci(g.mirror_diameter)),
                ("lambda2_cm", fmt_sci(g.lambda2)),
                ("probe_angle_rad", fmt_sci(g.probe_angle)),
                ("probe_aperture_cm", fmt_sci(g.probe_aperture)),
            ],
        );
        section(
            "mirror",
            &[
                ("mass_g", fmt_sci(m.mass)),
                ("delta_q_i_cm", fmt_sci(m.delta_q_i)),
                ("density_g_cm3", fmt_sci(m.density)),
                ("sound_speed_cm_s", fmt_sci(m.sound_speed)),
                ("atomic_weight_amu", fmt_sci(m.atomic_weight)),
                ("lattice_spacing_cm", fmt_sci(m.lattice_spacing)),
                ("emissivity", fmt_sci(m.emissivity)),
            ],
        );
        section(
            "environment",
            &[
                ("alpha", fmt_sci(e.alpha)),
                ("gas_particle_mass_g", fmt_sci(e.gas_particle_mass)),
            ],
        );
        section(
            "quadrature",
            &[
                ("initial_intervals", q.initial_intervals.to_string()),
                ("max_intervals", q.max_intervals.to_string()),
                ("rel_tolerance", fmt_sci(q.rel_tolerance)),
                (
                    "support_half_width_sigmas",
                    fmt_sci(q.support_half_width_sigmas),
                ),
            ],
        );
        section(
            "output",
            &[
                ("points", o.points.to_string()),
                ("k_scale", fmt_sci(o.k_scale)),
                (
                    "inverse_path_amplitude",
                    o.inverse_path_amplitude.to_string(),
                ),
                ("release_time_s", fmt_sci(o.release_time)),
            ],
        );
        section(
            "trap",
            &[
                ("nu", fmt_sci(t.nu)),
                ("eta", fmt_sci(t.eta)),
                ("gradient_fraction", fmt_sci(t.gradient_fraction)),
                ("drive_omega_rad_s", fmt_sci(t.drive_omega)),
            ],
        );
        out.truncate(out.trim_end().len());
        out.push('\n');
        out
    }
}

/// Reads and validates a configuration file.
pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    RunConfig::parse(&text)
}
