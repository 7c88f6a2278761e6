//! Reflected double-slit fields averaged over the mirror position density.
//!
//! Light from slit A reaches a screen point a distance D from A after one
//! bounce off the mirror, light from slit B after a bounce at lateral offset
//! S − D. Each field is the density-weighted average
//!
//! ```text
//! E(lateral) = K ∫ P(z) cos[(2π/λ₁)·2√((z + L)² + lateral²/4)] dz
//! ```
//!
//! and the screen intensity is I = ½(E_A + E_B)². Point-mass densities are
//! evaluated in closed form; continuous ones by composite Simpson quadrature
//! sampled at ≥ 200 points per λ₁ (the integrand oscillates with period
//! ≈ λ₁/2 in z).

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{ensure_positive, Error, Result};
use crate::format::fmt_sci;
use crate::geometry::phase_path;
use crate::model::ExperimentGeometry;
use crate::quadrature::{integrate_panels, QuadratureSettings};
use crate::wavepacket::PositionDensity;

/// Lower edge of the middle third of the screen, as a fraction of S.
pub const CENTRAL_WINDOW: (f64, f64) = (1.0 / 3.0, 2.0 / 3.0);
/// Width of each outer window, as a fraction of S.
pub const EDGE_WINDOW: f64 = 1.0 / 8.0;
/// Default number of screen points.
pub const DEFAULT_POINTS: usize = 1001;
/// Ratios closer than this are reported as a tie.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slit {
    A,
    B,
}

/// Evaluates reflected fields and screen patterns for one apparatus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interferometer {
    pub geometry: ExperimentGeometry,
    pub quadrature: QuadratureSettings,
    /// Overall field scale K (arbitrary units).
    pub scale_k: f64,
    /// Weight each ray by 2L/path. Off by default (first-order treatment).
    pub inverse_path_amplitude: bool,
}

impl Interferometer {
    pub fn new(geometry: ExperimentGeometry) -> Self {
        Self {
            geometry,
            quadrature: QuadratureSettings::default(),
            scale_k: 1.0,
            inverse_path_amplitude: false,
        }
    }

    pub fn with_quadrature(self, quadrature: QuadratureSettings) -> Self {
        Self { quadrature, ..self }
    }

    pub fn with_scale(self, scale_k: f64) -> Self {
        Self { scale_k, ..self }
    }

    /// Field reflected off a mirror fixed at `z`, without the K factor.
    #[inline]
    fn ray(&self, z: f64, lateral: f64) -> f64 {
        let g = &self.geometry;
        let path = phase_path(z, lateral, g.slit_mirror_distance);
        let phase = (2.0 * PI / g.lambda1) * path;
        if self.inverse_path_amplitude {
            2.0 * g.slit_mirror_distance / path * phase.cos()
        } else {
            phase.cos()
        }
    }

    fn lateral(&self, d: f64, slit: Slit) -> f64 {
        match slit {
            Slit::A => d,
            Slit::B => self.geometry.slit_separation - d,
        }
    }

    /// Field at screen position `d` (distance from slit A) due to `slit`.
    pub fn field_from_slit(&self, density: &PositionDensity, d: f64, slit: Slit) -> Result<f64> {
        let s = self.geometry.slit_separation;
        if !(d >= 0.0 && d <= s) {
            return Err(Error::GeometryViolation(format!(
                "screen position {d:e} cm outside [0, S = {s:e}]"
            )));
        }
        Ok(self.scale_k * self.unit_field(density, self.lateral(d, slit))?)
    }

    fn unit_field(&self, density: &PositionDensity, lateral: f64) -> Result<f64> {
        if let Some(masses) = density.point_masses() {
            return Ok(masses.iter().map(|&(z, w)| w * self.ray(z, lateral)).sum());
        }
        let breakpoints = density
            .support_breakpoints(self.quadrature.support_half_width_sigmas)
            .expect("continuous density has a support");
        let min_step = self.geometry.lambda1 / QuadratureSettings::INTERVALS_PER_WAVELENGTH;
        let integrand = |z: f64| {
            // value() only fails for point masses, handled above
            density.value(z).unwrap_or(0.0) * self.ray(z, lateral)
        };
        Ok(integrate_panels(&breakpoints, integrand, min_step, &self.quadrature)?.value)
    }

    /// Pattern on `n_points` uniformly spaced screen positions over `[0, S]`.
    ///
    /// Grid points are evaluated in parallel; each point's quadrature is
    /// sequential, so the result does not depend on the thread count.
    pub fn pattern(&self, density: &PositionDensity, n_points: usize) -> Result<Pattern> {
        if n_points < 3 {
            return Err(Error::InvalidConfig(vec![crate::Violation::new(
                "points",
                "must be ≥ 3",
            )]));
        }
        self.quadrature.validate()?;
        ensure_positive("lambda1", self.geometry.lambda1)?;
        let s = self.geometry.slit_separation;
        let last = (n_points - 1) as f64;
        let d_grid: Vec<f64> = (0..n_points)
            .map(|j| {
                if j == n_points - 1 {
                    s
                } else {
                    s * j as f64 / last
                }
            })
            .collect();
        let fields: Vec<(f64, f64)> = d_grid
            .par_iter()
            .map(|&d| {
                Ok((
                    self.field_from_slit(density, d, Slit::A)?,
                    self.field_from_slit(density, d, Slit::B)?,
                ))
            })
            .collect::<Result<_>>()?;
        let (e_a, e_b): (Vec<f64>, Vec<f64>) = fields.into_iter().unzip();
        let intensity = e_a
            .iter()
            .zip(&e_b)
            .map(|(a, b)| intensity_of(*a, *b))
            .collect();
        Ok(Pattern {
            lambda1: self.geometry.lambda1,
            d_grid,
            e_a,
            e_b,
            intensity,
            scale_k: self.scale_k,
        })
    }

    /// Computes both patterns on the same grid and ranks their edge nodes.
    pub fn compare_densities(
        &self,
        first: &PositionDensity,
        second: &PositionDensity,
        n_points: usize,
    ) -> Result<ComparisonReport> {
        let metrics_first = node_metrics(&self.pattern(first, n_points)?)?;
        let metrics_second = node_metrics(&self.pattern(second, n_points)?)?;
        let diff = metrics_first.node_depth_ratio - metrics_second.node_depth_ratio;
        let sharper = if diff.abs() <= TIE_TOLERANCE {
            Sharper::Equal
        } else if diff < 0.0 {
            Sharper::First
        } else {
            Sharper::Second
        };
        Ok(ComparisonReport {
            metrics_first,
            metrics_second,
            sharper,
        })
    }
}

/// Screen intensity from the two slit fields.
#[inline]
pub fn intensity_of(e_a: f64, e_b: f64) -> f64 {
    let sum = e_a + e_b;
    0.5 * sum * sum
}

/// Sampled screen pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    pub lambda1: f64,
    pub d_grid: Vec<f64>,
    pub e_a: Vec<f64>,
    pub e_b: Vec<f64>,
    pub intensity: Vec<f64>,
    pub scale_k: f64,
}

impl Pattern {
    pub const CSV_HEADER: &'static str = "D_over_lambda1,E_A,E_B,I";

    pub fn len(&self) -> usize {
        self.d_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d_grid.is_empty()
    }

    pub fn slit_separation(&self) -> f64 {
        self.d_grid[self.d_grid.len() - 1]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.len() * 80);
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for j in 0..self.len() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt_sci(self.d_grid[j] / self.lambda1),
                fmt_sci(self.e_a[j]),
                fmt_sci(self.e_b[j]),
                fmt_sci(self.intensity[j])
            );
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

/// Node sharpness summary of a pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeMetrics {
    /// Local intensity minima (cm from slit A).
    pub node_positions: Vec<f64>,
    /// Maximum intensity over the middle third of the screen.
    pub central_peak: f64,
    /// Minimum intensity over the outer eighths of the screen.
    pub edge_min: f64,
    /// `edge_min / central_peak`; smaller means sharper edge nodes.
    pub node_depth_ratio: f64,
}

/// Locates nodes and measures their depth relative to the central peak.
///
/// A grid point is a node when it is strictly below its left neighbour and
/// not above its right one; the two end points are compared with their
/// single neighbour.
pub fn node_metrics(pattern: &Pattern) -> Result<NodeMetrics> {
    let i = &pattern.intensity;
    let n = i.len();
    if n < 3 || pattern.d_grid.len() != n {
        return Err(Error::DegeneratePattern("need at least 3 points"));
    }
    let (min, max) = i
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
    if min == max {
        return Err(Error::DegeneratePattern("intensity is constant"));
    }

    let mut node_positions = Vec::new();
    if i[0] < i[1] {
        node_positions.push(pattern.d_grid[0]);
    }
    for j in 1..n - 1 {
        if i[j] < i[j - 1] && i[j] <= i[j + 1] {
            node_positions.push(pattern.d_grid[j]);
        }
    }
    if i[n - 1] < i[n - 2] {
        node_positions.push(pattern.d_grid[n - 1]);
    }

    let s = pattern.slit_separation();
    let (c_lo, c_hi) = (CENTRAL_WINDOW.0 * s, CENTRAL_WINDOW.1 * s);
    let (e_lo, e_hi) = (EDGE_WINDOW * s, (1.0 - EDGE_WINDOW) * s);
    let mut central_peak = f64::NEG_INFINITY;
    let mut edge_min = f64::INFINITY;
    for (d, v) in pattern.d_grid.iter().zip(i) {
        if *d >= c_lo && *d <= c_hi {
            central_peak = central_peak.max(*v);
        }
        if *d <= e_lo || *d >= e_hi {
            edge_min = edge_min.min(*v);
        }
    }
    if !(central_peak > 0.0) {
        return Err(Error::DegeneratePattern(
            "no intensity in the central window",
        ));
    }
    Ok(NodeMetrics {
        node_positions,
        central_peak,
        edge_min,
        node_depth_ratio: edge_min / central_peak,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sharper {
    First,
    Second,
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub metrics_first: NodeMetrics,
    pub metrics_second: NodeMetrics,
    pub sharper: Sharper,
}

/// Round-trip phase difference between reflections off two mirror
/// positions, at the centre of the screen: 4π|z₂ − z₁|/λ₁.
pub fn bifurcated_center_phase(z1: f64, z2: f64, lambda1: f64) -> Result<f64> {
    let lambda1 = ensure_positive("lambda1", lambda1)?;
    Ok(4.0 * PI * ((z2 - z1).abs() / lambda1))
}
