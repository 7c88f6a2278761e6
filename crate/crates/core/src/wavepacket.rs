//! Mirror centre-of-mass position densities P(z), free-spreading kinematics
//! and the measurement truncation (collapse) of a Gaussian density.

use std::f64::consts::{PI, SQRT_2};
use std::io::Read;
use std::path::Path;

use crate::constants::{HBAR, PLANCK_H};
use crate::error::{ensure_positive, Error, Result};

/// Velocity uncertainty imparted by a single-photon bifurcation, h/(λM).
pub fn spb_velocity(lambda: f64, mass: f64) -> Result<f64> {
    let lambda = ensure_positive("lambda", lambda)?;
    let mass = ensure_positive("mass", mass)?;
    Ok(PLANCK_H / (lambda * mass))
}

/// Characteristic initial spreading velocity Δv_i = h/(4π Δq_i M).
pub fn spreading_velocity(delta_q_i: f64, mass: f64) -> Result<f64> {
    let delta_q_i = ensure_positive("delta_q_i", delta_q_i)?;
    let mass = ensure_positive("mass", mass)?;
    Ok(PLANCK_H / (4.0 * PI * delta_q_i * mass))
}

/// Time for the linear spread Δv_i·t to reach λ₁.
pub fn spread_time(lambda1: f64, delta_v_i: f64) -> Result<f64> {
    let lambda1 = ensure_positive("lambda1", lambda1)?;
    let delta_v_i = ensure_positive("delta_v_i", delta_v_i)?;
    Ok(lambda1 / delta_v_i)
}

/// Exact width of a freely evolving minimum-uncertainty Gaussian,
/// σ(t) = Δq_i·√(1 + (ħt / 2MΔq_i²)²).
///
/// Its asymptotic slope ħ/(2MΔq_i) equals [`spreading_velocity`], so
/// σ(t_s) = √(λ₁² + Δq_i²) ≈ λ₁ under the linear model.
pub fn sigma_at_time(delta_q_i: f64, mass: f64, t: f64) -> Result<f64> {
    let delta_q_i = ensure_positive("delta_q_i", delta_q_i)?;
    let mass = ensure_positive("mass", mass)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::NonPositiveInput {
            name: "t",
            value: t,
        });
    }
    let growth = HBAR * t / (2.0 * mass * delta_q_i * delta_q_i);
    Ok(delta_q_i * growth.hypot(1.0))
}

/// Spring constant of the harmonic trap whose ground state has width Δq_i:
/// ½kΔq_i² = ½MΔv_i².
pub fn trap_spring_constant(delta_q_i: f64, mass: f64) -> Result<f64> {
    let dv = spreading_velocity(delta_q_i, mass)?;
    let ratio = dv / delta_q_i;
    Ok(mass * ratio * ratio)
}

/// Kinematic summary of a released mirror.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadingState {
    pub delta_q_i: f64,
    pub mass: f64,
    pub delta_v_i: f64,
    /// Bifurcation velocity scale at λ₁, for comparison with `delta_v_i`.
    pub delta_v_spb: f64,
    pub t_s: f64,
}

impl SpreadingState {
    pub fn new(lambda1: f64, delta_q_i: f64, mass: f64) -> Result<Self> {
        let delta_v_i = spreading_velocity(delta_q_i, mass)?;
        Ok(Self {
            delta_q_i,
            mass,
            delta_v_i,
            delta_v_spb: spb_velocity(lambda1, mass)?,
            t_s: spread_time(lambda1, delta_v_i)?,
        })
    }

    pub fn sigma_at(&self, t: f64) -> Result<f64> {
        sigma_at_time(self.delta_q_i, self.mass, t)
    }

    /// Width under the linear model Δv_i·t (never below Δq_i).
    pub fn linear_width_at(&self, t: f64) -> f64 {
        (self.delta_v_i * t).max(self.delta_q_i)
    }
}

/// Piecewise-linear density read from a table; zero outside the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedDensity {
    z: Vec<f64>,
    p: Vec<f64>,
    renormalization: f64,
}

impl TabulatedDensity {
    /// Builds the table, renormalizing `p` so its piecewise-linear integral is 1.
    pub fn new(z: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if z.len() != p.len() {
            return Err(Error::InvalidTable(format!(
                "{} grid points but {} values",
                z.len(),
                p.len()
            )));
        }
        if z.len() < 2 {
            return Err(Error::InvalidTable("need at least 2 points".into()));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTable("non-finite grid value".into()));
        }
        if let Some(w) = z.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTable(format!(
                "grid not strictly ascending at index {}",
                w + 1
            )));
        }
        if p.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidTable(
                "values must be finite and nonnegative".into(),
            ));
        }
        let mass = trapezoid(&z, &p);
        if mass <= 0.0 {
            return Err(Error::InvalidTable("density integrates to zero".into()));
        }
        let renormalization = 1.0 / mass;
        let p = p.into_iter().map(|v| v * renormalization).collect();
        Ok(Self {
            z,
            p,
            renormalization,
        })
    }

    /// Reads a two-column CSV (`z_cm,p_per_cm`) with a mandatory header row.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::InvalidTable(e.to_string()))?
            .clone();
        if headers.len() != 2 || headers.iter().any(|h| h.parse::<f64>().is_ok()) {
            return Err(Error::InvalidTable(
                "expected a header row with two column names".into(),
            ));
        }
        let (mut z, mut p) = (Vec::new(), Vec::new());
        for (i, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::InvalidTable(e.to_string()))?;
            let row = i + 2;
            if record.len() != 2 {
                return Err(Error::InvalidTable(format!(
                    "row {row}: expected 2 columns"
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::InvalidTable(format!("row {row}: bad number {s:?}")))
            };
            z.push(parse(&record[0])?);
            p.push(parse(&record[1])?);
        }
        Self::new(z, p)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_reader(std::io::BufReader::new(file))
    }

    pub fn grid(&self) -> &[f64] {
        &self.z
    }

    /// Normalized values on the grid.
    pub fn values(&self) -> &[f64] {
        &self.p
    }

    /// Factor the input values were multiplied by.
    pub fn renormalization(&self) -> f64 {
        self.renormalization
    }

    pub fn support(&self) -> (f64, f64) {
        (self.z[0], self.z[self.z.len() - 1])
    }

    pub fn value(&self, z: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(z >= lo && z <= hi) {
            return 0.0;
        }
        // first index with grid > z
        let j = self.z.partition_point(|g| *g <= z);
        if j == self.z.len() {
            return self.p[j - 1];
        }
        let (z0, z1) = (self.z[j - 1], self.z[j]);
        let (p0, p1) = (self.p[j - 1], self.p[j]);
        p0 + (p1 - p0) * (z - z0) / (z1 - z0)
    }
}

fn trapezoid(z: &[f64], p: &[f64]) -> f64 {
    z.windows(2)
        .zip(p.windows(2))
        .map(|(zw, pw)| 0.5 * (pw[0] + pw[1]) * (zw[1] - zw[0]))
        .sum()
}

/// Probability density of the mirror's centre-of-mass position z (cm).
#[derive(Debug, Clone, PartialEq)]
pub enum PositionDensity {
    /// Mirror fixed at `z0`.
    Delta {
        z0: f64,
    },
    /// Two sharp branches with probabilities `weight1` and `1 - weight1`.
    Bifurcated {
        z1: f64,
        z2: f64,
        weight1: f64,
    },
    /// Centred Gaussian with standard deviation `sigma`.
    Gaussian {
        sigma: f64,
    },
    /// Centred Gaussian restricted to `[z_lo, z_hi]`; `renorm` restores unit mass.
    TruncatedGaussian {
        sigma: f64,
        z_lo: f64,
        z_hi: f64,
        renorm: f64,
    },
    Tabulated(TabulatedDensity),
}

impl PositionDensity {
    pub fn delta(z0: f64) -> Self {
        PositionDensity::Delta { z0 }
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        Ok(PositionDensity::Gaussian {
            sigma: ensure_positive("sigma", sigma)?,
        })
    }

    pub fn bifurcated(z1: f64, z2: f64, weight1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight1) {
            return Err(Error::InvalidConfig(vec![crate::Violation::new(
                "weight1",
                "must lie in [0, 1]",
            )]));
        }
        Ok(PositionDensity::Bifurcated { z1, z2, weight1 })
    }

    /// Equal-weight branches `separation` apart, centred on z = 0.
    pub fn symmetric_bifurcation(separation: f64) -> Self {
        PositionDensity::Bifurcated {
            z1: -separation / 2.0,
            z2: separation / 2.0,
            weight1: 0.5,
        }
    }

    pub fn tabulated(z: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        TabulatedDensity::new(z, p).map(PositionDensity::Tabulated)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PositionDensity::Delta { .. } => "delta",
            PositionDensity::Bifurcated { .. } => "bifurcated",
            PositionDensity::Gaussian { .. } => "gaussian",
            PositionDensity::TruncatedGaussian { .. } => "truncated",
            PositionDensity::Tabulated(_) => "tabulated",
        }
    }

    /// True for the point-mass variants, which are handled analytically.
    pub fn is_point_mass(&self) -> bool {
        matches!(
            self,
            PositionDensity::Delta { .. } | PositionDensity::Bifurcated { .. }
        )
    }

    /// Point masses as `(position, weight)` pairs; `None` for continuous variants.
    pub fn point_masses(&self) -> Option<Vec<(f64, f64)>> {
        match *self {
            PositionDensity::Delta { z0 } => Some(vec![(z0, 1.0)]),
            PositionDensity::Bifurcated { z1, z2, weight1 } => {
                Some(vec![(z1, weight1), (z2, 1.0 - weight1)])
            }
            _ => None,
        }
    }

    /// Panel breakpoints covering the support of a continuous density.
    /// Gaussians are cut at ±`half_width_sigmas`·σ.
    pub fn support_breakpoints(&self, half_width_sigmas: f64) -> Option<Vec<f64>> {
        match self {
            PositionDensity::Gaussian { sigma } => {
                let w = half_width_sigmas * sigma;
                Some(vec![-w, w])
            }
            PositionDensity::TruncatedGaussian { z_lo, z_hi, .. } => Some(vec![*z_lo, *z_hi]),
            PositionDensity::Tabulated(t) => Some(t.grid().to_vec()),
            _ => None,
        }
    }

    /// P(z) in 1/cm.
    pub fn value(&self, z: f64) -> Result<f64> {
        match self {
            PositionDensity::Delta { .. } | PositionDensity::Bifurcated { .. } => {
                Err(Error::DeltaNotPointwise)
            }
            PositionDensity::Gaussian { sigma } => Ok(gaussian_pdf(z, *sigma)),
            PositionDensity::TruncatedGaussian {
                sigma,
                z_lo,
                z_hi,
                renorm,
            } => Ok(if z >= *z_lo && z <= *z_hi {
                renorm * gaussian_pdf(z, *sigma)
            } else {
                0.0
            }),
            PositionDensity::Tabulated(t) => Ok(t.value(z)),
        }
    }
}

/// Pointwise density value; point masses are rejected.
pub fn density_value(density: &PositionDensity, z: f64) -> Result<f64> {
    density.value(z)
}

fn gaussian_pdf(z: f64, sigma: f64) -> f64 {
    let u = z / sigma;
    (-0.5 * u * u).exp() / ((2.0 * PI).sqrt() * sigma)
}

/// Standard normal mass between `a` and `b` (in units of σ).
fn normal_mass(a: f64, b: f64) -> f64 {
    // erfc on the far tail keeps precision when both bounds share a sign
    if a >= 0.0 {
        0.5 * (libm::erfc(a / SQRT_2) - libm::erfc(b / SQRT_2))
    } else if b <= 0.0 {
        0.5 * (libm::erfc(-b / SQRT_2) - libm::erfc(-a / SQRT_2))
    } else {
        0.5 * (libm::erf(b / SQRT_2) - libm::erf(a / SQRT_2))
    }
}

/// Restricts a Gaussian (or an already truncated Gaussian) to `[z_lo, z_hi]`
/// and renormalizes it. Truncating twice intersects the intervals.
pub fn truncate(density: &PositionDensity, z_lo: f64, z_hi: f64) -> Result<PositionDensity> {
    if !(z_lo < z_hi) {
        return Err(Error::EmptyInterval { lo: z_lo, hi: z_hi });
    }
    let (sigma, lo, hi) = match *density {
        PositionDensity::Gaussian { sigma } => (sigma, z_lo, z_hi),
        PositionDensity::TruncatedGaussian {
            sigma,
            z_lo: a,
            z_hi: b,
            ..
        } => (sigma, z_lo.max(a), z_hi.min(b)),
        _ => {
            return Err(Error::UnsupportedDensity {
                operation: "truncate",
                kind: density.kind(),
            })
        }
    };
    if !(lo < hi) {
        return Err(Error::EmptyInterval { lo, hi });
    }
    let mass = normal_mass(lo / sigma, hi / sigma);
    if !(mass > 0.0) {
        return Err(Error::EmptyInterval { lo, hi });
    }
    Ok(PositionDensity::TruncatedGaussian {
        sigma,
        z_lo: lo,
        z_hi: hi,
        renorm: 1.0 / mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const LAMBDA1: f64 = 1e-6;
    const MASS: f64 = 1.1e-17;
    const DQ: f64 = 1.2e-8;

    #[test]
    fn spb_velocity_values() {
        // h/(λM) = 6.62607015e-27 / (1e-6 · 1.1e-17)
        assert_relative_eq!(
            spb_velocity(LAMBDA1, MASS).unwrap(),
            6.023700136e-4,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            spb_velocity(LAMBDA1, 2.0 * MASS).unwrap(),
            spb_velocity(LAMBDA1, MASS).unwrap() / 2.0
        );
        assert!(spb_velocity(0.0, MASS).is_err());
    }

    #[test]
    fn velocity_ratio_identity() {
        let ratio = spreading_velocity(DQ, MASS).unwrap() / spb_velocity(LAMBDA1, MASS).unwrap();
        assert_relative_eq!(ratio, LAMBDA1 / (4.0 * PI * DQ), max_relative = 1e-12);
    }

    #[test]
    fn spreading_velocity_values() {
        let dv = spreading_velocity(DQ, MASS).unwrap();
        // exact CODATA evaluation; the paper quotes 3.8e-3
        assert_relative_eq!(dv, 3.994590218e-3, max_relative = 1e-9);
        assert_relative_eq!(
            dv,
            spb_velocity(4.0 * PI * DQ, MASS).unwrap(),
            max_relative = 1e-15
        );
        assert_relative_eq!(spreading_velocity(2.0 * DQ, MASS).unwrap(), dv / 2.0);
        assert!(matches!(
            spreading_velocity(DQ, -1.0),
            Err(Error::NonPositiveInput { name: "mass", .. })
        ));
    }

    #[test]
    fn spread_time_values() {
        let dv = spreading_velocity(DQ, MASS).unwrap();
        let ts = spread_time(LAMBDA1, dv).unwrap();
        assert_relative_eq!(ts, 2.503385692e-4, max_relative = 1e-9);
        assert_relative_eq!(spread_time(2.0 * LAMBDA1, dv).unwrap(), 2.0 * ts);
        assert_relative_eq!(
            ts,
            4.0 * PI * DQ * MASS * LAMBDA1 / PLANCK_H,
            max_relative = 1e-12
        );
    }

    #[test]
    fn sigma_closed_form() {
        assert_eq!(sigma_at_time(DQ, MASS, 0.0).unwrap(), DQ);
        let t = 1e3;
        let slope = sigma_at_time(DQ, MASS, t).unwrap() / t;
        assert_relative_eq!(slope, HBAR / (2.0 * MASS * DQ), max_relative = 1e-12);
        assert_relative_eq!(
            slope,
            spreading_velocity(DQ, MASS).unwrap(),
            max_relative = 1e-12
        );
        assert!(sigma_at_time(DQ, MASS, -1.0).is_err());
    }

    #[test]
    fn sigma_at_spread_time_is_lambda1() {
        let s = SpreadingState::new(LAMBDA1, DQ, MASS).unwrap();
        let sigma = s.sigma_at(s.t_s).unwrap();
        // √(λ₁² + Δq_i²): the exact law and the linear model agree to (Δq_i/λ₁)²/2
        assert_relative_eq!(sigma, LAMBDA1.hypot(DQ), max_relative = 1e-12);
        assert!((sigma / LAMBDA1 - 1.0).abs() < 1e-4);
        assert_relative_eq!(s.linear_width_at(s.t_s), LAMBDA1, max_relative = 1e-15);
    }

    #[test]
    fn spring_constant_values() {
        let k = trap_spring_constant(DQ, MASS).unwrap();
        let dv = spreading_velocity(DQ, MASS).unwrap();
        assert_relative_eq!(
            0.5 * k * DQ * DQ,
            0.5 * MASS * dv * dv,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            trap_spring_constant(2.0 * DQ, MASS).unwrap(),
            k / 16.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            trap_spring_constant(DQ, 2.0 * MASS).unwrap(),
            k / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn gaussian_values() {
        let g = PositionDensity::gaussian(LAMBDA1).unwrap();
        let p0 = density_value(&g, 0.0).unwrap();
        assert_relative_eq!(
            p0,
            1.0 / ((2.0 * PI).sqrt() * LAMBDA1),
            max_relative = 1e-14
        );
        for z in [LAMBDA1, -LAMBDA1] {
            assert_relative_eq!(
                density_value(&g, z).unwrap(),
                p0 * (-0.5_f64).exp(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn point_masses_are_not_pointwise() {
        assert_eq!(
            density_value(&PositionDensity::delta(0.0), 0.0),
            Err(Error::DeltaNotPointwise)
        );
        assert_eq!(
            PositionDensity::symmetric_bifurcation(LAMBDA1 / 4.0).value(0.0),
            Err(Error::DeltaNotPointwise)
        );
    }

    #[test]
    fn truncation_renorm_matches_numeric_integral() {
        let g = PositionDensity::gaussian(LAMBDA1).unwrap();
        let t = truncate(&g, -LAMBDA1 / 4.0, LAMBDA1 / 4.0).unwrap();
        // midpoint-rule oracle for the Gaussian mass on ±λ₁/4
        let n = 200_000;
        let h = 0.5 * LAMBDA1 / n as f64;
        let mass: f64 = (0..n)
            .map(|i| {
                let z = -LAMBDA1 / 4.0 + (i as f64 + 0.5) * h;
                (-0.5 * (z / LAMBDA1).powi(2)).exp() / ((2.0 * PI).sqrt() * LAMBDA1) * h
            })
            .sum();
        let PositionDensity::TruncatedGaussian { renorm, .. } = t else {
            panic!()
        };
        assert_relative_eq!(renorm, 1.0 / mass, max_relative = 1e-9);
        assert_relative_eq!(1.0 / renorm, 0.197_412_651_366, max_relative = 1e-10);
        assert_eq!(density_value(&t, LAMBDA1 / 2.0).unwrap(), 0.0);
    }

    #[test]
    fn wide_truncation_is_identity() {
        let g = PositionDensity::gaussian(2.0).unwrap();
        let t = truncate(&g, -16.0, 16.0).unwrap();
        let PositionDensity::TruncatedGaussian { renorm, .. } = t else {
            panic!()
        };
        assert!((renorm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn truncation_is_idempotent() {
        let g = PositionDensity::gaussian(LAMBDA1).unwrap();
        let once = truncate(&g, -0.25e-6, 0.3e-6).unwrap();
        let twice = truncate(&once, -0.25e-6, 0.3e-6).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn truncation_errors() {
        let g = PositionDensity::gaussian(LAMBDA1).unwrap();
        assert!(matches!(
            truncate(&g, 1.0, 1.0),
            Err(Error::EmptyInterval { .. })
        ));
        let t = truncate(&g, 0.0, 1e-6).unwrap();
        assert!(matches!(
            truncate(&t, -2e-6, -1e-6),
            Err(Error::EmptyInterval { .. })
        ));
        assert!(matches!(
            truncate(&PositionDensity::delta(0.0), -1.0, 1.0),
            Err(Error::UnsupportedDensity { .. })
        ));
    }

    #[test]
    fn tabulated_renormalizes_and_interpolates() {
        let t = TabulatedDensity::new(vec![0.0, 1.0, 2.0], vec![0.0, 4.0, 0.0]).unwrap();
        assert_relative_eq!(t.renormalization(), 0.25);
        assert_relative_eq!(t.value(0.5), 0.5);
        assert_relative_eq!(t.value(1.0), 1.0);
        assert_eq!(t.value(2.0), 0.0);
        assert_eq!(t.value(-0.1), 0.0);
        assert_eq!(t.value(2.1), 0.0);
    }

    #[test]
    fn tabulated_rejects_bad_tables() {
        assert!(TabulatedDensity::new(vec![0.0], vec![1.0]).is_err());
        assert!(TabulatedDensity::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(TabulatedDensity::new(vec![0.0, 1.0], vec![1.0, -1.0]).is_err());
        assert!(TabulatedDensity::new(vec![0.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(TabulatedDensity::new(vec![0.0, 1.0], vec![1.0]).is_err());
    }

    #[test]
    fn tabulated_csv_ingestion() {
        let csv = "z_cm,p_per_cm\n-1e-6, 0\n0, 2\n1e-6, 0\n";
        let t = TabulatedDensity::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(t.grid(), &[-1e-6, 0.0, 1e-6]);
        assert_relative_eq!(t.value(0.0), 1e6, max_relative = 1e-12);

        let headerless = "-1e-6,0\n0,2\n1e-6,0\n";
        assert!(TabulatedDensity::from_csv_reader(headerless.as_bytes()).is_err());
        let bad = "z,p\n0,x\n1,1\n";
        assert!(matches!(
            TabulatedDensity::from_csv_reader(bad.as_bytes()),
            Err(Error::InvalidTable(_))
        ));
    }
}
