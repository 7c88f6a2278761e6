//! One-parameter sweeps of the feasibility envelope.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::feasibility::{feasibility_report, FeasibilityReport};
use crate::format::fmt_sci;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    /// Rescales the whole geometry.
    Lambda1,
    MassM,
    DeltaQI,
    Alpha,
}

impl SweepParam {
    pub const ALL: [SweepParam; 4] = [
        SweepParam::Lambda1,
        SweepParam::MassM,
        SweepParam::DeltaQI,
        SweepParam::Alpha,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Lambda1 => "lambda1",
            SweepParam::MassM => "mass_M",
            SweepParam::DeltaQI => "delta_q_i",
            SweepParam::Alpha => "alpha",
        }
    }

    /// Copy of `config` with this parameter set to `value`.
    pub fn apply(&self, config: &RunConfig, value: f64) -> RunConfig {
        let mut c = *config;
        match self {
            SweepParam::Lambda1 => c.geometry = c.geometry.scaled(value / c.geometry.lambda1),
            SweepParam::MassM => c.mirror.mass = value,
            SweepParam::DeltaQI => c.mirror.delta_q_i = value,
            SweepParam::Alpha => c.environment.alpha = value,
        }
        c
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::InvalidSweep(format!(
                    "unknown parameter {s:?} (expected lambda1, mass_M, delta_q_i or alpha)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// `name=lo:hi:linear|log:steps`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub scale: Scale,
    pub steps: usize,
}

impl SweepSpec {
    pub fn new(param: SweepParam, lo: f64, hi: f64, scale: Scale, steps: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidSweep(format!(
                "need lo < hi, got {lo:e}..{hi:e}"
            )));
        }
        if steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "need at least 2 steps, got {steps}"
            )));
        }
        if scale == Scale::Log && lo <= 0.0 {
            return Err(Error::InvalidSweep(format!(
                "log sweep needs lo > 0, got {lo:e}"
            )));
        }
        Ok(Self {
            param,
            lo,
            hi,
            scale,
            steps,
        })
    }

    /// Grid values; the first and last are exactly `lo` and `hi`.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == 0 {
                    return self.lo;
                }
                if i == last {
                    return self.hi;
                }
                let t = i as f64 / last as f64;
                match self.scale {
                    Scale::Linear => self.lo + t * (self.hi - self.lo),
                    Scale::Log => (self.lo.ln() + t * (self.hi.ln() - self.lo.ln())).exp(),
                }
            })
            .collect()
    }
}

impl FromStr for SweepSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad =
            || Error::InvalidSweep(format!("expected name=lo:hi:linear|log:steps, got {s:?}"));
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').map(str::trim).collect();
        let [lo, hi, scale, steps] = parts[..] else {
            return Err(bad());
        };
        let real = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::InvalidSweep(format!("not a number: {v:?}")))
        };
        let scale = match scale {
            "linear" => Scale::Linear,
            "log" => Scale::Log,
            other => return Err(Error::InvalidSweep(format!("unknown scale {other:?}"))),
        };
        let steps = steps
            .parse::<usize>()
            .map_err(|_| Error::InvalidSweep(format!("steps must be an integer, got {steps:?}")))?;
        Self::new(name.trim().parse()?, real(lo)?, real(hi)?, scale, steps)
    }
}

/// Evaluates the report at every grid value, in grid order.
pub fn run_sweep(config: &RunConfig, spec: &SweepSpec) -> Result<Vec<(f64, FeasibilityReport)>> {
    spec.grid()
        .into_par_iter()
        .map(|value| {
            let c = spec.param.apply(config, value);
            c.validate()?;
            Ok((
                value,
                feasibility_report(&c.mirror, &c.geometry, &c.environment)?,
            ))
        })
        .collect()
}

pub fn sweep_csv(spec: &SweepSpec, rows: &[(f64, FeasibilityReport)]) -> String {
    let mut out = format!(
        "swept_{},{}\n",
        spec.param.name(),
        FeasibilityReport::CSV_HEADER
    );
    for (value, report) in rows {
        let _ = writeln!(out, "{},{}", fmt_sci(*value), report.csv_row());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec() {
        let s: SweepSpec = "lambda1=1e-7:1e-5:log:20".parse().unwrap();
        assert_eq!(s.param, SweepParam::Lambda1);
        assert_eq!((s.lo, s.hi, s.scale, s.steps), (1e-7, 1e-5, Scale::Log, 20));
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in [
            "lambda1=1e-5:1e-7:log:20",
            "alpha=1:2:linear:1",
            "alpha=0:2:log:5",
            "alpha=-1:2:log:5",
            "mass=1:2:linear:3",
            "alpha=1:2:cubic:3",
            "alpha=1:2:linear",
            "alpha:1:2:linear:3",
            "alpha=a:2:linear:3",
            "alpha=1:2:linear:3.5",
        ] {
            assert!(
                matches!(bad.parse::<SweepSpec>(), Err(Error::InvalidSweep(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let s: SweepSpec = "alpha=0.3:7.1:log:2".parse().unwrap();
        assert_eq!(s.grid(), vec![0.3, 7.1]);
        let s: SweepSpec = "alpha=0.1:0.7:linear:7".parse().unwrap();
        let g = s.grid();
        assert_eq!((g[0], g[6]), (0.1, 0.7));
        assert!((g[3] - 0.4).abs() < 1e-15);
        let s: SweepSpec = "mass_M=1e-18:1e-16:log:3".parse().unwrap();
        assert!((s.grid()[1] / 1e-17 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wavelength_sweep_lowers_radiation_limit() {
        let s: SweepSpec = "lambda1=1e-7:1e-5:log:20".parse().unwrap();
        let rows = run_sweep(&RunConfig::default(), &s).unwrap();
        assert_eq!(rows.len(), 20);
        assert!(rows.windows(2).all(|w| w[1].1.t_r < w[0].1.t_r));
    }

    #[test]
    fn alpha_sweep_density_scales_inversely() {
        let s: SweepSpec = "alpha=1:100:log:5".parse().unwrap();
        let rows = run_sweep(&RunConfig::default(), &s).unwrap();
        let c0 = rows[0].0 * rows[0].1.rho_alpha;
        for (a, r) in &rows {
            assert!((a * r.rho_alpha / c0 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_points_are_reported() {
        let s: SweepSpec = "delta_q_i=-1:1:linear:3".parse().unwrap();
        assert!(matches!(
            run_sweep(&RunConfig::default(), &s),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn csv_has_one_row_per_point() {
        let s: SweepSpec = "alpha=1:2:linear:4".parse().unwrap();
        let csv = sweep_csv(&s, &run_sweep(&RunConfig::default(), &s).unwrap());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].starts_with("swept_alpha,alpha,delta_v_i"));
        assert!(lines[4].starts_with("2.00000000000e0,"));
    }
}
