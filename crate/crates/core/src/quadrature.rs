//! Composite Simpson quadrature with successive interval doubling.
//!
//! The integration range is split into panels (one panel for smooth
//! densities, one per table segment for tabulated ones). Every panel carries
//! the same even number of Simpson intervals; each refinement doubles that
//! number and only evaluates the new midpoints. Summation order is fixed, so
//! results are bitwise reproducible.

use crate::error::{Error, Result};

/// Discretization controls for the reflected-field integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Lower bound on the total number of Simpson intervals at the first pass.
    pub initial_intervals: usize,
    /// Interval budget; exceeding it yields `QuadratureNotConverged`.
    pub max_intervals: usize,
    pub rel_tolerance: f64,
    /// Gaussian densities are integrated over ±this many σ.
    pub support_half_width_sigmas: f64,
}

impl QuadratureSettings {
    /// Minimum sampling density: one interval per λ₁/200.
    pub const INTERVALS_PER_WAVELENGTH: f64 = 200.0;

    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        for (field, n) in [
            ("initial_intervals", self.initial_intervals),
            ("max_intervals", self.max_intervals),
        ] {
            if n < 16 || !n.is_power_of_two() {
                violations.push(crate::Violation::new(field, "must be a power of two ≥ 16"));
            }
        }
        if self.max_intervals < self.initial_intervals {
            violations.push(crate::Violation::new(
                "max_intervals",
                "must be ≥ initial_intervals",
            ));
        }
        if !(self.rel_tolerance > 0.0 && self.rel_tolerance <= 1e-4) {
            violations.push(crate::Violation::new(
                "rel_tolerance",
                "must lie in (0, 1e-4]",
            ));
        }
        if !(self.support_half_width_sigmas >= 4.0 && self.support_half_width_sigmas.is_finite()) {
            violations.push(crate::Violation::new(
                "support_half_width_sigmas",
                "must be ≥ 4",
            ));
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(violations))
        }
    }
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            initial_intervals: 1024,
            max_intervals: 1 << 20,
            rel_tolerance: 1e-8,
            support_half_width_sigmas: 8.0,
        }
    }
}

/// Result of a converged integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Simpson estimate of ∫|f|, the scale the convergence test is relative to.
    pub abs_value: f64,
    /// Total number of intervals of the accepted estimate.
    pub intervals: usize,
    /// Scaled change between the last two refinements.
    pub change: f64,
}

/// Running Simpson sums for one panel.
#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    ends: f64,
    ends_abs: f64,
    // interior nodes of the previous refinement (weight 2 in the current one)
    interior: f64,
    interior_abs: f64,
    // midpoints added by the latest refinement (weight 4)
    mids: f64,
    mids_abs: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(lo: f64, hi: f64, f: &F) -> Self {
        let (a, b) = (f(lo), f(hi));
        Self {
            lo,
            hi,
            ends: a + b,
            ends_abs: a.abs() + b.abs(),
            interior: 0.0,
            interior_abs: 0.0,
            mids: 0.0,
            mids_abs: 0.0,
        }
    }

    /// Moves to `n` intervals given the sums for `n / 2`.
    fn refine(&mut self, n: usize, f: &impl Fn(f64) -> f64) {
        self.interior += self.mids;
        self.interior_abs += self.mids_abs;
        let h = (self.hi - self.lo) / n as f64;
        let (mut s, mut s_abs) = (0.0, 0.0);
        for k in (1..n).step_by(2) {
            let v = f(self.lo + k as f64 * h);
            s += v;
            s_abs += v.abs();
        }
        self.mids = s;
        self.mids_abs = s_abs;
    }

    /// Builds the sums for `n` intervals from scratch.
    fn refine_from(&mut self, n: usize, f: &impl Fn(f64) -> f64) {
        let h = (self.hi - self.lo) / n as f64;
        let (mut even, mut even_abs, mut odd, mut odd_abs) = (0.0, 0.0, 0.0, 0.0);
        for k in 1..n {
            let v = f(self.lo + k as f64 * h);
            if k % 2 == 0 {
                even += v;
                even_abs += v.abs();
            } else {
                odd += v;
                odd_abs += v.abs();
            }
        }
        self.interior = even;
        self.interior_abs = even_abs;
        self.mids = odd;
        self.mids_abs = odd_abs;
    }

    fn estimate(&self, n: usize) -> (f64, f64) {
        let h = (self.hi - self.lo) / n as f64;
        (
            h / 3.0 * (self.ends + 2.0 * self.interior + 4.0 * self.mids),
            h / 3.0 * (self.ends_abs + 2.0 * self.interior_abs + 4.0 * self.mids_abs),
        )
    }
}

/// Integrates `f` over the panels delimited by `breakpoints` (ascending).
///
/// `min_step` is the largest admissible initial interval width; it enforces
/// a fixed number of samples per oscillation regardless of the panel size.
pub fn integrate_panels<F>(
    breakpoints: &[f64],
    f: F,
    min_step: f64,
    settings: &QuadratureSettings,
) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    assert!(breakpoints.len() >= 2, "need at least one panel");
    let n_panels = breakpoints.len() - 1;
    let widest = breakpoints
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0_f64, f64::max);

    let by_budget = settings.initial_intervals.div_ceil(n_panels);
    let by_resolution = if min_step > 0.0 {
        (widest / min_step).ceil() as usize
    } else {
        0
    };
    let mut per_panel = by_budget.max(by_resolution).max(2).next_power_of_two();

    let mut panels: Vec<Panel> = breakpoints
        .windows(2)
        .map(|w| Panel::new(w[0], w[1], &f))
        .collect();
    for p in &mut panels {
        p.refine_from(per_panel, &f);
    }
    let (mut previous, _) = total(&panels, per_panel);

    let mut last_change = f64::INFINITY;
    loop {
        let next = per_panel * 2;
        if next * n_panels > settings.max_intervals {
            return Err(Error::QuadratureNotConverged {
                intervals: per_panel * n_panels,
                change: last_change,
            });
        }
        for p in &mut panels {
            p.refine(next, &f);
        }
        per_panel = next;
        let (value, abs_value) = total(&panels, per_panel);
        let scale = value.abs().max(abs_value);
        let change = if scale > 0.0 {
            (value - previous).abs() / scale
        } else {
            0.0
        };
        if change < settings.rel_tolerance {
            return Ok(Integral {
                value,
                abs_value,
                intervals: per_panel * n_panels,
                change,
            });
        }
        previous = value;
        last_change = change;
    }
}

fn total(panels: &[Panel], n: usize) -> (f64, f64) {
    panels.iter().fold((0.0, 0.0), |(v, a), p| {
        let (pv, pa) = p.estimate(n);
        (v + pv, a + pa)
    })
}

/// Integrates `f` over `[lo, hi]` as a single panel.
pub fn integrate<F>(
    lo: f64,
    hi: f64,
    f: F,
    min_step: f64,
    settings: &QuadratureSettings,
) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    integrate_panels(&[lo, hi], f, min_step, settings)
}
