//! Acceptance report: one PASS/FAIL line per criterion, with the measured
//! values of every sub-check underneath.

use std::f64::consts::PI;
use std::process::ExitCode;

use rayon::prelude::*;

use mesoscope::config::RunConfig;
use mesoscope::feasibility::{
    collision_constraint, gas_temperature_limit, phonon_cutoff, radiation_temperature,
    thermal_velocity, RadiationMode,
};
use mesoscope::geometry::{pl_delta, probe_resolution, solve_slit_separation};
use mesoscope::interference::{
    bifurcated_center_phase, intensity_of, node_metrics, Interferometer, Pattern,
};
use mesoscope::model::{default_config, EnvironmentSpec, ExperimentGeometry};
use mesoscope::quadrature::QuadratureSettings;
use mesoscope::sweep::{run_sweep, sweep_csv, SweepSpec};
use mesoscope::trap::{design_trap, grad_product_check};
use mesoscope::wavepacket::{spread_time, spreading_velocity, truncate, PositionDensity};

const LAMBDA1: f64 = 1e-6;
const TABLE_TOL: f64 = 0.01;
const FIGURE8_SEPARATION: f64 = 2.3;
const FIGURE8_MIN_GAIN: f64 = 0.10;
const ORACLE_POINTS: usize = 1_000_000;
const ORACLE_AGREEMENT: f64 = 1e-6;
const ORACLE_STRIDE: usize = 10;
const NORMALIZATION_TOL: f64 = 1e-9;
const SYMMETRY_TOL: f64 = 1e-9;
const INTENSITY_TOL: f64 = 1e-12;
const DOUBLING_TOL: f64 = 1e-8;
const DELTA_ORACLE_TOL: f64 = 1e-4;

struct Check {
    label: String,
    ok: bool,
    detail: String,
}

fn check(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        label: label.into(),
        ok,
        detail: detail.into(),
    }
}

/// |value / target − 1| ≤ tol
fn within(label: &str, value: f64, target: f64, tol: f64) -> Check {
    let rel = value / target - 1.0;
    check(
        label,
        rel.abs() <= tol,
        format!(
            "{value:.6e} vs {target:.4e} ({:+.2}%, tol ±{:.0}%)",
            100.0 * rel,
            100.0 * tol
        ),
    )
}

fn criterion_1() -> Vec<Check> {
    let g = ExperimentGeometry::default();
    let mut values: Vec<f64> = [-LAMBDA1, 0.0, LAMBDA1]
        .iter()
        .map(|z| pl_delta(*z, g.slit_separation, &g).unwrap().pl_delta / LAMBDA1)
        .collect();
    values.sort_by(f64::total_cmp);
    [0.36, 0.50, 0.77]
        .iter()
        .zip(&values)
        .map(|(want, got)| {
            check(
                format!("PLdelta {want:.2} lambda1"),
                (got - want).abs() <= TABLE_TOL,
                format!("{got:.4} lambda1"),
            )
        })
        .collect()
}

fn criterion_2() -> Vec<Check> {
    let g = ExperimentGeometry::default();
    let s = solve_slit_separation(0.5 * LAMBDA1, 0.0, &g).unwrap() / LAMBDA1;
    vec![check(
        "S = 2.29 lambda1",
        (s - 2.29).abs() <= TABLE_TOL,
        format!("{s:.5} lambda1"),
    )]
}

fn criterion_3() -> Vec<Check> {
    let (g, m, e) = default_config();
    let dv = spreading_velocity(m.delta_q_i, m.mass).unwrap();
    let t_s = spread_time(g.lambda1, dv).unwrap();
    let t_r_col = radiation_temperature(&m, &g, RadiationMode::Collapsed).unwrap();
    let t_r_sym = radiation_temperature(&m, &g, RadiationMode::Symbolic).unwrap();
    let t_c_col = phonon_cutoff(&m, &g, RadiationMode::Collapsed).unwrap();
    let t_c_sym = phonon_cutoff(&m, &g, RadiationMode::Symbolic).unwrap();
    let alpha = 7.0;
    let gas = collision_constraint(alpha, &m, &g, &EnvironmentSpec { alpha, ..e }).unwrap();
    vec![
        within("delta_v_i", dv, 3.8e-3, 0.05),
        within("t_s", t_s, 2.6e-4, 0.05),
        within("T_R collapsed", t_r_col, 2.2e2, 0.05),
        within("T_R symbolic", t_r_sym, 2.2e2, 0.20),
        within("T_c collapsed", t_c_col, 4.1e-1, 0.03),
        within("T_c symbolic vs collapsed", t_c_sym, t_c_col, 0.15),
        within(
            "v_T coefficient",
            thermal_velocity(1.0, m.mass).unwrap(),
            6.2,
            0.02,
        ),
        within(
            "T_g coefficient",
            gas_temperature_limit(1.0, &m).unwrap(),
            3.8e-7,
            0.03,
        ),
        within("v_g coefficient", gas.gas_velocity / alpha, 1.06, 0.03),
        within("V coefficient", gas.volume / alpha, 1.33e-15, 0.03),
        within("rho_alpha coefficient", gas.rho_alpha * alpha, 1.2e-6, 0.05),
    ]
}

fn criterion_4() -> Vec<Check> {
    let (g, m, _) = default_config();
    let d = design_trap(&m, &g, 1e-3, 1e-1, 0.25).unwrap();
    vec![
        within("k", d.k, 1.1e-6, 0.05),
        within("omega_os", d.omega_os, 3.2e5, 0.05),
        within(
            "grad_product",
            grad_product_check(&d, 1e-3, 1e-1),
            1.8e11,
            0.25,
        ),
        within("B0", d.b0, 8.5e2, 0.10),
    ]
}

/// Independent field evaluation: trapezoid rule on `ORACLE_POINTS` uniform
/// nodes over [lo, hi], with the density normalized on the same nodes.
fn oracle_field(
    pdf: &(dyn Fn(f64) -> f64 + Sync),
    lo: f64,
    hi: f64,
    lateral: f64,
    g: &ExperimentGeometry,
) -> f64 {
    let n = ORACLE_POINTS;
    let h = (hi - lo) / (n - 1) as f64;
    let (mut num, mut mass) = (0.0, 0.0);
    for i in 0..n {
        let z = lo + i as f64 * h;
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        let p = pdf(z);
        let path = 2.0 * ((z + g.slit_mirror_distance).powi(2) + 0.25 * lateral * lateral).sqrt();
        num += w * p * (2.0 * PI * path / g.lambda1).cos();
        mass += w * p;
    }
    num / mass
}

fn criterion_5() -> Vec<Check> {
    let g = ExperimentGeometry::default().with_slit_separation(FIGURE8_SEPARATION * LAMBDA1);
    let ifm = Interferometer::new(g);
    let sigma = LAMBDA1;
    let bound = probe_resolution(g.lambda2, g.probe_angle, g.probe_aperture).unwrap();
    let gaussian = PositionDensity::gaussian(sigma).unwrap();
    let truncated = truncate(&gaussian, -bound, bound).unwrap();
    let gauss_pdf = move |z: f64| (-0.5 * (z / sigma).powi(2)).exp();

    let mut checks = Vec::new();
    let mut ratios = Vec::new();
    for (name, density, lo, hi) in [
        ("truncated", &truncated, -bound, bound),
        ("gaussian", &gaussian, -8.0 * sigma, 8.0 * sigma),
    ] {
        let pattern = ifm.pattern(density, 1001).unwrap();
        let metrics = node_metrics(&pattern).unwrap();
        ratios.push(metrics.node_depth_ratio);

        let idx: Vec<usize> = (0..pattern.len()).step_by(ORACLE_STRIDE).collect();
        let s = g.slit_separation;
        let oracle: Vec<(f64, f64)> = idx
            .par_iter()
            .map(|&j| {
                let d = pattern.d_grid[j];
                (
                    oracle_field(&gauss_pdf, lo, hi, d, &g),
                    oracle_field(&gauss_pdf, lo, hi, s - d, &g),
                )
            })
            .collect();
        let scale = oracle
            .iter()
            .map(|(a, b)| a.abs().max(b.abs()))
            .fold(0.0, f64::max);
        let worst = idx
            .iter()
            .zip(&oracle)
            .map(|(&j, (a, b))| (pattern.e_a[j] - a).abs().max((pattern.e_b[j] - b).abs()) / scale)
            .fold(0.0, f64::max);
        checks.push(check(
            format!("{name} fields vs 1e6-point trapezoid"),
            worst <= ORACLE_AGREEMENT,
            format!(
                "max deviation {worst:.2e} of max |E| = {scale:.3e} on {} points",
                idx.len()
            ),
        ));
    }
    let (r_trunc, r_gauss) = (ratios[0], ratios[1]);
    checks.push(check(
        "truncated edge nodes ≥10% sharper than gaussian",
        r_trunc <= (1.0 - FIGURE8_MIN_GAIN) * r_gauss,
        format!("node_depth_ratio truncated {r_trunc:.4e}, gaussian {r_gauss:.4e}"),
    ));
    checks
}

fn criterion_6() -> Vec<Check> {
    let phase = bifurcated_center_phase(-LAMBDA1 / 8.0, LAMBDA1 / 8.0, LAMBDA1).unwrap();
    vec![check("phase = pi", phase == PI, format!("{phase:.17}"))]
}

fn criterion_7() -> Vec<Check> {
    let lambda2 = LAMBDA1 / 4.0;
    [0.0, 0.2, 0.7]
        .iter()
        .map(|&theta: &f64| {
            let r = probe_resolution(lambda2, theta, 4.0 * lambda2 * theta.cos()).unwrap();
            check(
                format!("theta = {theta}"),
                r == LAMBDA1 / 4.0,
                format!("bound {:.17e} lambda1", r / LAMBDA1),
            )
        })
        .collect()
}

fn test_densities() -> Vec<(&'static str, PositionDensity)> {
    let g = PositionDensity::gaussian(LAMBDA1).unwrap();
    let z: Vec<f64> = (0..41)
        .map(|i| (i as f64 - 15.0) * 0.05 * LAMBDA1)
        .collect();
    let p: Vec<f64> = z
        .iter()
        .map(|z| (1.0 + (z / LAMBDA1)).max(0.0) * (1.5 - z / LAMBDA1).max(0.0))
        .collect();
    vec![
        ("delta", PositionDensity::delta(0.0)),
        (
            "bifurcated",
            PositionDensity::symmetric_bifurcation(LAMBDA1 / 4.0),
        ),
        (
            "bifurcated 0.3/0.7",
            PositionDensity::bifurcated(-0.1e-6, 0.2e-6, 0.3).unwrap(),
        ),
        ("truncated", truncate(&g, -0.25e-6, 0.25e-6).unwrap()),
        (
            "truncated off-centre",
            truncate(&g, -0.1e-6, 0.6e-6).unwrap(),
        ),
        ("gaussian", g),
        (
            "tabulated skewed",
            PositionDensity::tabulated(z, p).unwrap(),
        ),
    ]
}

fn density_mass(p: &PositionDensity) -> f64 {
    if let Some(masses) = p.point_masses() {
        return masses.iter().map(|(_, w)| w).sum();
    }
    let pts = p.support_breakpoints(8.0).unwrap();
    let (lo, hi) = (pts[0], pts[pts.len() - 1]);
    // Simpson on a fine uniform grid, plus exact breakpoints for kinks
    let n = 400_000;
    let h = (hi - lo) / n as f64;
    let f = |z: f64| p.value(z).unwrap();
    let mut s = f(lo) + f(hi);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(lo + i as f64 * h);
    }
    s * h / 3.0
}

fn max_rel_asymmetry(p: &Pattern) -> f64 {
    let n = p.len();
    (0..n)
        .map(|j| {
            let (a, b) = (p.intensity[j], p.intensity[n - 1 - j]);
            let scale = a.abs().max(b.abs());
            if scale == 0.0 {
                0.0
            } else {
                (a - b).abs() / scale
            }
        })
        .fold(0.0, f64::max)
}

fn criterion_8() -> Vec<Check> {
    let mut checks = Vec::new();
    let ifm = Interferometer::new(ExperimentGeometry::default());
    let densities = test_densities();

    let worst_mass = densities
        .iter()
        .filter(|(name, _)| !name.starts_with("tabulated"))
        .map(|(_, p)| (density_mass(p) - 1.0).abs())
        .fold(0.0, f64::max);
    checks.push(check(
        "density normalization",
        worst_mass <= NORMALIZATION_TOL,
        format!("max |mass − 1| = {worst_mass:.2e}"),
    ));
    // piecewise-linear tables integrate exactly with the trapezoid rule
    let table_mass = match &densities.last().unwrap().1 {
        PositionDensity::Tabulated(t) => t
            .grid()
            .windows(2)
            .zip(t.values().windows(2))
            .map(|(z, p)| 0.5 * (p[0] + p[1]) * (z[1] - z[0]))
            .sum::<f64>(),
        _ => unreachable!(),
    };
    checks.push(check(
        "tabulated normalization",
        (table_mass - 1.0).abs() <= NORMALIZATION_TOL,
        format!("|mass − 1| = {:.2e}", (table_mass - 1.0).abs()),
    ));

    let patterns: Vec<(&str, Pattern)> = densities
        .iter()
        .map(|(name, p)| (*name, ifm.pattern(p, 201).unwrap()))
        .collect();
    let worst_sym = patterns
        .iter()
        .map(|(_, p)| max_rel_asymmetry(p))
        .fold(0.0, f64::max);
    checks.push(check(
        "slit-swap symmetry I(D) = I(S−D)",
        worst_sym <= SYMMETRY_TOL,
        format!(
            "max relative asymmetry {worst_sym:.2e} over {} densities",
            patterns.len()
        ),
    ));

    let worst_eq = patterns
        .iter()
        .flat_map(|(_, p)| {
            (0..p.len()).map(move |j| {
                let i = intensity_of(p.e_a[j], p.e_b[j]);
                if i == 0.0 {
                    (p.intensity[j] - i).abs()
                } else {
                    (p.intensity[j] / i - 1.0).abs()
                }
            })
        })
        .fold(0.0, f64::max);
    checks.push(check(
        "I = ½(E_A + E_B)² recomputation",
        worst_eq <= INTENSITY_TOL,
        format!("max relative deviation {worst_eq:.2e}"),
    ));

    let finer = ifm.with_quadrature(QuadratureSettings {
        initial_intervals: 2 * QuadratureSettings::default().initial_intervals,
        ..QuadratureSettings::default()
    });
    let mut worst_change: f64 = 0.0;
    for (name, p) in &densities {
        if p.is_point_mass() {
            continue;
        }
        let coarse = patterns.iter().find(|(n, _)| n == name).unwrap().1.clone();
        let fine = finer.pattern(p, 201).unwrap();
        let peak = coarse.intensity.iter().cloned().fold(0.0, f64::max);
        for j in 0..coarse.len() {
            worst_change = worst_change.max((fine.intensity[j] - coarse.intensity[j]).abs() / peak);
        }
    }
    checks.push(check(
        "interval doubling changes I by < 1e-8",
        worst_change < DOUBLING_TOL,
        format!("max change {worst_change:.2e} of the pattern peak"),
    ));

    let half = LAMBDA1 / 2000.0;
    let triangle = PositionDensity::tabulated(vec![-half, 0.0, half], vec![0.0, 1.0, 0.0]).unwrap();
    let tri = ifm.pattern(&triangle, 201).unwrap();
    let delta = &patterns[0].1;
    let scale = delta.intensity.iter().cloned().fold(0.0, f64::max);
    let worst_tri = (0..tri.len())
        .map(|j| (tri.intensity[j] - delta.intensity[j]).abs() / scale)
        .fold(0.0, f64::max);
    checks.push(check(
        "narrow triangle reproduces the fixed mirror",
        worst_tri <= DELTA_ORACLE_TOL,
        format!("max deviation {worst_tri:.2e} of the pattern peak"),
    ));

    let spec: SweepSpec = "lambda1=1e-7:1e-5:log:40".parse().unwrap();
    let config = RunConfig::default();
    let csv_with = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let sweep = sweep_csv(&spec, &run_sweep(&config, &spec).unwrap());
                let pattern = ifm
                    .pattern(&PositionDensity::gaussian(LAMBDA1).unwrap(), 101)
                    .unwrap()
                    .to_csv();
                sweep + &pattern
            })
    };
    let (one, four) = (csv_with(1), csv_with(4));
    checks.push(check(
        "byte-identical output on 1 and 4 threads",
        one == four,
        format!("{} bytes", one.len()),
    ));
    checks
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Vec<Check>); 8] = [
        ("edge path differences at z = −λ₁, 0, +λ₁", criterion_1),
        (
            "slit separation from a half-wave edge difference",
            criterion_2,
        ),
        ("feasibility envelope numbers", criterion_3),
        ("trap design numbers", criterion_4),
        ("truncated density sharpens the edge nodes", criterion_5),
        (
            "bifurcated branches λ₁/4 apart are π out of phase",
            criterion_6,
        ),
        ("probe bound equals λ₁/4", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let checks = run();
        let ok = checks.iter().all(|c| c.ok);
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {}: {title}",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
        for c in &checks {
            println!(
                "    [{}] {}: {}",
                if c.ok { "ok" } else { "FAIL" },
                c.label,
                c.detail
            );
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
