//! The `mesoscope` command line.
//!
//! Exit codes: 0 success, 1 configuration, validation or I/O error,
//! 2 quadrature non-convergence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::config::{load_config, RunConfig};
use crate::error::{Error, Result};
use crate::feasibility::{feasibility_report, FeasibilityReport};
use crate::format::fmt_sci;
use crate::geometry::{geometry_probe_resolution, pl_delta};
use crate::interference::{
    node_metrics, ComparisonReport, Interferometer, NodeMetrics, Sharper, CENTRAL_WINDOW,
    EDGE_WINDOW,
};
use crate::sweep::{run_sweep, sweep_csv, SweepSpec};
use crate::trap::{design_trap, em_force, release_check, TrapDesign};
use crate::wavepacket::{truncate, PositionDensity, TabulatedDensity};

pub const THREADS_ENV: &str = "MESOSCOPE_THREADS";

pub const SIGN_NOTE: &str = "note: z is measured away from the slit plane; tables that label the \
rows with the opposite sign list the same three values in reverse order";

#[derive(Debug, Parser)]
#[command(
    name = "mesoscope",
    version,
    about = "Reflected double-slit patterns and feasibility envelope for a spreading mesoscopic mirror"
)]
pub struct Cli {
    /// Configuration file (`key = value` with `[section]` headers).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print the fully resolved configuration and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output file for CSV data.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Screen pattern for one mirror position density.
    Pattern {
        #[arg(long, default_value = "truncated")]
        density: DensityChoice,
        /// Number of screen points (overrides the config).
        #[arg(long)]
        points: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Edge path differences for the mirror at +λ₁, 0 and −λ₁.
    Table1 {
        #[command(flatten)]
        out: OutArg,
    },
    /// Temperature and gas-density limits.
    Feasibility {
        #[command(flatten)]
        out: OutArg,
    },
    /// Levitation trap design.
    Trap {
        #[command(flatten)]
        out: OutArg,
    },
    /// Feasibility report over a parameter grid.
    Sweep {
        /// name=lo:hi:linear|log:steps with name in lambda1, mass_M, delta_q_i, alpha.
        #[arg(long)]
        param: SweepSpec,
        #[command(flatten)]
        out: OutArg,
    },
    /// Edge node sharpness of two densities on the same grid.
    Compare {
        #[arg(long, default_value = "truncated")]
        density: DensityChoice,
        #[arg(long, default_value = "gaussian")]
        against: DensityChoice,
        #[arg(long)]
        points: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
}

/// Density selected on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityChoice {
    /// Mirror fixed at z = 0.
    Delta,
    /// Equal branches at ∓λ₁/8.
    Bifurcated,
    /// σ = λ₁.
    Gaussian,
    /// The σ = λ₁ Gaussian cut to the probe bound.
    Truncated,
    Tabulated(PathBuf),
}

impl FromStr for DensityChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "delta" => Ok(Self::Delta),
            "bifurcated" => Ok(Self::Bifurcated),
            "gaussian" => Ok(Self::Gaussian),
            "truncated" => Ok(Self::Truncated),
            _ => match s.strip_prefix("tabulated:") {
                Some(path) if !path.is_empty() => Ok(Self::Tabulated(PathBuf::from(path))),
                _ => Err(format!(
                    "expected delta, bifurcated, gaussian, truncated or tabulated:<csv>, got {s:?}"
                )),
            },
        }
    }
}

impl DensityChoice {
    pub fn label(&self) -> String {
        match self {
            Self::Delta => "delta".into(),
            Self::Bifurcated => "bifurcated".into(),
            Self::Gaussian => "gaussian".into(),
            Self::Truncated => "truncated".into(),
            Self::Tabulated(p) => format!("tabulated:{}", p.display()),
        }
    }

    pub fn build(&self, config: &RunConfig) -> Result<PositionDensity> {
        let lambda1 = config.geometry.lambda1;
        match self {
            Self::Delta => Ok(PositionDensity::delta(0.0)),
            Self::Bifurcated => Ok(PositionDensity::symmetric_bifurcation(lambda1 / 4.0)),
            Self::Gaussian => PositionDensity::gaussian(lambda1),
            Self::Truncated => {
                let bound = geometry_probe_resolution(&config.geometry)?;
                truncate(&PositionDensity::gaussian(lambda1)?, -bound, bound)
            }
            Self::Tabulated(path) => Ok(PositionDensity::Tabulated(
                TabulatedDensity::from_csv_path(path)?,
            )),
        }
    }
}

/// Thread count from `MESOSCOPE_THREADS`; 0 or unset means automatic.
pub fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            Error::InvalidConfig(vec![crate::Violation::new(
                THREADS_ENV,
                format!("must be a non-negative integer, got {v:?}"),
            )])
        }),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if cli.dump_config {
        print!("{}", config.dump());
        return Ok(());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| {
            Error::InvalidConfig(vec![crate::Violation::new(THREADS_ENV, e.to_string())])
        })?;
    let Some(command) = &cli.command else {
        return Err(Error::InvalidConfig(vec![crate::Violation::new(
            "command",
            "missing (pattern, table1, feasibility, trap, sweep or compare)",
        )]));
    };
    pool.install(|| dispatch(command, &config))
}

fn dispatch(command: &Command, config: &RunConfig) -> Result<()> {
    match command {
        Command::Pattern {
            density,
            points,
            out,
        } => cmd_pattern(config, density, *points, out.out.as_deref()),
        Command::Table1 { out } => cmd_table1(config, out.out.as_deref()),
        Command::Feasibility { out } => cmd_feasibility(config, out.out.as_deref()),
        Command::Trap { out } => cmd_trap(config, out.out.as_deref()),
        Command::Sweep { param, out } => cmd_sweep(config, param, out.out.as_deref()),
        Command::Compare {
            density,
            against,
            points,
            out,
        } => cmd_compare(config, density, against, *points, out.out.as_deref()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn interferometer(config: &RunConfig) -> Interferometer {
    Interferometer {
        geometry: config.geometry,
        quadrature: config.quadrature,
        scale_k: config.output.k_scale,
        inverse_path_amplitude: config.output.inverse_path_amplitude,
    }
}

fn metrics_text(label: &str, m: &NodeMetrics, lambda1: f64) -> String {
    let nodes: Vec<String> = m
        .node_positions
        .iter()
        .map(|d| format!("{:.4}", d / lambda1))
        .collect();
    format!(
        "density          {label}\n\
         nodes (D/lambda1) [{}]\n\
         central_peak     {:.6e}\n\
         edge_min         {:.6e}\n\
         node_depth_ratio {:.6e}\n",
        nodes.join(", "),
        m.central_peak,
        m.edge_min,
        m.node_depth_ratio
    )
}

fn windows_note() -> String {
    format!(
        "windows: central peak over D/S in [{:.4}, {:.4}], edge minimum over D/S in [0, {:.4}] and [{:.4}, 1]\n",
        CENTRAL_WINDOW.0,
        CENTRAL_WINDOW.1,
        EDGE_WINDOW,
        1.0 - EDGE_WINDOW
    )
}

pub fn cmd_pattern(
    config: &RunConfig,
    density: &DensityChoice,
    points: Option<usize>,
    out: Option<&Path>,
) -> Result<()> {
    let n = points.unwrap_or(config.output.points);
    let p = density.build(config)?;
    let pattern = interferometer(config).pattern(&p, n)?;
    let metrics = node_metrics(&pattern)?;
    let summary =
        metrics_text(&density.label(), &metrics, config.geometry.lambda1) + &windows_note();
    match out {
        Some(path) => {
            write_file(path, &pattern.to_csv())?;
            print!("{summary}");
        }
        None => {
            print!("{}", pattern.to_csv());
            eprint!("{summary}");
        }
    }
    Ok(())
}

/// Rows (z/λ₁, PLΔ/λ₁) at the screen edge for z = +λ₁, 0, −λ₁.
pub fn table1_rows(config: &RunConfig) -> Result<Vec<(f64, f64)>> {
    let g = &config.geometry;
    [1.0, 0.0, -1.0]
        .into_iter()
        .map(|k| {
            let pair = pl_delta(k * g.lambda1, g.slit_separation, g)?;
            Ok((k, pair.pl_delta / g.lambda1))
        })
        .collect()
}

pub fn cmd_table1(config: &RunConfig, out: Option<&Path>) -> Result<()> {
    let rows = table1_rows(config)?;
    let mut text = String::from("z_m/lambda1  PLdelta/lambda1\n");
    for (z, d) in &rows {
        let label = match *z as i32 {
            0 => "0".to_string(),
            k => format!("{k:+}"),
        };
        let _ = writeln!(text, "{label:>11}  {d:.4}");
    }
    let _ = writeln!(text, "{SIGN_NOTE}");
    print!("{text}");
    if let Some(path) = out {
        let mut csv = String::from("z_over_lambda1,pl_delta_over_lambda1\n");
        for (z, d) in &rows {
            let _ = writeln!(csv, "{},{}", fmt_sci(*z), fmt_sci(*d));
        }
        write_file(path, &csv)?;
    }
    Ok(())
}

pub fn feasibility_for(config: &RunConfig) -> Result<FeasibilityReport> {
    feasibility_report(&config.mirror, &config.geometry, &config.environment)
}

pub fn cmd_feasibility(config: &RunConfig, out: Option<&Path>) -> Result<()> {
    let report = feasibility_for(config)?;
    print!("{}", report.to_text());
    if let Some(path) = out {
        write_file(
            path,
            &format!("{}\n{}\n", FeasibilityReport::CSV_HEADER, report.csv_row()),
        )?;
    }
    Ok(())
}

pub fn trap_for(config: &RunConfig) -> Result<TrapDesign> {
    let t = &config.trap;
    design_trap(
        &config.mirror,
        &config.geometry,
        t.nu,
        t.eta,
        t.gradient_fraction,
    )
}

pub fn cmd_trap(config: &RunConfig, out: Option<&Path>) -> Result<()> {
    let design = trap_for(config)?;
    let t_r = config.output.release_time;
    let check = release_check(t_r, &design)?;
    let omega = config.trap.drive_omega;
    let peak = em_force(
        std::f64::consts::FRAC_PI_2 / omega,
        &design,
        design.b0,
        omega,
    )?;
    print!("{}", design.to_text());
    println!("peak force           {peak:>12.4e} dyn");
    println!(
        "dF/dz (finite diff.) {:>12.4e} erg/cm^2",
        design.force_gradient(1e-3 * design.lambda1)
    );
    println!(
        "release t_R = {t_r:.3e} s: spread {}, oscillator {}",
        if check.ok_spread { "ok" } else { "too slow" },
        if check.ok_oscillator {
            "ok"
        } else {
            "too slow"
        }
    );
    if let Some(path) = out {
        write_file(
            path,
            &format!("{}\n{}\n", TrapDesign::CSV_HEADER, design.csv_row()),
        )?;
    }
    Ok(())
}

pub fn cmd_sweep(config: &RunConfig, spec: &SweepSpec, out: Option<&Path>) -> Result<()> {
    let csv = sweep_csv(spec, &run_sweep(config, spec)?);
    match out {
        Some(path) => write_file(path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

pub fn cmd_compare(
    config: &RunConfig,
    first: &DensityChoice,
    second: &DensityChoice,
    points: Option<usize>,
    out: Option<&Path>,
) -> Result<()> {
    let n = points.unwrap_or(config.output.points);
    let report: ComparisonReport = interferometer(config).compare_densities(
        &first.build(config)?,
        &second.build(config)?,
        n,
    )?;
    let lambda1 = config.geometry.lambda1;
    print!(
        "{}",
        metrics_text(&first.label(), &report.metrics_first, lambda1)
    );
    print!(
        "{}",
        metrics_text(&second.label(), &report.metrics_second, lambda1)
    );
    print!("{}", windows_note());
    let verdict = match report.sharper {
        Sharper::First => format!("sharper edge nodes: {}", first.label()),
        Sharper::Second => format!("sharper edge nodes: {}", second.label()),
        Sharper::Equal => "sharper edge nodes: tie".to_string(),
    };
    println!("{verdict}");
    if let Some(path) = out {
        let mut csv = String::from("density,central_peak,edge_min,node_depth_ratio,node_count\n");
        for (label, m) in [
            (first.label(), &report.metrics_first),
            (second.label(), &report.metrics_second),
        ] {
            let _ = writeln!(
                csv,
                "{label},{},{},{},{}",
                fmt_sci(m.central_peak),
                fmt_sci(m.edge_min),
                fmt_sci(m.node_depth_ratio),
                m.node_positions.len()
            );
        }
        write_file(path, &csv)?;
    }
    Ok(())
}
