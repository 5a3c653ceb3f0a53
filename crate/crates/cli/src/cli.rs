//! Command-line definitions and small value parsers.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Environment variable naming a directory with default configuration files;
/// `geometry.json` is looked up there when `--geometry` is omitted, and
/// relative input paths fall back to it when not found in the working
/// directory.
pub const CONFIG_DIR_ENV: &str = "ACTUATOR_CONFIG_DIR";

/// Modeling laboratory for a hinged-shell pneumatic bending actuator.
///
/// All file interfaces use kPa, mm, degrees, and newtons. Exit codes:
/// 0 success, 1 usage or configuration error, 2 model or validation failure,
/// 3 numerical non-convergence.
#[derive(Debug, Parser)]
#[command(name = "actuator-lab", version, about, max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate total and per-joint bending angle over a pressure sweep.
    Bend(ModelArgs),
    /// Tabulate blocked tip force over a pressure sweep.
    Force(ModelArgs),
    /// Tabulate the tip trajectory over a pressure sweep.
    Trajectory(ModelArgs),
    /// Compare the closed-form wall torques against the exact integrals;
    /// exits 2 when the top-wall error bound of 4% is violated.
    ValidateApprox(ValidateArgs),
    /// Fit the shear modulus and friction limit from experiment CSV files.
    Calibrate(CalibrateArgs),
    /// Evaluate bend/force metrics over a Cartesian grid of geometry
    /// parameters.
    Sweep(SweepArgs),
}

/// Output format of the result tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Inclusive numeric range `lo:hi:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut k = 0u64;
        loop {
            let v = self.lo + self.step * k as f64;
            if v > self.hi + 1e-9 * self.step {
                break;
            }
            out.push(v);
            k += 1;
        }
        out
    }
}

pub fn parse_range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected lo:hi:step, got '{s}'"));
    }
    let lo: f64 = parts[0].parse().map_err(|_| format!("bad number '{}'", parts[0]))?;
    let hi: f64 = parts[1].parse().map_err(|_| format!("bad number '{}'", parts[1]))?;
    let step: f64 = parts[2].parse().map_err(|_| format!("bad number '{}'", parts[2]))?;
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
        return Err(format!("invalid range '{s}' (need hi >= lo and step > 0)"));
    }
    Ok(Range { lo, hi, step })
}

/// One sweep axis, `name=lo:hi:step` with a geometry parameter name from
/// {a, b, t, l, R, d, n, H}.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub key: SweepKey,
    pub range: Range,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SweepKey {
    A,
    B,
    T,
    L,
    BigR,
    D,
    N,
    HFlat,
}

impl SweepKey {
    pub fn name(&self) -> &'static str {
        match self {
            SweepKey::A => "a",
            SweepKey::B => "b",
            SweepKey::T => "t",
            SweepKey::L => "l",
            SweepKey::BigR => "R",
            SweepKey::D => "d",
            SweepKey::N => "n",
            SweepKey::HFlat => "H",
        }
    }
}

pub fn parse_sweep_axis(s: &str) -> Result<SweepAxis, String> {
    let (key, range) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=lo:hi:step, got '{s}'"))?;
    let key = match key {
        "a" => SweepKey::A,
        "b" => SweepKey::B,
        "t" => SweepKey::T,
        "l" => SweepKey::L,
        "R" => SweepKey::BigR,
        "d" => SweepKey::D,
        "n" => SweepKey::N,
        "H" => SweepKey::HFlat,
        other => {
            return Err(format!(
                "unknown sweep parameter '{other}' (expected one of a, b, t, l, R, d, n, H)"
            ))
        }
    };
    let range = parse_range(range)?;
    if key == SweepKey::N {
        for v in range.values() {
            if v.fract() != 0.0 || v < 2.0 {
                return Err(format!("segment counts must be integers >= 2, got {v}"));
            }
        }
    }
    Ok(SweepAxis { key, range })
}

/// Arguments shared by the model-evaluation commands.
#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Geometry JSON file; defaults to geometry.json in $ACTUATOR_CONFIG_DIR.
    #[arg(long)]
    pub geometry: Option<PathBuf>,

    /// Shear modulus, MPa.
    #[arg(long, default_value_t = 0.07, conflicts_with = "params")]
    pub mu: f64,

    /// Friction torque limit per joint, N·mm.
    #[arg(long = "mf-max", default_value_t = 5.0, conflicts_with = "params")]
    pub mf_max: f64,

    /// JSON file with calibrated parameters (fields mu_mpa, mf_max_nmm),
    /// e.g. the output of `calibrate`.
    #[arg(long)]
    pub params: Option<PathBuf>,

    /// Pressure grid lo:hi:step in kPa.
    #[arg(long, value_parser = parse_range, default_value = "0:130:1")]
    pub pressures: Range,

    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Joint-angle grid lo:hi:step in degrees; defaults to the 61-point
    /// uniform grid over (0°, 30°] used by the error metric.
    #[arg(long = "grid-deg", value_parser = parse_range)]
    pub grid_deg: Option<Range>,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// Geometry JSON file; defaults to geometry.json in $ACTUATOR_CONFIG_DIR.
    #[arg(long)]
    pub geometry: Option<PathBuf>,

    /// Experiment CSV file (repeatable); header pressure_kpa,angle_deg or
    /// pressure_kpa,force_n.
    #[arg(long = "data", required = true)]
    pub data: Vec<PathBuf>,

    /// Output path for the fit report JSON; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Sweep axis name=lo:hi:step over a, b, t, l, R, d, n, H (repeatable).
    #[arg(long = "sweep", value_parser = parse_sweep_axis, required = true)]
    pub axes: Vec<SweepAxis>,
}
