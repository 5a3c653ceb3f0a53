//! Command implementations and deterministic CSV/JSON emission.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use hybrid_actuator::calibration::{fit_parameters_joint, ExperimentDataset};
use hybrid_actuator::geometry::{inflate, ActuatorGeometry};
use hybrid_actuator::kinematics;
use hybrid_actuator::material::HyperelasticMaterial;
use hybrid_actuator::oracle::approximation_report;
use hybrid_actuator::quadrature::QuadratureSettings;
use hybrid_actuator::statics::{bending_angle, blocked_force, model_coefficients};
use hybrid_actuator::Error as CoreError;

use crate::cli::{
    CalibrateArgs, Format, ModelArgs, SweepArgs, SweepKey, ValidateArgs, CONFIG_DIR_ENV,
};

/// Worst-case top-wall relative error accepted by `validate-approx`.
pub const TOP_WALL_ERROR_BOUND: f64 = 0.04;

/// Schema version stamped into every output document.
pub const SCHEMA_VERSION: u32 = 1;

/// Errors at the tool boundary, each mapping to a documented exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, missing or invalid configuration/input files: exit 1.
    Usage(String),
    /// Model or validation failure (bound violations, unidentifiable data):
    /// exit 2.
    Validation(String),
    /// Numerical non-convergence: exit 3.
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::NonConvergence(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Validation(m) => write!(f, "validation failure: {m}"),
            CliError::NonConvergence(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::QuadratureNonConvergence { .. }
            | CoreError::OptimizationFailure(_)
            | CoreError::NonFinite(_) => CliError::NonConvergence(e.to_string()),
            CoreError::Unidentifiable(_) => CliError::Validation(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Resolve an input path: as given if it exists, otherwise relative to
/// `$ACTUATOR_CONFIG_DIR`.
fn resolve_input(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    if let Ok(dir) = std::env::var(CONFIG_DIR_ENV) {
        let candidate = Path::new(&dir).join(path);
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}

fn load_geometry(explicit: &Option<PathBuf>) -> CliResult<ActuatorGeometry> {
    let path = match explicit {
        Some(p) => resolve_input(p),
        None => match std::env::var(CONFIG_DIR_ENV) {
            Ok(dir) => Path::new(&dir).join("geometry.json"),
            Err(_) => {
                return Err(CliError::Usage(format!(
                    "no geometry given: pass --geometry <path> or set ${CONFIG_DIR_ENV}"
                )))
            }
        },
    };
    Ok(ActuatorGeometry::from_json_file(&path)?)
}

/// Calibrated parameters accepted from JSON; extra fields (e.g. the rest of
/// a fit report) are ignored.
#[derive(Debug, Deserialize)]
struct ParamsFile {
    mu_mpa: f64,
    mf_max_nmm: f64,
}

fn load_params(args: &ModelArgs) -> CliResult<(f64, f64)> {
    match &args.params {
        None => Ok((args.mu, args.mf_max)),
        Some(path) => {
            let path = resolve_input(path);
            let text = std::fs::read_to_string(&path).map_err(|e| {
                CliError::Usage(format!("cannot read {}: {e}", path.display()))
            })?;
            let p: ParamsFile = serde_json::from_str(&text).map_err(|e| {
                CliError::Usage(format!("bad params file {}: {e}", path.display()))
            })?;
            Ok((p.mu_mpa, p.mf_max_nmm))
        }
    }
}

/// A result table with enough context to make every output self-describing.
struct Table {
    command: &'static str,
    geometry: ActuatorGeometry,
    mu: f64,
    mf_max: f64,
    extra: Vec<(&'static str, f64)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema_version = {SCHEMA_VERSION}");
        let _ = writeln!(out, "# command = {}", self.command);
        let g = &self.geometry;
        for (k, v) in [
            ("a_mm", g.a),
            ("b_mm", g.b),
            ("t_mm", g.t),
            ("l_mm", g.l),
            ("big_r_mm", g.big_r),
            ("d_mm", g.d),
            ("n", g.n as f64),
            ("l_star_mm", g.l_star),
            ("h_flat_mm", g.h_flat),
            ("mu_mpa", self.mu),
            ("mf_max_nmm", self.mf_max),
        ] {
            let _ = writeln!(out, "# {k} = {v}");
        }
        for (k, v) in &self.extra {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    fn to_json(&self) -> String {
        let mut doc = serde_json::Map::new();
        doc.insert("schema_version".into(), SCHEMA_VERSION.into());
        doc.insert("command".into(), self.command.into());
        doc.insert(
            "geometry".into(),
            serde_json::to_value(&self.geometry).expect("geometry serializes"),
        );
        doc.insert(
            "params".into(),
            serde_json::json!({ "mu_mpa": self.mu, "mf_max_nmm": self.mf_max }),
        );
        for (k, v) in &self.extra {
            doc.insert((*k).into(), (*v).into());
        }
        doc.insert("columns".into(), serde_json::json!(self.columns));
        doc.insert("rows".into(), serde_json::json!(self.rows));
        let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(doc))
            .expect("document serializes");
        text.push('\n');
        text
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> CliResult<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
    }
}

fn model_table(
    command: &'static str,
    args: &ModelArgs,
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
    geometry: ActuatorGeometry,
    params: (f64, f64),
    extra: Vec<(&'static str, f64)>,
) -> CliResult<()> {
    let table = Table {
        command,
        geometry,
        mu: params.0,
        mf_max: params.1,
        extra,
        columns,
        rows,
    };
    emit(&table.render(args.format), &args.out)
}

/// `bend`: (pressure_kpa, theta_total_deg, theta_i_deg) over the grid.
pub fn run_bend(args: &ModelArgs) -> CliResult<()> {
    let geom = load_geometry(&args.geometry)?;
    let (mu, mf) = load_params(args)?;
    let inflated = inflate(&geom)?;
    let mat = HyperelasticMaterial::new(mu)?;
    let coeffs = model_coefficients(&geom, &inflated, &mat, mf)?;
    let rows: Vec<Vec<f64>> = args
        .pressures
        .values()
        .into_iter()
        .map(|p_kpa| {
            let (total, per_joint) = bending_angle(p_kpa / 1000.0, &coeffs, geom.n);
            vec![p_kpa, total.to_degrees(), per_joint.to_degrees()]
        })
        .collect();
    let threshold = coeffs.threshold_pressure() * 1000.0;
    model_table(
        "bend",
        args,
        vec!["pressure_kpa", "theta_total_deg", "theta_i_deg"],
        rows,
        geom,
        (mu, mf),
        vec![("threshold_kpa", threshold)],
    )
}

/// `force`: (pressure_kpa, force_n) over the grid.
pub fn run_force(args: &ModelArgs) -> CliResult<()> {
    let geom = load_geometry(&args.geometry)?;
    let (mu, mf) = load_params(args)?;
    let inflated = inflate(&geom)?;
    let mat = HyperelasticMaterial::new(mu)?;
    let coeffs = model_coefficients(&geom, &inflated, &mat, mf)?;
    let rows: Vec<Vec<f64>> = args
        .pressures
        .values()
        .into_iter()
        .map(|p_kpa| vec![p_kpa, blocked_force(p_kpa / 1000.0, &coeffs, geom.l_star)])
        .collect();
    let threshold = coeffs.threshold_pressure() * 1000.0;
    model_table(
        "force",
        args,
        vec!["pressure_kpa", "force_n"],
        rows,
        geom,
        (mu, mf),
        vec![("threshold_kpa", threshold)],
    )
}

/// `trajectory`: (pressure_kpa, tip_x_mm, tip_y_mm, theta_total_deg) with
/// the clamp at the origin.
pub fn run_trajectory(args: &ModelArgs) -> CliResult<()> {
    let geom = load_geometry(&args.geometry)?;
    let (mu, mf) = load_params(args)?;
    let inflated = inflate(&geom)?;
    let mat = HyperelasticMaterial::new(mu)?;
    let coeffs = model_coefficients(&geom, &inflated, &mat, mf)?;
    let pressures = args.pressures.values();
    let traj = kinematics::trajectory(&geom, &coeffs, &pressures)?;
    let rows: Vec<Vec<f64>> = traj
        .samples
        .iter()
        .map(|s| vec![s.pressure_kpa, s.tip_x_mm, s.tip_y_mm, s.theta_total_deg])
        .collect();
    model_table(
        "trajectory",
        args,
        vec!["pressure_kpa", "tip_x_mm", "tip_y_mm", "theta_total_deg"],
        rows,
        geom,
        (mu, mf),
        vec![],
    )
}

/// `validate-approx`: approximation report plus the 4% top-wall gate.
pub fn run_validate(args: &ValidateArgs) -> CliResult<()> {
    let geom = load_geometry(&args.model.geometry)?;
    let (mu, mf) = load_params(&args.model)?;
    let inflated = inflate(&geom)?;
    let mat = HyperelasticMaterial::new(mu)?;
    let grid: Vec<f64> = match &args.grid_deg {
        Some(r) => r.values(),
        // default: the 61-point uniform metric grid over (0°, 30°]
        None => (1..=61).map(|k| 30.0 * k as f64 / 61.0).collect(),
    };
    let report = approximation_report(
        &geom,
        &inflated,
        &mat,
        &grid,
        &QuadratureSettings::default(),
    )?;
    let max_top = report.max_top_rel_err();
    let max_bottom = report.max_bottom_rel_err();
    let rows: Vec<Vec<f64>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.theta_deg,
                r.m_t_exact,
                r.m_t_approx,
                r.m_t_rel_err,
                r.m_b_exact,
                r.m_b_approx,
                r.m_b_rel_err,
            ]
        })
        .collect();
    model_table(
        "validate-approx",
        &args.model,
        vec![
            "theta_deg",
            "m_t_exact",
            "m_t_approx",
            "m_t_rel_err",
            "m_b_exact",
            "m_b_approx",
            "m_b_rel_err",
        ],
        rows,
        geom,
        (mu, mf),
        vec![
            ("max_top_rel_err", max_top),
            ("max_bottom_rel_err", max_bottom),
            ("top_rel_err_bound", TOP_WALL_ERROR_BOUND),
        ],
    )?;
    if max_top >= TOP_WALL_ERROR_BOUND {
        return Err(CliError::Validation(format!(
            "top-wall approximation error {:.2}% exceeds the {:.0}% bound",
            100.0 * max_top,
            100.0 * TOP_WALL_ERROR_BOUND
        )));
    }
    Ok(())
}

/// `calibrate`: joint least-squares fit over all given datasets; emits the
/// fit report as JSON.
pub fn run_calibrate(args: &CalibrateArgs) -> CliResult<()> {
    let geom = load_geometry(&args.geometry)?;
    let datasets: Vec<ExperimentDataset> = args
        .data
        .iter()
        .map(|p| ExperimentDataset::from_csv_file(&resolve_input(p), geom.n))
        .collect::<Result<_, _>>()?;
    let (_, report) = fit_parameters_joint(&datasets, &geom)?;

    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    if let serde_json::Value::Object(fields) =
        serde_json::to_value(&report).expect("report serializes")
    {
        doc.extend(fields);
    }
    let mut text =
        serde_json::to_string_pretty(&serde_json::Value::Object(doc)).expect("doc serializes");
    text.push('\n');
    emit(&text, &args.out)
}

/// `sweep`: Cartesian product over the requested axes, rows in lexicographic
/// order of the canonical parameter order (a, b, t, l, R, d, n, H); metrics
/// are evaluated at the top of the pressure grid.
pub fn run_sweep(args: &SweepArgs) -> CliResult<()> {
    let base = load_geometry(&args.model.geometry)?;
    let (mu, mf) = load_params(&args.model)?;
    let mat = HyperelasticMaterial::new(mu)?;

    let mut axes = args.axes.clone();
    axes.sort_by_key(|axis| axis.key);
    for pair in axes.windows(2) {
        if pair[0].key == pair[1].key {
            return Err(CliError::Usage(format!(
                "duplicate sweep parameter '{}'",
                pair[0].key.name()
            )));
        }
    }
    let grids: Vec<(SweepKey, Vec<f64>)> = axes
        .iter()
        .map(|axis| (axis.key, axis.range.values()))
        .collect();
    if grids.iter().any(|(_, vs)| vs.is_empty()) {
        return Err(CliError::Usage("empty sweep range".to_string()));
    }

    // Cartesian product in canonical order, last axis fastest.
    let mut combos: Vec<Vec<f64>> = vec![vec![]];
    for (_, values) in &grids {
        let mut next = Vec::with_capacity(combos.len() * values.len());
        for combo in &combos {
            for &v in values {
                let mut c = combo.clone();
                c.push(v);
                next.push(c);
            }
        }
        combos = next;
    }

    // metrics are evaluated at the highest grid pressure
    let p_eval_kpa = *args
        .model
        .pressures
        .values()
        .last()
        .ok_or_else(|| CliError::Usage("empty pressure grid".to_string()))?;

    let results: Vec<CliResult<Vec<f64>>> = combos
        .par_iter()
        .map(|combo| {
            let mut geom = base.clone();
            for ((key, _), &value) in grids.iter().zip(combo) {
                match key {
                    SweepKey::A => geom.a = value,
                    SweepKey::B => geom.b = value,
                    SweepKey::T => geom.t = value,
                    SweepKey::L => geom.l = value,
                    SweepKey::BigR => geom.big_r = value,
                    SweepKey::D => geom.d = value,
                    SweepKey::N => geom.n = value as u32,
                    SweepKey::HFlat => geom.h_flat = value,
                }
            }
            geom.validate().map_err(CliError::from)?;
            let inflated = inflate(&geom)?;
            let coeffs = model_coefficients(&geom, &inflated, &mat, mf)?;
            let (total, per_joint) = bending_angle(p_eval_kpa / 1000.0, &coeffs, geom.n);
            let force = blocked_force(p_eval_kpa / 1000.0, &coeffs, geom.l_star);
            Ok(vec![
                geom.a,
                geom.b,
                geom.t,
                geom.l,
                geom.big_r,
                geom.d,
                geom.n as f64,
                geom.h_flat,
                coeffs.threshold_pressure() * 1000.0,
                total.to_degrees(),
                per_joint.to_degrees(),
                force,
            ])
        })
        .collect();
    let rows: Vec<Vec<f64>> = results.into_iter().collect::<CliResult<_>>()?;

    model_table(
        "sweep",
        &args.model,
        vec![
            "a_mm",
            "b_mm",
            "t_mm",
            "l_mm",
            "big_r_mm",
            "d_mm",
            "n",
            "h_flat_mm",
            "threshold_kpa",
            "theta_total_deg",
            "theta_i_deg",
            "force_n",
        ],
        rows,
        base,
        (mu, mf),
        vec![("pressure_eval_kpa", p_eval_kpa)],
    )
}
