//! Run configuration, figure presets, and result output.
//!
//! A run is described by a single JSON document with four sections —
//! `scenario`, `sweep`, `optimizer`, `output` — every field of which has a
//! default, so `{}` is a valid config (a 64-point Ω sweep of the CHSH
//! value of the maximally entangled two-qubit scenario). The CSV schema
//! (`omega_rad,bell_value,converged`, 12 significant digits) is the stable
//! output contract; JSON and SVG are convenience formats.
//!
//! All angles are radians. Sweep grids live in [0, π/2): the upper end of
//! the default grid stops short of π/2, the light-speed limit where the
//! Wigner angle is unattainable.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bell::BellFunctional;
use crate::optimize::{self, OptimizerOptions, SweepPoint};
use crate::relativity::wigner_angle;
use crate::scenario::{
    make_generalized_ghz_spin, make_generalized_w_spin, MomentumScenario, MomentumSetting,
};

/// Default sweep grid: 64 points on [0, 0.999·π/2].
pub const DEFAULT_STEPS: usize = 64;
/// Upper end of the default Ω grid, strictly below π/2.
pub fn default_omega_max() -> f64 {
    0.999 * std::f64::consts::FRAC_PI_2
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl From<serde_json::Error> for RunError {
    fn from(err: serde_json::Error) -> Self {
        RunError::Config(err.to_string())
    }
}

fn config_err(msg: impl Into<String>) -> RunError {
    RunError::Config(msg.into())
}

/// Spin-state family of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFamily {
    /// `cos θ_s|0…0⟩ + sin θ_s|1…1⟩`
    Ghz,
    /// `sin θ_s cos φ_s|001⟩ + sin θ_s sin φ_s|010⟩ + cos θ_s|100⟩`
    W,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub family: StateFamily,
    pub momentum_setting: MomentumSetting,
    /// Momentum-branch mixing angle θ_m (radians).
    pub theta_m: f64,
    /// Spin-state angle θ_s (radians).
    pub theta_s: f64,
    /// Second spin angle φ_s (radians); used by the W family only.
    pub phi_s: f64,
    /// Common particle speed |u| (fraction of c); only needed in
    /// speed-sweep mode.
    pub particle_speed: Option<f64>,
    /// Observer speed |v|; informational in Ω-sweep mode.
    pub observer_speed: Option<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            family: StateFamily::Ghz,
            momentum_setting: MomentumSetting::TwoOpposite,
            theta_m: std::f64::consts::FRAC_PI_4,
            theta_s: std::f64::consts::FRAC_PI_4,
            phi_s: 0.0,
            particle_speed: None,
            observer_speed: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// Sweep the Wigner angle Ω directly.
    Omega,
    /// Sweep the observer speed and convert to Ω via the particle speed.
    Speed,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub omega_min: f64,
    pub omega_max: f64,
    /// Number of grid points (both endpoints included when steps > 1).
    pub steps: usize,
    /// Observer-speed range for speed mode.
    pub observer_speed_min: f64,
    pub observer_speed_max: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            mode: SweepMode::Omega,
            omega_min: 0.0,
            omega_max: default_omega_max(),
            steps: DEFAULT_STEPS,
            observer_speed_min: 0.0,
            observer_speed_max: 0.99,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: PathBuf,
    pub format: OutputFormat,
    pub svg: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            path: PathBuf::from("out"),
            format: OutputFormat::Csv,
            svg: false,
        }
    }
}

/// A complete run description; the unit of reproducibility.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    pub sweep: SweepConfig,
    pub optimizer: OptimizerOptions,
    pub output: OutputConfig,
}

impl RunConfig {
    /// Checks every field, naming the offending one in the error.
    pub fn validate(&self) -> Result<(), RunError> {
        let s = &self.scenario;
        for (name, angle) in [
            ("scenario.theta_m", s.theta_m),
            ("scenario.theta_s", s.theta_s),
            ("scenario.phi_s", s.phi_s),
        ] {
            if !angle.is_finite() {
                return Err(config_err(format!("{name} must be finite")));
            }
        }
        if s.family == StateFamily::W && s.momentum_setting.n_qubits() != 3 {
            return Err(config_err(
                "scenario.family 'w' requires a three-particle momentum_setting",
            ));
        }
        for (name, speed) in [
            ("scenario.particle_speed", s.particle_speed),
            ("scenario.observer_speed", s.observer_speed),
        ] {
            if let Some(v) = speed {
                if !v.is_finite() || !(0.0..1.0).contains(&v) {
                    return Err(config_err(format!("{name} must lie in [0, 1)")));
                }
            }
        }

        let w = &self.sweep;
        if w.steps < 1 {
            return Err(config_err("sweep.steps must be at least 1"));
        }
        if w.steps > 100_000 {
            return Err(config_err("sweep.steps must be at most 100000"));
        }
        match w.mode {
            SweepMode::Omega => {
                let half_pi = std::f64::consts::FRAC_PI_2;
                if !w.omega_min.is_finite() || !w.omega_max.is_finite() {
                    return Err(config_err("sweep.omega_min/omega_max must be finite"));
                }
                if w.omega_min < 0.0 || w.omega_max >= half_pi || w.omega_min > w.omega_max {
                    return Err(config_err(
                        "sweep.omega_min/omega_max must satisfy 0 ≤ min ≤ max < π/2",
                    ));
                }
            }
            SweepMode::Speed => {
                if s.particle_speed.is_none() {
                    return Err(config_err(
                        "sweep.mode 'speed' requires scenario.particle_speed",
                    ));
                }
                let (lo, hi) = (w.observer_speed_min, w.observer_speed_max);
                if !lo.is_finite() || !hi.is_finite() || lo < 0.0 || hi >= 1.0 || lo > hi {
                    return Err(config_err(
                        "sweep.observer_speed_min/max must satisfy 0 ≤ min ≤ max < 1",
                    ));
                }
            }
        }

        let o = &self.optimizer;
        if o.multistarts < 1 || o.multistarts > 100_000 {
            return Err(config_err("optimizer.multistarts must be in [1, 100000]"));
        }
        if o.max_iters < 1 || o.max_iters > 10_000_000 {
            return Err(config_err("optimizer.max_iters must be in [1, 10000000]"));
        }
        if !o.tol.is_finite() || o.tol <= 0.0 {
            return Err(config_err("optimizer.tol must be a positive number"));
        }
        Ok(())
    }

    /// The Ω grid this config describes (monotone, within [0, π/2)).
    pub fn omega_grid(&self) -> Result<Vec<f64>, RunError> {
        self.validate()?;
        let w = &self.sweep;
        Ok(match w.mode {
            SweepMode::Omega => linspace(w.omega_min, w.omega_max, w.steps),
            SweepMode::Speed => {
                let u = self.scenario.particle_speed.expect("validated");
                linspace(w.observer_speed_min, w.observer_speed_max, w.steps)
                    .into_iter()
                    .map(|v| wigner_angle(u, v).expect("speeds validated"))
                    .collect()
            }
        })
    }

    /// Builds the scenario and picks the matching functional (CHSH for
    /// two qubits, the 17-term inequality for three).
    pub fn build(&self) -> Result<(MomentumScenario, BellFunctional), RunError> {
        self.validate()?;
        let s = &self.scenario;
        let n = s.momentum_setting.n_qubits();
        let spin = match s.family {
            StateFamily::Ghz => make_generalized_ghz_spin(n, s.theta_s)
                .map_err(|e| config_err(e.to_string()))?,
            StateFamily::W => make_generalized_w_spin(s.theta_s, s.phi_s),
        };
        let scenario = MomentumScenario::from_setting(
            s.momentum_setting,
            s.theta_m,
            spin,
            s.particle_speed.unwrap_or(0.5),
            s.observer_speed,
        )
        .map_err(|e| config_err(e.to_string()))?;
        let functional = if n == 2 {
            BellFunctional::chsh()
        } else {
            BellFunctional::i3()
        };
        Ok((scenario, functional))
    }
}

/// Parses and validates a config document. Never panics, whatever the
/// input bytes are.
pub fn parse_config(bytes: &[u8]) -> Result<RunConfig, RunError> {
    let config: RunConfig = serde_json::from_slice(bytes)?;
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<RunConfig, RunError> {
    let bytes = fs::read(path)?;
    parse_config(&bytes)
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Result of a single-point run.
#[derive(Debug, Clone, Serialize)]
pub struct PointRecord {
    pub omega_rad: f64,
    pub bell_value: f64,
    pub converged: bool,
    pub argmax_angles: Vec<f64>,
}

/// Optimized value at the first grid point of the config.
pub fn run_point(config: &RunConfig) -> Result<PointRecord, RunError> {
    let (scenario, functional) = config.build()?;
    let grid = config.omega_grid()?;
    let rho = scenario
        .transform(grid[0])
        .map_err(|e| config_err(e.to_string()))?;
    let result = optimize::maximize(&functional, &rho, &config.optimizer)
        .map_err(|e| config_err(e.to_string()))?;
    Ok(PointRecord {
        omega_rad: grid[0],
        bell_value: result.value,
        converged: result.converged,
        argmax_angles: result.settings.angles().to_vec(),
    })
}

/// Full sweep over the config's grid.
pub fn run_sweep(config: &RunConfig) -> Result<Vec<SweepPoint>, RunError> {
    let (scenario, functional) = config.build()?;
    let grid = config.omega_grid()?;
    optimize::sweep(&functional, &scenario, &grid, &config.optimizer)
        .map_err(|e| config_err(e.to_string()))
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

/// Renders with 12 significant digits.
fn sig12(x: f64) -> String {
    format!("{:.11e}", x)
}

/// Writes via a temp file and an atomic rename, so an interrupted run
/// leaves no partially written final file.
fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("omega_rad,bell_value,converged\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{}\n",
            sig12(p.omega),
            sig12(p.value),
            p.converged
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonRow {
    omega_rad: f64,
    bell_value: f64,
    converged: bool,
}

fn sweep_json(points: &[SweepPoint]) -> String {
    let rows: Vec<JsonRow> = points
        .iter()
        .map(|p| JsonRow {
            omega_rad: p.omega,
            bell_value: p.value,
            converged: p.converged,
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("serializable rows");
    s.push('\n');
    s
}

/// Writes a sweep table (and optional SVG) into the config's output
/// directory under `name`; returns the written paths.
pub fn write_sweep(
    points: &[SweepPoint],
    config: &RunConfig,
    name: &str,
) -> Result<Vec<PathBuf>, RunError> {
    let dir = &config.output.path;
    let mut written = Vec::new();
    let data_path = match config.output.format {
        OutputFormat::Csv => {
            let p = dir.join(format!("{name}.csv"));
            write_atomic(&p, sweep_csv(points).as_bytes())?;
            p
        }
        OutputFormat::Json => {
            let p = dir.join(format!("{name}.json"));
            write_atomic(&p, sweep_json(points).as_bytes())?;
            p
        }
    };
    written.push(data_path);
    if config.output.svg {
        let p = dir.join(format!("{name}.svg"));
        write_atomic(
            &p,
            svg_plot(name, &[(name.to_string(), points.to_vec())]).as_bytes(),
        )?;
        written.push(p);
    }
    Ok(written)
}

/// Writes a point record; returns the written path.
pub fn write_point(record: &PointRecord, config: &RunConfig) -> Result<PathBuf, RunError> {
    let dir = &config.output.path;
    let path = match config.output.format {
        OutputFormat::Csv => {
            let mut out = String::from("omega_rad,bell_value,converged\n");
            out.push_str(&format!(
                "{},{},{}\n",
                sig12(record.omega_rad),
                sig12(record.bell_value),
                record.converged
            ));
            let p = dir.join("point.csv");
            write_atomic(&p, out.as_bytes())?;
            p
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(record).expect("serializable record");
            s.push('\n');
            let p = dir.join("point.json");
            write_atomic(&p, s.as_bytes())?;
            p
        }
    };
    Ok(path)
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

/// The four bundled figure reproductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigurePreset {
    /// CHSH of the two-qubit scenario, both momentum settings, two
    /// parameter pairs.
    Fig1,
    /// 17-term functional of the three-qubit GHZ scenario in the
    /// symmetric momentum setting.
    Fig2,
    /// Same setting with generalized W spin states.
    Fig3,
    /// GHZ scenario in the collinear (three-same) momentum setting.
    Fig4,
}

pub const ALL_PRESETS: [FigurePreset; 4] = [
    FigurePreset::Fig1,
    FigurePreset::Fig2,
    FigurePreset::Fig3,
    FigurePreset::Fig4,
];

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
        })
    }
}

impl FromStr for FigurePreset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fig1" => Ok(Self::Fig1),
            "fig2" => Ok(Self::Fig2),
            "fig3" => Ok(Self::Fig3),
            "fig4" => Ok(Self::Fig4),
            other => Err(format!(
                "unknown preset '{other}' (valid presets: fig1, fig2, fig3, fig4)"
            )),
        }
    }
}

/// One curve of a figure: a scenario parameter set swept over the default
/// Ω grid.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub family: StateFamily,
    pub setting: MomentumSetting,
    pub theta_m: f64,
    pub theta_s: f64,
    pub phi_s: f64,
}

impl CurveSpec {
    /// Stable file-name stem, e.g. `two-opposite_tm0.785398_ts0.785398`.
    pub fn label(&self) -> String {
        let mut label = format!(
            "{}_tm{:.6}_ts{:.6}",
            self.setting.name(),
            self.theta_m,
            self.theta_s
        );
        if self.family == StateFamily::W {
            label.push_str(&format!("_ps{:.6}", self.phi_s));
        }
        label
    }

    fn to_config(&self, optimizer: &OptimizerOptions) -> RunConfig {
        RunConfig {
            scenario: ScenarioConfig {
                family: self.family,
                momentum_setting: self.setting,
                theta_m: self.theta_m,
                theta_s: self.theta_s,
                phi_s: self.phi_s,
                particle_speed: None,
                observer_speed: None,
            },
            sweep: SweepConfig::default(),
            optimizer: optimizer.clone(),
            output: OutputConfig::default(),
        }
    }
}

/// The exact parameter sets of each figure, in output order.
pub fn figure_curves(preset: FigurePreset) -> Vec<CurveSpec> {
    use std::f64::consts::{FRAC_PI_4, PI};
    let thirds = [FRAC_PI_4, PI / 8.0, PI / 16.0];
    match preset {
        FigurePreset::Fig1 => {
            let mut curves = Vec::new();
            for setting in [MomentumSetting::TwoOpposite, MomentumSetting::TwoSame] {
                for theta_s in [FRAC_PI_4, PI / 16.0] {
                    curves.push(CurveSpec {
                        family: StateFamily::Ghz,
                        setting,
                        theta_m: FRAC_PI_4,
                        theta_s,
                        phi_s: 0.0,
                    });
                }
            }
            curves
        }
        FigurePreset::Fig2 | FigurePreset::Fig4 => {
            let setting = if preset == FigurePreset::Fig2 {
                MomentumSetting::ThreeSymmetric
            } else {
                MomentumSetting::ThreeSame
            };
            let mut curves = Vec::new();
            for theta_m in thirds {
                for theta_s in thirds {
                    curves.push(CurveSpec {
                        family: StateFamily::Ghz,
                        setting,
                        theta_m,
                        theta_s,
                        phi_s: 0.0,
                    });
                }
            }
            // right panel: near-separable spin state
            curves.push(CurveSpec {
                family: StateFamily::Ghz,
                setting,
                theta_m: FRAC_PI_4,
                theta_s: PI / 128.0,
                phi_s: 0.0,
            });
            curves
        }
        FigurePreset::Fig3 => {
            let spin_pairs = [
                ((1.0f64 / 3.0f64.sqrt()).acos(), FRAC_PI_4),
                (7.0 * PI / 16.0, FRAC_PI_4),
                (7.0 * PI / 16.0, PI / 16.0),
            ];
            let mut curves = Vec::new();
            for theta_m in thirds {
                for (theta_s, phi_s) in spin_pairs {
                    curves.push(CurveSpec {
                        family: StateFamily::W,
                        setting: MomentumSetting::ThreeSymmetric,
                        theta_m,
                        theta_s,
                        phi_s,
                    });
                }
            }
            // right panel: near-biseparable W state
            curves.push(CurveSpec {
                family: StateFamily::W,
                setting: MomentumSetting::ThreeSymmetric,
                theta_m: FRAC_PI_4,
                theta_s: 15.0 * PI / 32.0,
                phi_s: PI / 32.0,
            });
            curves
        }
    }
}

/// Computes every curve of a preset over the default grid.
pub fn compute_figure(
    preset: FigurePreset,
    optimizer: &OptimizerOptions,
) -> Result<Vec<(CurveSpec, Vec<SweepPoint>)>, RunError> {
    figure_curves(preset)
        .into_iter()
        .map(|curve| {
            let config = curve.to_config(optimizer);
            let points = run_sweep(&config)?;
            Ok((curve, points))
        })
        .collect()
}

/// Writes precomputed figure curves: one CSV (or JSON) per curve into
/// `out_dir/<preset>/`, plus an optional SVG overlay with the classical
/// bound drawn at 1. Returns the written paths in output order.
pub fn write_figure(
    preset: FigurePreset,
    curves: &[(CurveSpec, Vec<SweepPoint>)],
    out_dir: &Path,
    format: OutputFormat,
    svg: bool,
) -> Result<Vec<PathBuf>, RunError> {
    let dir = out_dir.join(preset.to_string());
    let mut written = Vec::new();
    for (curve, points) in curves {
        let path = match format {
            OutputFormat::Csv => {
                let p = dir.join(format!("{}.csv", curve.label()));
                write_atomic(&p, sweep_csv(points).as_bytes())?;
                p
            }
            OutputFormat::Json => {
                let p = dir.join(format!("{}.json", curve.label()));
                write_atomic(&p, sweep_json(points).as_bytes())?;
                p
            }
        };
        written.push(path);
    }
    if svg {
        let named: Vec<(String, Vec<SweepPoint>)> = curves
            .iter()
            .map(|(c, p)| (c.label(), p.clone()))
            .collect();
        let p = out_dir.join(format!("{preset}.svg"));
        write_atomic(&p, svg_plot(&preset.to_string(), &named).as_bytes())?;
        written.push(p);
    }
    Ok(written)
}

/// Computes and writes a figure preset; see [`compute_figure`] and
/// [`write_figure`].
pub fn run_figures(
    preset: FigurePreset,
    out_dir: &Path,
    optimizer: &OptimizerOptions,
    format: OutputFormat,
    svg: bool,
) -> Result<Vec<PathBuf>, RunError> {
    let curves = compute_figure(preset, optimizer)?;
    write_figure(preset, &curves, out_dir, format, svg)
}

// ---------------------------------------------------------------------------
// SVG rendering (best effort, no byte-level contract)
// ---------------------------------------------------------------------------

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

fn svg_plot(title: &str, curves: &[(String, Vec<SweepPoint>)]) -> String {
    let (width, height) = (720.0, 480.0);
    let (left, right, top, bottom) = (60.0, 20.0, 30.0, 40.0);
    let plot_w = width - left - right;
    let plot_h = height - top - bottom;

    let x_max = std::f64::consts::FRAC_PI_2;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for (_, points) in curves {
        for p in points {
            y_min = y_min.min(p.value);
            y_max = y_max.max(p.value);
        }
    }
    y_min = (y_min.min(1.0) - 0.05).max(0.0);
    y_max = y_max.max(1.0) + 0.05;

    let map_x = |omega: f64| left + plot_w * omega / x_max;
    let map_y = |v: f64| top + plot_h * (1.0 - (v - y_min) / (y_max - y_min));

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">{title}</text>\n",
        left + plot_w / 2.0
    ));
    // frame
    svg.push_str(&format!(
        "<rect x=\"{left}\" y=\"{top}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"black\"/>\n"
    ));
    // axis ticks
    for i in 0..=3 {
        let omega = x_max * i as f64 / 3.0;
        let x = map_x(omega);
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            top + plot_h,
            top + plot_h + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{omega:.2}</text>\n",
            top + plot_h + 18.0
        ));
    }
    for i in 0..=4 {
        let v = y_min + (y_max - y_min) * i as f64 / 4.0;
        let y = map_y(v);
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{left}\" y2=\"{y:.1}\" stroke=\"black\"/>\n",
            left - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{v:.3}</text>\n",
            left - 8.0,
            y + 4.0
        ));
    }
    // classical bound
    let y_bound = map_y(1.0);
    svg.push_str(&format!(
        "<line x1=\"{left}\" y1=\"{y_bound:.2}\" x2=\"{:.1}\" y2=\"{y_bound:.2}\" \
         stroke=\"black\" stroke-dasharray=\"6,4\"/>\n",
        left + plot_w
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\">classical \
         bound</text>\n",
        left + 6.0,
        y_bound - 5.0
    ));
    // curves
    for (idx, (label, points)) in curves.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut path = String::new();
        for p in points {
            path.push_str(&format!("{:.2},{:.2} ", map_x(p.omega), map_y(p.value)));
        }
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\">\
             <title>{label}</title></polyline>\n",
            path.trim_end()
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
