//! Run configuration and the `simulate`, `sweep` and `verify` drivers used
//! by the `cavity-purity` binary.
//!
//! Configuration is layered: built-in defaults, then an optional JSON file,
//! then command-line flags.

use std::f64::consts::PI;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::closed_form::amplitudes_closed;
use crate::error::{Error, Result};
use crate::features::{detect_features, FeatureReport};
use crate::model::{ModelParams, DEFAULT_TAIL_TOLERANCE};
use crate::observables::{time_grid, Backend, Dynamics, ObservableSeries};
use crate::oracle::SectorPropagator;

pub const CSV_HEADER: &str =
    "tau,purity_direct,purity_eq8,linear_entropy,von_neumann_entropy,field_purity,mean_n,p_ee,p_eg,p_ge,p_gg";

pub const DEFAULT_MEAN_PHOTONS: f64 = 50.0;
pub const DEFAULT_RATIO: f64 = 0.5;
pub const DEFAULT_STEPS: usize = 2000;
pub const DEFAULT_SIMULATION_OUT: &str = "simulation.csv";
pub const DEFAULT_SWEEP_OUT: &str = "sweep";

pub const VERIFY_TOLERANCE: f64 = 1e-8;
pub const VERIFY_MAX_SECTOR: usize = 40;
pub const VERIFY_RATIOS: [f64; 7] = [0.0, 1e-6, 0.1, 0.5, 0.999999, 1.0, 2.0];
pub const VERIFY_TAU_END: f64 = 50.0;
pub const VERIFY_TAU_SAMPLES: usize = 50;

pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Every configurable value, all optional. Used both as the JSON config
/// file schema and as the flag set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    /// Initial mean photon number of the coherent field
    #[arg(long)]
    pub nbar: Option<f64>,
    /// Coupling ratio R = g2 / g1
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Coherent-state phase in radians
    #[arg(long)]
    pub phase: Option<f64>,
    /// First scaled time g1 t
    #[arg(long)]
    pub tau_start: Option<f64>,
    /// Last scaled time (default 3 pi sqrt(max(nbar, 1)))
    #[arg(long)]
    pub tau_end: Option<f64>,
    /// Number of time points
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_enum)]
    pub backend: Option<Backend>,
    /// Output CSV (simulate) or directory (sweep)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub sweep_ratios: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub sweep_nbars: Option<Vec<f64>>,
    /// Admissible Poisson mass above the Fock truncation
    #[arg(long)]
    pub tail_tol: Option<f64>,
}

impl ConfigOverrides {
    fn layered_over(self, base: ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            nbar: self.nbar.or(base.nbar),
            ratio: self.ratio.or(base.ratio),
            phase: self.phase.or(base.phase),
            tau_start: self.tau_start.or(base.tau_start),
            tau_end: self.tau_end.or(base.tau_end),
            steps: self.steps.or(base.steps),
            backend: self.backend.or(base.backend),
            out: self.out.or(base.out),
            sweep_ratios: self.sweep_ratios.or(base.sweep_ratios),
            sweep_nbars: self.sweep_nbars.or(base.sweep_nbars),
            tail_tol: self.tail_tol.or(base.tail_tol),
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mean_photons: f64,
    pub r_ratio: f64,
    pub phase: f64,
    pub tau_start: f64,
    /// `None` selects `3 pi sqrt(max(nbar, 1))` per parameter point.
    pub tau_end: Option<f64>,
    pub tau_steps: usize,
    pub backend: Backend,
    pub tail_tolerance: f64,
    pub out: Option<PathBuf>,
    pub sweep_ratios: Vec<f64>,
    pub sweep_nbars: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mean_photons: DEFAULT_MEAN_PHOTONS,
            r_ratio: DEFAULT_RATIO,
            phase: 0.0,
            tau_start: 0.0,
            tau_end: None,
            tau_steps: DEFAULT_STEPS,
            backend: Backend::ClosedForm,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
            out: None,
            sweep_ratios: Vec::new(),
            sweep_nbars: Vec::new(),
        }
    }
}

impl RunConfig {
    /// Defaults, overlaid by the file values, overlaid by the flags.
    pub fn resolve(file: Option<ConfigOverrides>, flags: ConfigOverrides) -> Result<Self> {
        let merged = flags.layered_over(file.unwrap_or_default());
        let d = RunConfig::default();
        let config = RunConfig {
            mean_photons: merged.nbar.unwrap_or(d.mean_photons),
            r_ratio: merged.ratio.unwrap_or(d.r_ratio),
            phase: merged.phase.unwrap_or(d.phase),
            tau_start: merged.tau_start.unwrap_or(d.tau_start),
            tau_end: merged.tau_end,
            tau_steps: merged.steps.unwrap_or(d.tau_steps),
            backend: merged.backend.unwrap_or(d.backend),
            tail_tolerance: merged.tail_tol.unwrap_or(d.tail_tolerance),
            out: merged.out,
            sweep_ratios: merged.sweep_ratios.unwrap_or_default(),
            sweep_nbars: merged.sweep_nbars.unwrap_or_default(),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tau_steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "steps must be >= 2, got {}",
                self.tau_steps
            )));
        }
        if !(self.tau_start.is_finite() && self.tau_start >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tau_start must be >= 0, got {}",
                self.tau_start
            )));
        }
        for nbar in self.nbars() {
            let end = self.tau_end_for(nbar);
            if !(end.is_finite() && end > self.tau_start) {
                return Err(Error::InvalidConfig(format!(
                    "tau_end ({end}) must exceed tau_start ({})",
                    self.tau_start
                )));
            }
        }
        for r in self.ratios() {
            for nbar in self.nbars() {
                self.params_for(r, nbar)?;
            }
        }
        Ok(())
    }

    pub fn tau_end_for(&self, mean_photons: f64) -> f64 {
        self.tau_end
            .unwrap_or_else(|| 3.0 * PI * mean_photons.max(1.0).sqrt())
    }

    pub fn time_grid_for(&self, mean_photons: f64) -> Vec<f64> {
        time_grid(
            self.tau_start,
            self.tau_end_for(mean_photons),
            self.tau_steps,
        )
    }

    pub fn params_for(&self, r_ratio: f64, mean_photons: f64) -> Result<ModelParams> {
        ModelParams::new(r_ratio, mean_photons)
            .and_then(|p| p.with_tail_tolerance(self.tail_tolerance))
            .and_then(|p| p.with_phase(self.phase))
            .map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn params(&self) -> Result<ModelParams> {
        self.params_for(self.r_ratio, self.mean_photons)
    }

    fn ratios(&self) -> Vec<f64> {
        if self.sweep_ratios.is_empty() {
            vec![self.r_ratio]
        } else {
            self.sweep_ratios.clone()
        }
    }

    fn nbars(&self) -> Vec<f64> {
        if self.sweep_nbars.is_empty() {
            vec![self.mean_photons]
        } else {
            self.sweep_nbars.clone()
        }
    }
}

/// `%.12g`-style rendering: 12 significant digits, trailing zeros trimmed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn round_sig(x: f64) -> f64 {
    format_sig(x).parse().unwrap_or(x)
}

pub fn write_csv(series: &ObservableSeries, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for p in &series.points {
            let row = [
                p.tau,
                p.purity_direct,
                p.purity_eq8,
                p.linear_entropy,
                p.von_neumann_entropy,
                p.field_purity,
                p.mean_n,
                p.p_ee,
                p.p_eg,
                p.p_ge,
                p.p_gg,
            ]
            .map(format_sig);
            writeln!(out, "{}", row.join(","))?;
        }
        out.flush()
    };
    write().map_err(|e| Error::io(path, e))
}

fn simulate_point(config: &RunConfig, r_ratio: f64, mean_photons: f64) -> Result<ObservableSeries> {
    let params = config.params_for(r_ratio, mean_photons)?;
    Dynamics::new(params, config.backend)?.series(&config.time_grid_for(mean_photons))
}

/// Computes one time series and writes it as CSV.
pub fn run_simulate(config: &RunConfig) -> Result<ObservableSeries> {
    config.validate()?;
    let series = simulate_point(config, config.r_ratio, config.mean_photons)?;
    let path = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_SIMULATION_OUT));
    write_csv(&series, &path)?;
    Ok(series)
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub csv_paths: Vec<PathBuf>,
    pub features_path: PathBuf,
    pub reports: Vec<FeatureReport>,
}

pub fn sweep_csv_name(r_ratio: f64, mean_photons: f64) -> String {
    format!(
        "ratio_{}_nbar_{}.csv",
        format_sig(r_ratio),
        format_sig(mean_photons)
    )
}

/// One CSV per (ratio, nbar) pair plus `features.json`.
pub fn run_sweep(config: &RunConfig) -> Result<SweepOutput> {
    config.validate()?;
    let dir = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_SWEEP_OUT));
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;

    let mut csv_paths = Vec::new();
    let mut reports = Vec::new();
    for nbar in config.nbars() {
        for r in config.ratios() {
            let series = simulate_point(config, r, nbar)?;
            let path = dir.join(sweep_csv_name(r, nbar));
            write_csv(&series, &path)?;
            csv_paths.push(path);
            let report = detect_features(&series).map_err(|e| match e {
                Error::InsufficientSpan { .. } | Error::Domain(_) => {
                    Error::InvalidConfig(format!("ratio {r}, nbar {nbar}: {e}"))
                }
                other => other,
            })?;
            reports.push(report);
        }
    }

    let rounded: Vec<FeatureReport> = reports
        .iter()
        .map(|r| FeatureReport {
            r_ratio: round_sig(r.r_ratio),
            mean_photons: round_sig(r.mean_photons),
            t_revival_predicted: round_sig(r.t_revival_predicted),
            t_revival_measured: round_sig(r.t_revival_measured),
            purity_collapse_min: round_sig(r.purity_collapse_min),
            purity_revival_max: round_sig(r.purity_revival_max),
            collapse_window: r.collapse_window.map(round_sig),
            revival_window: r.revival_window.map(round_sig),
        })
        .collect();
    let features_path = dir.join("features.json");
    let json = serde_json::to_string_pretty(&rounded)?;
    fs::write(&features_path, json + "\n").map_err(|e| Error::io(&features_path, e))?;

    Ok(SweepOutput {
        csv_paths,
        features_path,
        reports,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyReport {
    pub max_deviation: f64,
    pub worst_n: usize,
    pub worst_ratio: f64,
    pub worst_tau: f64,
    pub points_checked: usize,
    pub tolerance: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Closed-form vs. oracle amplitudes over `n = 0..=40`, the configured (or
/// default) ratios and 50 times in `[0, 50]`.
pub fn run_verify(config: &RunConfig) -> Result<VerifyReport> {
    let ratios = if config.sweep_ratios.is_empty() {
        VERIFY_RATIOS.to_vec()
    } else {
        config.sweep_ratios.clone()
    };
    verify_grid(
        &ratios,
        VERIFY_MAX_SECTOR,
        &time_grid(0.0, VERIFY_TAU_END, VERIFY_TAU_SAMPLES),
    )
}

pub fn verify_grid(ratios: &[f64], max_sector: usize, taus: &[f64]) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        max_deviation: 0.0,
        worst_n: 0,
        worst_ratio: ratios.first().copied().unwrap_or(0.0),
        worst_tau: 0.0,
        points_checked: 0,
        tolerance: VERIFY_TOLERANCE,
    };
    for &r in ratios {
        for n in 0..=max_sector {
            let prop = SectorPropagator::new(n, r)?;
            for &tau in taus {
                let dev = amplitudes_closed(n, r, tau)?.max_deviation(&prop.ground_amplitudes(tau));
                report.points_checked += 1;
                // NaN must register as a failure
                if dev > report.max_deviation || dev.is_nan() {
                    report.max_deviation = if dev.is_nan() { f64::INFINITY } else { dev };
                    report.worst_n = n;
                    report.worst_ratio = r;
                    report.worst_tau = tau;
                }
            }
        }
    }
    Ok(report)
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => EXIT_IO,
        Error::EigensolverFailure { .. } => EXIT_VERIFY_FAILED,
        _ => EXIT_INVALID_CONFIG,
    }
}
