//! Collapse and revival landmarks of a purity / photon-number time series.
//!
//! For a coherent field of mean `nbar` the Rabi oscillations collapse after
//! a scaled time of order `sqrt(2)` and the field revives at
//! `T_rev = 2 pi sqrt(nbar)`. The collapse window runs from the collapse
//! onset to the half-revival time `pi sqrt(nbar)`; the revival window is
//! `[0.8, 1.2] T_rev`.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::observables::ObservableSeries;

/// Gaussian collapse time of the single-atom Rabi envelope, in scaled time.
pub const COLLAPSE_ONSET: f64 = SQRT_2;
pub const REVIVAL_WINDOW: (f64, f64) = (0.8, 1.2);
/// Width of the sliding sub-window, as a fraction of the revival time.
pub const OSCILLATION_SUBWINDOW: f64 = 1.0 / 20.0;
pub const MIN_MEAN_PHOTONS: f64 = 4.0;

const SPAN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeatureReport {
    pub r_ratio: f64,
    pub mean_photons: f64,
    pub t_revival_predicted: f64,
    pub t_revival_measured: f64,
    pub purity_collapse_min: f64,
    pub purity_revival_max: f64,
    pub collapse_window: [f64; 2],
    pub revival_window: [f64; 2],
}

pub fn collapse_window(mean_photons: f64) -> [f64; 2] {
    [COLLAPSE_ONSET, PI * mean_photons.sqrt()]
}

pub fn revival_window(mean_photons: f64) -> [f64; 2] {
    let t_rev = 2.0 * PI * mean_photons.sqrt();
    [REVIVAL_WINDOW.0 * t_rev, REVIVAL_WINDOW.1 * t_rev]
}

fn in_window(t: f64, w: [f64; 2]) -> bool {
    t >= w[0] && t <= w[1]
}

pub fn detect_features(series: &ObservableSeries) -> Result<FeatureReport> {
    let nbar = series.params.mean_photons();
    if nbar < MIN_MEAN_PHOTONS {
        return Err(Error::Domain(format!(
            "feature detection needs nbar >= {MIN_MEAN_PHOTONS}, got {nbar}"
        )));
    }
    let t_rev = series.params.revival_time();
    let collapse = collapse_window(nbar);
    let revival = revival_window(nbar);

    let (first, last) = match (series.points.first(), series.points.last()) {
        (Some(a), Some(b)) => (a.tau, b.tau),
        _ => (f64::NAN, f64::NAN),
    };
    if !(first <= collapse[0] + SPAN_SLACK && last >= revival[1] - SPAN_SLACK) {
        return Err(Error::InsufficientSpan {
            covered_start: first,
            covered_end: last,
            needed_start: collapse[0],
            needed_end: revival[1],
        });
    }

    let points = &series.points;
    let purity_collapse_min = points
        .iter()
        .filter(|p| in_window(p.tau, collapse))
        .map(|p| p.purity_direct)
        .fold(f64::INFINITY, f64::min);
    let purity_revival_max = points
        .iter()
        .filter(|p| in_window(p.tau, revival))
        .map(|p| p.purity_direct)
        .fold(f64::NEG_INFINITY, f64::max);

    // RMS swing of <n> about its mean in a sliding sub-window centred on each sample
    let half = 0.5 * OSCILLATION_SUBWINDOW * t_rev;
    let mut best = (f64::NEG_INFINITY, f64::NAN);
    for centre in points.iter().filter(|p| in_window(p.tau, revival)) {
        let local: Vec<f64> = points
            .iter()
            .filter(|p| (p.tau - centre.tau).abs() <= half)
            .map(|p| p.mean_n)
            .collect();
        let mean = local.iter().sum::<f64>() / local.len() as f64;
        let swing =
            (local.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / local.len() as f64).sqrt();
        if swing > best.0 {
            best = (swing, centre.tau);
        }
    }

    Ok(FeatureReport {
        r_ratio: series.params.r_ratio(),
        mean_photons: nbar,
        t_revival_predicted: t_rev,
        t_revival_measured: best.1,
        purity_collapse_min,
        purity_revival_max,
        collapse_window: collapse,
        revival_window: revival,
    })
}
