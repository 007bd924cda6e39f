//! Physical configuration of the cavity: coupling ratio, coherent-state
//! parameters and the Fock-space truncation that makes the coherent
//! superposition finite.
//!
//! Time is measured everywhere in units of the first atom's coupling,
//! `tau = g1 * t`, so `g1` never appears as a parameter.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default admissible Poisson mass above the truncation index.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;

/// Truncation never goes below this many photons, even for the vacuum.
pub const MIN_TRUNCATION: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    r_ratio: f64,
    mean_photons: f64,
    phase: f64,
    n_max: usize,
    tail_tolerance: f64,
}

impl ModelParams {
    /// Parameters with `phase = 0`, the default tail tolerance and an
    /// automatically chosen truncation.
    pub fn new(r_ratio: f64, mean_photons: f64) -> Result<Self> {
        if !(r_ratio.is_finite() && r_ratio >= 0.0) {
            return Err(Error::Domain(format!(
                "coupling ratio must be finite and >= 0, got {r_ratio}"
            )));
        }
        if !(mean_photons.is_finite() && mean_photons >= 0.0) {
            return Err(Error::Domain(format!(
                "mean photon number must be finite and >= 0, got {mean_photons}"
            )));
        }
        Ok(ModelParams {
            r_ratio,
            mean_photons,
            phase: 0.0,
            n_max: choose_truncation(mean_photons, DEFAULT_TAIL_TOLERANCE),
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
        })
    }

    /// Sets the coherent phase, reduced into `[0, 2pi)`.
    pub fn with_phase(mut self, phase: f64) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::Domain(format!("phase must be finite, got {phase}")));
        }
        self.phase = phase.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2pi for tiny negative inputs
        if self.phase >= TAU {
            self.phase = 0.0;
        }
        Ok(self)
    }

    /// Sets the tail tolerance and re-chooses the truncation for it.
    pub fn with_tail_tolerance(mut self, tail_tolerance: f64) -> Result<Self> {
        if !(tail_tolerance > 0.0 && tail_tolerance < 1.0) {
            return Err(Error::Domain(format!(
                "tail tolerance must lie in (0, 1), got {tail_tolerance}"
            )));
        }
        self.tail_tolerance = tail_tolerance;
        self.n_max = choose_truncation(self.mean_photons, tail_tolerance);
        Ok(self)
    }

    /// Overrides the truncation index; rejected if the Poisson mass above it
    /// exceeds the tail tolerance.
    pub fn with_n_max(mut self, n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Domain("n_max must be at least 1".into()));
        }
        let tail = poisson_tail_above(self.mean_photons, n_max);
        if tail > self.tail_tolerance {
            return Err(Error::TruncationTooTight {
                n_max,
                tail,
                tolerance: self.tail_tolerance,
            });
        }
        self.n_max = n_max;
        Ok(self)
    }

    pub fn r_ratio(&self) -> f64 {
        self.r_ratio
    }

    pub fn mean_photons(&self) -> f64 {
        self.mean_photons
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.tail_tolerance
    }

    /// Field revival time `2 pi sqrt(nbar)` in scaled time.
    pub fn revival_time(&self) -> f64 {
        TAU * self.mean_photons.sqrt()
    }
}

/// Poisson photon-number distribution of a coherent state together with the
/// complex expansion coefficients `z^n e^{-|z|^2/2} / sqrt(n!)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonWeights {
    weights: Vec<f64>,
    amplitudes: Vec<Complex64>,
}

impl PoissonWeights {
    /// `p_n` for `n = 0..=n_max`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn n_max(&self) -> usize {
        self.weights.len() - 1
    }

    /// Retained probability mass, summed in ascending `n`.
    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// `ln p_n` for a Poisson law of mean `nbar`; `nbar = 0` is the vacuum.
///
/// Saddle-point form `-stirlerr(n) - bd0(n, nbar) - ln(2 pi n) / 2`, which
/// avoids the cancellation between `n ln nbar` and `ln n!` at large `n`.
fn ln_poisson(nbar: f64, n: usize) -> f64 {
    if nbar == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if n == 0 {
        return -nbar;
    }
    let x = n as f64;
    -stirling_error(n) - deviance(x, nbar) - 0.5 * (TAU * x).ln()
}

/// `ln n! - [(n + 1/2) ln n - n + ln(2 pi) / 2]`.
fn stirling_error(n: usize) -> f64 {
    let x = n as f64;
    if n <= 15 {
        let ln_fact: f64 = (2..=n).map(|k| k as f64).product::<f64>().ln();
        return ln_fact - (x + 0.5) * x.ln() + x - 0.5 * TAU.ln();
    }
    const S: [f64; 5] = [
        1.0 / 12.0,
        1.0 / 360.0,
        1.0 / 1260.0,
        1.0 / 1680.0,
        1.0 / 1188.0,
    ];
    let x2 = x * x;
    (S[0] - (S[1] - (S[2] - (S[3] - S[4] / x2) / x2) / x2) / x2) / x
}

/// `x ln(x / m) + m - x`, summed as a series when `x` is close to `m`.
fn deviance(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let mut sum = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        for j in 1..1000 {
            ej *= v2;
            let next = sum + ej / (2 * j + 1) as f64;
            if next == sum {
                return next;
            }
            sum = next;
        }
        return sum;
    }
    x * (x / m).ln() + m - x
}

/// Poisson probability mass strictly above `n`, summed directly term by term
/// (no `1 - cdf` subtraction), so tiny tails keep full relative precision.
pub fn poisson_tail_above(nbar: f64, n: usize) -> f64 {
    if nbar == 0.0 {
        return 0.0;
    }
    let mut k = n + 1;
    let mut tail = 0.0;
    // terms decay faster than geometrically once k > nbar
    loop {
        let term = ln_poisson(nbar, k).exp();
        tail += term;
        if k as f64 > nbar && term <= tail * 1e-18 {
            break;
        }
        k += 1;
    }
    tail
}

/// Smallest `n_max` whose Poisson tail mass is below `tail_tolerance`,
/// floored at [`MIN_TRUNCATION`].
pub fn choose_truncation(mean_photons: f64, tail_tolerance: f64) -> usize {
    let mut n = 0;
    while poisson_tail_above(mean_photons, n) >= tail_tolerance {
        n += 1;
    }
    n.max(MIN_TRUNCATION)
}

/// Coherent-state weights and amplitudes for `n = 0..=n_max`, evaluated in
/// log space so that `nbar` in the hundreds does not overflow `n!`.
pub fn coherent_weights(params: &ModelParams) -> Result<PoissonWeights> {
    let n_max = params.n_max();
    let nbar = params.mean_photons();
    let tail = poisson_tail_above(nbar, n_max);
    if tail > params.tail_tolerance() {
        return Err(Error::TruncationTooTight {
            n_max,
            tail,
            tolerance: params.tail_tolerance(),
        });
    }

    let mut weights = Vec::with_capacity(n_max + 1);
    let mut amplitudes = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let ln_p = ln_poisson(nbar, n);
        let p = ln_p.exp();
        weights.push(p);
        amplitudes.push(Complex64::from_polar(
            (0.5 * ln_p).exp(),
            n as f64 * params.phase(),
        ));
    }
    Ok(PoissonWeights {
        weights,
        amplitudes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn vacuum_truncation_hits_floor() {
        assert_eq!(choose_truncation(0.0, 1e-12), MIN_TRUNCATION);
    }

    #[test]
    fn truncation_matches_exact_tail_sums() {
        // smallest n with tail < tol, from 60-digit Poisson sums
        assert_eq!(choose_truncation(50.0, 1e-12), 107);
        assert_eq!(choose_truncation(1.0, 1e-6), 9);
        assert_eq!(choose_truncation(50.0, 1e-6), 87);
        assert_eq!(choose_truncation(25.0, 1e-12), 68);
        assert_eq!(choose_truncation(500.0, 1e-12), 665);
    }

    #[test]
    fn vacuum_weights() {
        let params = ModelParams::new(0.5, 0.0).unwrap();
        let w = coherent_weights(&params).unwrap();
        assert_eq!(w.weights()[0], 1.0);
        assert!(w.weights()[1..].iter().all(|&p| p == 0.0));
    }

    #[test]
    fn poisson_mode_at_integer_mean() {
        let params = ModelParams::new(0.5, 50.0).unwrap();
        let w = coherent_weights(&params).unwrap();
        let p = w.weights();
        let argmax = (0..p.len()).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap();
        assert!(argmax == 49 || argmax == 50);
        assert!((p[49] - p[50]).abs() < 1e-15);
    }

    #[test]
    fn amplitude_modulus_and_phase() {
        let params = ModelParams::new(0.5, 50.0)
            .unwrap()
            .with_phase(PI / 3.0)
            .unwrap();
        let w = coherent_weights(&params).unwrap();
        for (n, (p, a)) in w.weights().iter().zip(w.amplitudes()).enumerate() {
            assert!((a.norm_sqr() - p).abs() <= 1e-14 * p.max(1e-300));
            if *p > 1e-200 {
                let expected = (n as f64 * PI / 3.0).rem_euclid(TAU);
                let got = a.arg().rem_euclid(TAU);
                let d = (expected - got).abs();
                assert!(d.min(TAU - d) < 1e-9, "n={n}");
            }
        }
    }

    #[test]
    fn large_mean_does_not_overflow() {
        let params = ModelParams::new(1.0, 500.0).unwrap();
        let w = coherent_weights(&params).unwrap();
        assert!(w.weights().iter().all(|p| p.is_finite()));
        assert!((w.total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn tight_truncation_rejected() {
        let params = ModelParams::new(0.5, 50.0).unwrap();
        assert!(matches!(
            params.with_n_max(60),
            Err(Error::TruncationTooTight { n_max: 60, .. })
        ));
        assert!(params.with_n_max(150).is_ok());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(ModelParams::new(-0.1, 1.0).is_err());
        assert!(ModelParams::new(0.1, -1.0).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0).is_err());
        let p = ModelParams::new(0.1, 1.0).unwrap();
        assert!(p.with_tail_tolerance(0.0).is_err());
        assert!(p.with_tail_tolerance(1.0).is_err());
        assert!(p.with_phase(f64::INFINITY).is_err());
    }

    #[test]
    fn phase_is_reduced() {
        let p = ModelParams::new(0.1, 1.0)
            .unwrap()
            .with_phase(-PI / 2.0)
            .unwrap();
        assert!((p.phase() - 1.5 * PI).abs() < 1e-15);
        let p = p.with_phase(5.0 * TAU + 0.25).unwrap();
        assert!((p.phase() - 0.25).abs() < 1e-12);
    }
}
