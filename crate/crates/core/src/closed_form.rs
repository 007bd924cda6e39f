//! Analytical probability amplitudes of one excitation sector.
//!
//! Sector `n` is spanned by `|+,+;n-2>, |+,-;n-1>, |-,+;n-1>, |-,-;n>` and
//! starts in `|-,-;n>`. With `a = 1 + R^2` the sector frequencies are
//!
//! ```text
//! beta     = sqrt((2n-1)^2 a^2 - 4 n (n-1) (1-R^2)^2)
//! lambda_± = sqrt((a (2n-1) ± beta) / 2)
//! ```
//!
//! and for `n >= 2`
//!
//! ```text
//! c1 = 2R sqrt(n(n-1))/beta [cos(l+ t) - cos(l- t)]
//! c2 = -4i R^2 (n-1) sqrt(n)/beta { (l+^2 + (1-R^2)n)/(l+ (beta-a)) sin(l+ t)
//!                                 + (l-^2 + (1-R^2)n)/(l- (beta+a)) sin(l- t) }
//! c3 = -4i R (n-1) sqrt(n)/beta   { (l+^2 - (1-R^2)n)/(l+ (beta-a)) sin(l+ t)
//!                                 + (l-^2 - (1-R^2)n)/(l- (beta+a)) sin(l- t) }
//! c4 = 8 R^2 n (n-1)/beta [cos(l+ t)/(beta-a) + cos(l- t)/(beta+a)]
//! ```
//!
//! The `+` joining the two terms of `c2` and `c3` is confirmed against the
//! brute-force propagator in [`crate::oracle`]; the widely reproduced form
//! with a `-` there does not conserve probability and disagrees with direct
//! diagonalization.
//!
//! Evaluation avoids the removable singularities of the printed form:
//! `beta - a = 16 n (n-1) R^2 / (beta + a)` is used instead of the
//! difference, which keeps the expressions finite and exact at `R = 0`
//! (single-atom limit), and `sin(l- t)/l-` is evaluated as `t sinc(l- t)`
//! when `l- t` is small (`l- = 0` at `R = 1`).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Below this argument `sin(x)/x` is replaced by its Taylor polynomial.
pub const SINC_SERIES_THRESHOLD: f64 = 1e-4;

/// The four complex amplitudes of sector `n` at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorAmplitudes {
    pub n: usize,
    /// `|+,+;n-2>`
    pub c1: Complex64,
    /// `|+,-;n-1>`
    pub c2: Complex64,
    /// `|-,+;n-1>`
    pub c3: Complex64,
    /// `|-,-;n>`
    pub c4: Complex64,
}

impl SectorAmplitudes {
    pub fn ground(n: usize) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        SectorAmplitudes {
            n,
            c1: zero,
            c2: zero,
            c3: zero,
            c4: Complex64::new(1.0, 0.0),
        }
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.c1, self.c2, self.c3, self.c4]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.as_array().iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest componentwise modulus of the difference.
    pub fn max_deviation(&self, other: &SectorAmplitudes) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Eigenfrequencies of a sector with `n >= 2`, in units of `g1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSpectrum {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub beta: f64,
}

pub fn sector_spectrum(n: usize, r_ratio: f64) -> Result<SectorSpectrum> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "sector spectrum needs n >= 2, got {n}"
        )));
    }
    check_ratio(r_ratio)?;
    let nf = n as f64;
    let s = r_ratio * r_ratio;
    let a = 1.0 + s;
    let pairs = nf * (nf - 1.0);
    // beta^2 - a^2 = 16 n (n-1) R^2: no cancellation between large terms
    let beta = (a * a + 16.0 * pairs * s).sqrt();
    let outer = a * (2.0 * nf - 1.0) + beta;
    let lambda_plus = (0.5 * outer).sqrt();
    // lambda+^2 lambda-^2 = n (n-1) (1-R^2)^2
    let one_minus_s = 1.0 - s;
    let lambda_minus = (2.0 * pairs * one_minus_s * one_minus_s / outer).sqrt();
    Ok(SectorSpectrum {
        lambda_plus,
        lambda_minus,
        beta,
    })
}

fn check_ratio(r_ratio: f64) -> Result<()> {
    if r_ratio.is_finite() && r_ratio >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "coupling ratio must be finite and >= 0, got {r_ratio}"
        )))
    }
}

/// `sin(w t) / w`, continuous through `w = 0`.
fn sin_over_freq(w: f64, tau: f64) -> f64 {
    let x = w * tau;
    if x.abs() < SINC_SERIES_THRESHOLD {
        let x2 = x * x;
        tau * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0))
    } else {
        x.sin() / w
    }
}

pub fn amplitudes_closed(n: usize, r_ratio: f64, tau: f64) -> Result<SectorAmplitudes> {
    check_ratio(r_ratio)?;
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::Domain(format!(
            "scaled time must be finite and >= 0, got {tau}"
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    match n {
        0 => Ok(SectorAmplitudes::ground(0)),
        1 => {
            let w = (1.0 + r_ratio * r_ratio).sqrt();
            let s = (w * tau).sin() / w;
            Ok(SectorAmplitudes {
                n,
                c1: zero,
                c2: Complex64::new(0.0, -s),
                c3: Complex64::new(0.0, -r_ratio * s),
                c4: Complex64::new((w * tau).cos(), 0.0),
            })
        }
        _ => Ok(general_sector(n, r_ratio, tau)),
    }
}

fn general_sector(n: usize, r: f64, tau: f64) -> SectorAmplitudes {
    let sp = sector_spectrum(n, r).expect("n >= 2 and r validated");
    let SectorSpectrum {
        lambda_plus: lp,
        lambda_minus: lm,
        beta,
    } = sp;
    let nf = n as f64;
    let s = r * r;
    let a = 1.0 + s;
    let pairs = nf * (nf - 1.0);
    let sqrt_n = nf.sqrt();
    let beta_plus_a = beta + a;

    let (cos_p, cos_m) = ((lp * tau).cos(), (lm * tau).cos());
    let sin_p = sin_over_freq(lp, tau);
    let sin_m = sin_over_freq(lm, tau);

    let c1 = 2.0 * r * pairs.sqrt() / beta * (cos_p - cos_m);

    // 8 R^2 n(n-1) / (beta (beta - a)) = (beta + a) / (2 beta)
    let c4 = beta_plus_a / (2.0 * beta) * cos_p + 8.0 * s * pairs / (beta * beta_plus_a) * cos_m;

    // lambda+^2 + (1-R^2) n and lambda-^2 + (1-R^2) n
    let lp2_plus = 0.5 * (4.0 * nf - 1.0 - s + beta);
    let lm2_plus = lm * lm + (1.0 - s) * nf;
    // (lambda+^2 - (1-R^2) n) / R, using beta - 1 = R^2 (2 + R^2 + 16n(n-1)) / (beta + 1)
    let lp2_minus_over_r = 0.5 * r * ((2.0 + s + 16.0 * pairs) / (beta + 1.0) + 4.0 * nf - 1.0);
    let lm2_minus = lm * lm - (1.0 - s) * nf;

    // the R^2/(beta - a) and R/(beta - a) prefactors of the lambda+ terms reduce to
    // (beta + a)/(16 n (n-1)) and (beta + a)/(16 n (n-1) R)
    let c2 = beta_plus_a * lp2_plus / (4.0 * sqrt_n * beta) * sin_p
        + 4.0 * s * (nf - 1.0) * sqrt_n / beta * lm2_plus / beta_plus_a * sin_m;
    let c3 = beta_plus_a * lp2_minus_over_r / (4.0 * sqrt_n * beta) * sin_p
        + 4.0 * r * (nf - 1.0) * sqrt_n / beta * lm2_minus / beta_plus_a * sin_m;

    SectorAmplitudes {
        n,
        c1: Complex64::new(c1, 0.0),
        c2: Complex64::new(0.0, -c2),
        c3: Complex64::new(0.0, -c3),
        c4: Complex64::new(c4, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn spectrum_identical_atoms_n2() {
        let s = sector_spectrum(2, 1.0).unwrap();
        assert!(close(s.beta, 6.0, 1e-14));
        assert!(close(s.lambda_plus, 6f64.sqrt(), 1e-14));
        assert_eq!(s.lambda_minus, 0.0);
    }

    #[test]
    fn spectrum_single_atom_n2() {
        let s = sector_spectrum(2, 0.0).unwrap();
        assert!(close(s.beta, 1.0, 1e-15));
        assert!(close(s.lambda_plus, 2f64.sqrt(), 1e-15));
        assert!(close(s.lambda_minus, 1.0, 1e-15));
    }

    #[test]
    fn spectrum_defining_identities() {
        let (n, r) = (5usize, 0.5f64);
        let sp = sector_spectrum(n, r).unwrap();
        let nf = n as f64;
        let a = 1.0 + r * r;
        let lp2 = sp.lambda_plus.powi(2);
        let lm2 = sp.lambda_minus.powi(2);
        assert!(close(lp2 + lm2, 11.25, 1e-12));
        let b2 = (2.0 * nf - 1.0).powi(2) * a * a - 4.0 * (nf - 1.0) * nf * (1.0 - r * r).powi(2);
        assert!(close(sp.beta * sp.beta, b2, 1e-12 * b2));
        assert!(close(lp2 - lm2, sp.beta, 1e-12));
    }

    #[test]
    fn spectrum_rejects_low_sectors() {
        assert!(matches!(sector_spectrum(1, 0.5), Err(Error::Domain(_))));
        assert!(matches!(sector_spectrum(0, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn initial_condition() {
        let amp = amplitudes_closed(7, 0.5, 0.0).unwrap();
        assert_eq!(amp.max_deviation(&SectorAmplitudes::ground(7)), 0.0);
    }

    #[test]
    fn one_photon_sector_half_period() {
        let tau = PI / 1.25f64.sqrt();
        let amp = amplitudes_closed(1, 0.5, tau).unwrap();
        assert!(close(amp.c4.re, -1.0, 1e-15));
        assert!(amp.c2.norm() < 1e-15 && amp.c3.norm() < 1e-15);
        assert_eq!(amp.c1, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn single_atom_limit_is_rabi() {
        let amp = amplitudes_closed(6, 0.0, 2.0).unwrap();
        let w = 6f64.sqrt() * 2.0;
        let expected = SectorAmplitudes {
            n: 6,
            c1: Complex64::new(0.0, 0.0),
            c2: Complex64::new(0.0, -w.sin()),
            c3: Complex64::new(0.0, 0.0),
            c4: Complex64::new(w.cos(), 0.0),
        };
        assert!(amp.max_deviation(&expected) < 1e-14);
    }

    #[test]
    fn vacuum_sector_is_static() {
        for tau in [0.0, 1.0, 100.0] {
            assert_eq!(
                amplitudes_closed(0, 0.7, tau).unwrap(),
                SectorAmplitudes::ground(0)
            );
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(amplitudes_closed(3, 0.5, -1.0).is_err());
        assert!(amplitudes_closed(3, -0.5, 1.0).is_err());
        assert!(amplitudes_closed(3, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn sinc_branch_is_continuous() {
        let tau = 3.0;
        let below = sin_over_freq(0.99 * SINC_SERIES_THRESHOLD / tau, tau);
        let above = sin_over_freq(1.01 * SINC_SERIES_THRESHOLD / tau, tau);
        assert!((below - above).abs() < 1e-8);
        assert_eq!(sin_over_freq(0.0, tau), tau);
    }

    #[test]
    fn normalization_on_grid() {
        for n in 0..60 {
            for &r in &[0.0, 1e-7, 0.3, 1.0 - 1e-9, 1.0, 1.7, 5.0] {
                for k in 0..20 {
                    let tau = 0.731 * k as f64;
                    let amp = amplitudes_closed(n, r, tau).unwrap();
                    assert!(
                        (amp.norm_sqr() - 1.0).abs() < 1e-10,
                        "n={n} r={r} tau={tau}"
                    );
                }
            }
        }
    }
}
