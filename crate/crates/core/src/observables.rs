//! Full atom-field state and everything measured on it.
//!
//! The joint state at scaled time `tau` is
//! `sum_n alpha_n [c1 |+,+;n-2> + c2 |+,-;n-1> + c3 |-,+;n-1> + c4 |-,-;n>]`
//! with `alpha_n` the coherent amplitudes. Reduced density matrices are
//! obtained by regrouping the amplitudes by field Fock index and tracing.

use nalgebra::Matrix4;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{amplitudes_closed, SectorAmplitudes};
use crate::error::{Error, Result};
use crate::model::{coherent_weights, ModelParams, PoissonWeights};
use crate::oracle::SectorPropagator;

/// Source of the per-sector amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    #[default]
    #[value(name = "closed_form")]
    ClosedForm,
    #[value(name = "oracle")]
    Oracle,
}

/// Atomic basis labels in density-matrix order.
pub const ATOMIC_BASIS: [&str; 4] = ["|+,+>", "|+,->", "|-,+>", "|-,->"];

/// Field Fock index carried by atomic basis state `a` inside sector `n`.
fn field_index(a: usize, n: usize) -> Option<usize> {
    let offset = match a {
        0 => 2,
        1 | 2 => 1,
        _ => 0,
    };
    n.checked_sub(offset)
}

#[derive(Debug, Clone)]
pub struct JointState {
    tau: f64,
    sectors: Vec<SectorAmplitudes>,
    weights: PoissonWeights,
}

impl JointState {
    pub fn new(tau: f64, sectors: Vec<SectorAmplitudes>, weights: PoissonWeights) -> Result<Self> {
        if sectors.len() != weights.weights().len() {
            return Err(Error::Domain(format!(
                "{} sectors for {} coherent weights",
                sectors.len(),
                weights.weights().len()
            )));
        }
        Ok(JointState {
            tau,
            sectors,
            weights,
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn sectors(&self) -> &[SectorAmplitudes] {
        &self.sectors
    }

    pub fn weights(&self) -> &PoissonWeights {
        &self.weights
    }

    pub fn n_max(&self) -> usize {
        self.sectors.len() - 1
    }

    /// `sum_n p_n sum_i |c_i|^2`; equals the retained Poisson mass.
    pub fn norm(&self) -> f64 {
        self.sectors
            .iter()
            .zip(self.weights.weights())
            .map(|(s, p)| p * s.norm_sqr())
            .sum()
    }

    /// Amplitudes `<a, m|Psi>` regrouped as one row per atomic basis state,
    /// indexed by field Fock number `m = 0..=n_max`.
    pub fn field_rows(&self) -> [Vec<Complex64>; 4] {
        let dim = self.n_max() + 1;
        let mut rows: [Vec<Complex64>; 4] =
            std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); dim]);
        for (sector, alpha) in self.sectors.iter().zip(self.weights.amplitudes()) {
            for (a, c) in sector.as_array().into_iter().enumerate() {
                if let Some(m) = field_index(a, sector.n) {
                    rows[a][m] = alpha * c;
                }
            }
        }
        rows
    }
}

/// Evaluates sector amplitudes for one parameter set, caching the oracle's
/// diagonalized blocks across time points.
#[derive(Debug, Clone)]
pub struct Dynamics {
    params: ModelParams,
    backend: Backend,
    weights: PoissonWeights,
    propagators: Vec<SectorPropagator>,
}

impl Dynamics {
    pub fn new(params: ModelParams, backend: Backend) -> Result<Self> {
        let weights = coherent_weights(&params)?;
        let propagators = match backend {
            Backend::ClosedForm => Vec::new(),
            Backend::Oracle => (0..=params.n_max())
                .map(|n| SectorPropagator::new(n, params.r_ratio()))
                .collect::<Result<_>>()?,
        };
        Ok(Dynamics {
            params,
            backend,
            weights,
            propagators,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn sector_amplitudes(&self, tau: f64) -> Result<Vec<SectorAmplitudes>> {
        match self.backend {
            Backend::ClosedForm => closed_sectors(&self.params, tau),
            Backend::Oracle => {
                if !(tau.is_finite() && tau >= 0.0) {
                    return Err(Error::Domain(format!(
                        "scaled time must be finite and >= 0, got {tau}"
                    )));
                }
                Ok(self
                    .propagators
                    .iter()
                    .map(|p| p.ground_amplitudes(tau))
                    .collect())
            }
        }
    }

    pub fn joint_state(&self, tau: f64) -> Result<JointState> {
        JointState::new(tau, self.sector_amplitudes(tau)?, self.weights.clone())
    }

    pub fn observe(&self, tau: f64) -> Result<ObservablePoint> {
        let state = self.joint_state(tau)?;
        let rho = reduce_atomic(&state);
        let eq8 = match self.backend {
            Backend::ClosedForm => {
                purity_eq8_from_sectors(&self.params, &self.weights, state.sectors())
            }
            Backend::Oracle => {
                let closed = closed_sectors(&self.params, tau)?;
                purity_eq8_from_sectors(&self.params, &self.weights, &closed)
            }
        };
        let purity = purity_direct(&rho);
        let pops = rho.populations();
        Ok(ObservablePoint {
            tau,
            purity_direct: purity,
            purity_eq8: eq8,
            linear_entropy: 1.0 - purity,
            von_neumann_entropy: von_neumann_entropy(&rho),
            field_purity: field_purity(&state),
            mean_n: mean_photon_number(&state),
            p_ee: pops[0],
            p_eg: pops[1],
            p_ge: pops[2],
            p_gg: pops[3],
        })
    }

    /// Observables on a time grid; rows keep the order of `taus`.
    pub fn series(&self, taus: &[f64]) -> Result<ObservableSeries> {
        let points = taus
            .par_iter()
            .map(|&tau| self.observe(tau))
            .collect::<Result<Vec<_>>>()?;
        Ok(ObservableSeries {
            params: self.params,
            backend: self.backend,
            points,
        })
    }
}

fn closed_sectors(params: &ModelParams, tau: f64) -> Result<Vec<SectorAmplitudes>> {
    (0..=params.n_max())
        .map(|n| amplitudes_closed(n, params.r_ratio(), tau))
        .collect()
}

pub fn build_joint_state(params: &ModelParams, tau: f64, backend: Backend) -> Result<JointState> {
    Dynamics::new(*params, backend)?.joint_state(tau)
}

/// Reduced state of the atom pair on `(|+,+>, |+,->, |-,+>, |-,->)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicDensityMatrix(Matrix4<Complex64>);

impl AtomicDensityMatrix {
    pub fn from_matrix(matrix: Matrix4<Complex64>) -> Self {
        AtomicDensityMatrix(matrix)
    }

    pub fn from_real_diagonal(diag: [f64; 4]) -> Self {
        AtomicDensityMatrix(Matrix4::from_diagonal(&nalgebra::Vector4::from_iterator(
            diag.iter().map(|&d| Complex64::new(d, 0.0)),
        )))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Largest `|rho_ij - conj(rho_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let m = &self.0;
        (0..4)
            .flat_map(|i| (0..4).map(move |j| (m[(i, j)] - m[(j, i)].conj()).norm()))
            .fold(0.0, f64::max)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let ev = self.0.symmetric_eigenvalues();
        let mut out = [ev[0], ev[1], ev[2], ev[3]];
        out.sort_by(f64::total_cmp);
        out
    }

    /// Diagonal `(p_ee, p_eg, p_ge, p_gg)`.
    pub fn populations(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.0[(i, i)].re)
    }
}

/// Partial trace over the field, renormalized by the truncated norm.
pub fn reduce_atomic(state: &JointState) -> AtomicDensityMatrix {
    let rows = state.field_rows();
    let norm = state.norm();
    let mut rho = Matrix4::zeros();
    for i in 0..4 {
        for j in i..4 {
            let v: Complex64 = rows[i]
                .iter()
                .zip(&rows[j])
                .map(|(a, b)| a * b.conj())
                .sum();
            rho[(i, j)] = v / norm;
            rho[(j, i)] = v.conj() / norm;
        }
    }
    AtomicDensityMatrix(rho)
}

pub fn purity_direct(rho: &AtomicDensityMatrix) -> f64 {
    rho.matrix().iter().map(|c| c.norm_sqr()).sum()
}

/// Atomic purity from the closed-form coherent-state series: diagonal
/// squares plus twice the squared moduli of the six coherences, each
/// written as a Poisson-weighted sum over sectors.
pub fn purity_eq8(params: &ModelParams, tau: f64) -> Result<f64> {
    let weights = coherent_weights(params)?;
    let sectors = closed_sectors(params, tau)?;
    Ok(purity_eq8_from_sectors(params, &weights, &sectors))
}

fn purity_eq8_from_sectors(
    params: &ModelParams,
    weights: &PoissonWeights,
    sectors: &[SectorAmplitudes],
) -> f64 {
    let nbar = params.mean_photons();
    let p = weights.weights();
    let n_max = sectors.len() - 1;
    let c = |n: usize| &sectors[n];

    let mut diag1 = 0.0;
    let mut diag2 = 0.0;
    let mut diag3 = 0.0;
    let mut diag4 = 0.0;
    let mut coh21 = Complex64::new(0.0, 0.0);
    let mut coh31 = Complex64::new(0.0, 0.0);
    let mut coh42 = Complex64::new(0.0, 0.0);
    let mut coh43 = Complex64::new(0.0, 0.0);
    let mut coh41 = Complex64::new(0.0, 0.0);
    let mut coh32 = Complex64::new(0.0, 0.0);

    for (n, &pn) in p.iter().enumerate().take(n_max + 1) {
        let nf = n as f64;
        diag4 += pn * c(n).c4.norm_sqr();
        if n < n_max {
            let w = pn / (nf + 1.0);
            let up = c(n + 1);
            diag2 += w * up.c2.norm_sqr();
            diag3 += w * up.c3.norm_sqr();
            let w_half = pn / (nf + 1.0).sqrt();
            coh42 += w_half * c(n).c4.conj() * up.c2;
            coh43 += w_half * c(n).c4.conj() * up.c3;
            coh32 += w * up.c3.conj() * up.c2;
        }
        if n + 2 <= n_max {
            let two = c(n + 2);
            diag1 += pn / ((nf + 1.0) * (nf + 2.0)) * two.c1.norm_sqr();
            let w = pn / ((nf + 1.0) * (nf + 2.0).sqrt());
            coh21 += w * c(n + 1).c2.conj() * two.c1;
            coh31 += w * c(n + 1).c3.conj() * two.c1;
            coh41 += pn / ((nf + 1.0) * (nf + 2.0)).sqrt() * c(n).c4.conj() * two.c1;
        }
    }

    let nbar2 = nbar * nbar;
    nbar2 * nbar2 * diag1 * diag1
        + nbar2 * (diag2 * diag2 + diag3 * diag3)
        + diag4 * diag4
        + 2.0 * nbar2 * nbar * (coh21.norm_sqr() + coh31.norm_sqr())
        + 2.0 * nbar * (coh42.norm_sqr() + coh43.norm_sqr())
        + 2.0 * nbar2 * coh41.norm_sqr()
        + 2.0 * nbar2 * coh32.norm_sqr()
}

/// `Tr rho_field^2` from the full `(n_max+1)`-dimensional field state.
pub fn field_purity(state: &JointState) -> f64 {
    let rows = state.field_rows();
    let dim = rows[0].len();
    let norm = state.norm();
    let mut total = 0.0;
    for m in 0..dim {
        for k in m..dim {
            let v: Complex64 = rows.iter().map(|row| row[m] * row[k].conj()).sum();
            let weight = if k == m { 1.0 } else { 2.0 };
            total += weight * v.norm_sqr();
        }
    }
    total / (norm * norm)
}

/// `-Tr rho ln rho` with eigenvalues clamped to `[0, 1]`.
pub fn von_neumann_entropy(rho: &AtomicDensityMatrix) -> f64 {
    rho.eigenvalues()
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum()
}

/// `<a^+ a>` normalized by the retained norm.
pub fn mean_photon_number(state: &JointState) -> f64 {
    let weighted: f64 = state
        .sectors()
        .iter()
        .zip(state.weights().weights())
        .map(|(s, p)| {
            let n = s.n as f64;
            let mut photons = n * s.c4.norm_sqr();
            if s.n >= 1 {
                photons += (n - 1.0) * (s.c2.norm_sqr() + s.c3.norm_sqr());
            }
            if s.n >= 2 {
                photons += (n - 2.0) * s.c1.norm_sqr();
            }
            p * photons
        })
        .sum();
    weighted / state.norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservablePoint {
    pub tau: f64,
    pub purity_direct: f64,
    pub purity_eq8: f64,
    pub linear_entropy: f64,
    pub von_neumann_entropy: f64,
    pub field_purity: f64,
    pub mean_n: f64,
    pub p_ee: f64,
    pub p_eg: f64,
    pub p_ge: f64,
    pub p_gg: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries {
    pub params: ModelParams,
    pub backend: Backend,
    pub points: Vec<ObservablePoint>,
}

impl ObservableSeries {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn taus(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.tau)
    }
}

/// `steps` equally spaced points from `start` to `end` inclusive.
pub fn time_grid(start: f64, end: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let dt = (end - start) / (steps - 1) as f64;
            (0..steps)
                .map(|k| {
                    if k == steps - 1 {
                        end
                    } else {
                        start + dt * k as f64
                    }
                })
                .collect()
        }
    }
}
