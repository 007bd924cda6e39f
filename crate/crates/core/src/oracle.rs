//! Brute-force sector propagator.
//!
//! The rotating-wave Hamiltonian conserves the total excitation number, so
//! each sector evolves independently under a small real symmetric block.
//! Evolution is `V exp(-i D tau) V^T psi0` from a general symmetric
//! eigendecomposition; nothing here depends on the analytical frequencies
//! of [`crate::closed_form`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::closed_form::SectorAmplitudes;
use crate::error::{Error, Result};

const EIGEN_MAX_ITERATIONS: usize = 1000;

/// Interaction-picture Hamiltonian of one sector in units of `hbar g1`.
///
/// Basis order: `(|+,+;n-2>, |+,-;n-1>, |-,+;n-1>, |-,-;n>)` for `n >= 2`,
/// `(|+,-;0>, |-,+;0>, |-,-;1>)` for `n = 1` and `(|-,-;0>)` for `n = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianBlock {
    pub n: usize,
    pub matrix: DMatrix<f64>,
}

impl HamiltonianBlock {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

pub fn hamiltonian_block(n: usize, r_ratio: f64) -> HamiltonianBlock {
    let nf = n as f64;
    let matrix = match n {
        0 => DMatrix::zeros(1, 1),
        1 => {
            let mut h = DMatrix::zeros(3, 3);
            // atom 1 lowers with g1, atom 2 with g2 = R g1
            h[(0, 2)] = 1.0;
            h[(1, 2)] = r_ratio;
            h.fill_lower_triangle_with_upper_triangle();
            h
        }
        _ => {
            let mut h = DMatrix::zeros(4, 4);
            let below = (nf - 1.0).sqrt();
            let top = nf.sqrt();
            h[(0, 1)] = r_ratio * below;
            h[(0, 2)] = below;
            h[(1, 3)] = top;
            h[(2, 3)] = r_ratio * top;
            h.fill_lower_triangle_with_upper_triangle();
            h
        }
    };
    HamiltonianBlock { n, matrix }
}

/// Diagonalized sector, reusable for any number of time points.
#[derive(Debug, Clone)]
pub struct SectorPropagator {
    n: usize,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
    block: HamiltonianBlock,
}

impl SectorPropagator {
    pub fn new(n: usize, r_ratio: f64) -> Result<Self> {
        if !(r_ratio.is_finite() && r_ratio >= 0.0) {
            return Err(Error::Domain(format!(
                "coupling ratio must be finite and >= 0, got {r_ratio}"
            )));
        }
        let block = hamiltonian_block(n, r_ratio);
        let eig = SymmetricEigen::try_new(block.matrix.clone(), f64::EPSILON, EIGEN_MAX_ITERATIONS)
            .ok_or(Error::EigensolverFailure { n })?;
        Ok(SectorPropagator {
            n,
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
            block,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block(&self) -> &HamiltonianBlock {
        &self.block
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Applies `exp(-i H tau)` to a state in the block basis.
    pub fn evolve(&self, psi: &[Complex64], tau: f64) -> Vec<Complex64> {
        let v = &self.eigenvectors;
        let dim = v.nrows();
        assert_eq!(psi.len(), dim, "state dimension must match the block");
        let rotated: Vec<Complex64> = (0..dim)
            .map(|k| {
                let proj: Complex64 = (0..dim).map(|i| psi[i] * v[(i, k)]).sum();
                proj * Complex64::from_polar(1.0, -self.eigenvalues[k] * tau)
            })
            .collect();
        (0..dim)
            .map(|i| (0..dim).map(|k| rotated[k] * v[(i, k)]).sum())
            .collect()
    }

    /// `<psi|H|psi>` in units of `hbar g1`.
    pub fn energy(&self, psi: &[Complex64]) -> f64 {
        let h = &self.block.matrix;
        let dim = h.nrows();
        let mut e = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                e += psi[i].conj() * h[(i, j)] * psi[j];
            }
        }
        e.re
    }

    /// Initial state `|-,-;n>` in the block basis.
    pub fn ground_state(&self) -> Vec<Complex64> {
        let dim = self.block.dim();
        let mut psi = vec![Complex64::new(0.0, 0.0); dim];
        psi[dim - 1] = Complex64::new(1.0, 0.0);
        psi
    }

    pub fn ground_amplitudes(&self, tau: f64) -> SectorAmplitudes {
        to_sector_amplitudes(self.n, &self.evolve(&self.ground_state(), tau))
    }
}

/// Places a block-basis vector into the four-component layout.
pub fn to_sector_amplitudes(n: usize, psi: &[Complex64]) -> SectorAmplitudes {
    let mut amp = SectorAmplitudes::ground(n);
    match psi.len() {
        1 => amp.c4 = psi[0],
        3 => {
            amp.c2 = psi[0];
            amp.c3 = psi[1];
            amp.c4 = psi[2];
        }
        4 => {
            amp.c1 = psi[0];
            amp.c2 = psi[1];
            amp.c3 = psi[2];
            amp.c4 = psi[3];
        }
        d => panic!("no sector has block dimension {d}"),
    }
    amp
}

pub fn amplitudes_oracle(n: usize, r_ratio: f64, tau: f64) -> Result<SectorAmplitudes> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::Domain(format!(
            "scaled time must be finite and >= 0, got {tau}"
        )));
    }
    Ok(SectorPropagator::new(n, r_ratio)?.ground_amplitudes(tau))
}
