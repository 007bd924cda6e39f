//! Closed-form amplitudes against the diagonalization oracle.

use cavity_purity::{amplitudes_closed, amplitudes_oracle, sector_spectrum, SectorPropagator};
use proptest::prelude::*;

const RATIOS: [f64; 7] = [0.0, 1e-6, 0.1, 0.5, 0.999999, 1.0, 2.0];

#[test]
fn sector_six_matches_oracle() {
    let closed = amplitudes_closed(6, 0.5, 1.3).unwrap();
    let oracle = amplitudes_oracle(6, 0.5, 1.3).unwrap();
    assert!(closed.max_deviation(&oracle) < 1e-8);
}

#[test]
fn degenerate_ratios_match_oracle_on_dense_times() {
    for &r in &[0.0, 1e-9, 1e-7, 1e-6, 1e-5, 1.0 - 1e-7, 1.0, 1.0 + 1e-7] {
        for n in [2usize, 3, 10, 40, 150] {
            let prop = SectorPropagator::new(n, r).unwrap();
            for k in 0..200 {
                let tau = 0.25 * k as f64;
                let dev = amplitudes_closed(n, r, tau)
                    .unwrap()
                    .max_deviation(&prop.ground_amplitudes(tau));
                assert!(dev < 1e-8, "n={n} r={r} tau={tau} dev={dev:e}");
            }
        }
    }
}

#[test]
fn continuity_at_degenerate_ratios() {
    // amplitudes move by O(tau sqrt(n)) per unit R, so the 1e-5 bound holds for moderate tau
    for n in [2usize, 5, 10] {
        for k in 0..=40 {
            let tau = 0.25 * k as f64;
            let at = amplitudes_closed(n, 1.0, tau).unwrap();
            for r in [1.0 - 1e-7, 1.0 + 1e-7] {
                assert!(amplitudes_closed(n, r, tau).unwrap().max_deviation(&at) < 1e-5);
            }
            let zero = amplitudes_closed(n, 0.0, tau).unwrap();
            assert!(
                amplitudes_closed(n, 1e-7, tau)
                    .unwrap()
                    .max_deviation(&zero)
                    < 1e-5
            );
        }
    }
}

#[test]
fn no_jump_across_identical_atoms() {
    // the closed-form step across R = 1 must track the oracle's step at any tau
    for n in [2usize, 30, 100] {
        for k in 0..60 {
            let tau = 0.83 * k as f64;
            for r in [1.0 - 1e-7, 1.0 + 1e-7] {
                let closed = amplitudes_closed(n, r, tau).unwrap().as_array();
                let closed_at = amplitudes_closed(n, 1.0, tau).unwrap().as_array();
                let oracle = amplitudes_oracle(n, r, tau).unwrap().as_array();
                let oracle_at = amplitudes_oracle(n, 1.0, tau).unwrap().as_array();
                for i in 0..4 {
                    let jump = (closed[i] - closed_at[i]) - (oracle[i] - oracle_at[i]);
                    assert!(jump.norm() < 1e-9, "n={n} r={r} tau={tau}");
                }
            }
        }
    }
}

#[test]
fn low_sectors_have_empty_slots() {
    for tau in [0.0, 0.4, 7.7] {
        for &r in &RATIOS {
            let zero = amplitudes_oracle(0, r, tau).unwrap();
            assert_eq!(zero.c4.re, 1.0);
            assert_eq!(zero.c1.norm() + zero.c2.norm() + zero.c3.norm(), 0.0);
            assert_eq!(amplitudes_closed(1, r, tau).unwrap().c1.norm(), 0.0);
            assert_eq!(amplitudes_oracle(1, r, tau).unwrap().c1.norm(), 0.0);
        }
    }
}

proptest! {
    #[test]
    fn closed_form_equals_oracle(n in 0usize..=40, ri in 0usize..RATIOS.len(), tau in 0.0f64..50.0) {
        let r = RATIOS[ri];
        let dev = amplitudes_closed(n, r, tau).unwrap().max_deviation(&amplitudes_oracle(n, r, tau).unwrap());
        prop_assert!(dev <= 1e-8, "n={} r={} tau={} dev={:e}", n, r, tau, dev);
    }

    #[test]
    fn closed_form_equals_oracle_any_ratio(n in 0usize..=80, r in 0.0f64..4.0, tau in 0.0f64..60.0) {
        let dev = amplitudes_closed(n, r, tau).unwrap().max_deviation(&amplitudes_oracle(n, r, tau).unwrap());
        prop_assert!(dev <= 1e-8, "n={} r={} tau={} dev={:e}", n, r, tau, dev);
    }

    #[test]
    fn normalized(n in 0usize..400, r in 0.0f64..5.0, tau in 0.0f64..200.0) {
        let a = amplitudes_closed(n, r, tau).unwrap();
        prop_assert!((a.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn identical_atoms_symmetric(n in 0usize..200, tau in 0.0f64..100.0) {
        let a = amplitudes_closed(n, 1.0, tau).unwrap();
        prop_assert!((a.c2 - a.c3).norm() <= 1e-12);
    }

    #[test]
    fn atom_swap_covariance(n in 0usize..60, ri in 0usize..3, tau in 0.0f64..30.0) {
        let r = [0.3, 0.5, 2.0][ri];
        let a = amplitudes_closed(n, r, tau).unwrap();
        let b = amplitudes_closed(n, 1.0 / r, r * tau).unwrap();
        prop_assert!((a.c2 - b.c3).norm() <= 1e-9);
        prop_assert!((a.c3 - b.c2).norm() <= 1e-9);
        prop_assert!((a.c1 - b.c1).norm() <= 1e-9);
        prop_assert!((a.c4 - b.c4).norm() <= 1e-9);
    }

    #[test]
    fn spectrum_identities(n in 2usize..500, r in 0.0f64..5.0) {
        let sp = sector_spectrum(n, r).unwrap();
        let nf = n as f64;
        let a = 1.0 + r * r;
        let b2 = (2.0 * nf - 1.0).powi(2) * a * a - 4.0 * (nf - 1.0) * nf * (1.0 - r * r).powi(2);
        prop_assert!((sp.beta * sp.beta - b2).abs() <= 1e-12 * b2);
        let gap = sp.beta * sp.beta - a * a;
        prop_assert!((gap - 16.0 * nf * (nf - 1.0) * r * r).abs() <= 1e-10 * gap.max(1e-300) + 1e-12);
        prop_assert!(sp.lambda_plus >= sp.lambda_minus && sp.lambda_minus >= 0.0);
    }

    #[test]
    fn block_spectrum_is_plus_minus_lambdas(n in 2usize..200, r in 0.0f64..3.0) {
        let sp = sector_spectrum(n, r).unwrap();
        let mut expected = [-sp.lambda_plus, -sp.lambda_minus, sp.lambda_minus, sp.lambda_plus];
        expected.sort_by(f64::total_cmp);
        let got = SectorPropagator::new(n, r).unwrap().eigenvalues();
        for (e, g) in expected.iter().zip(&got) {
            prop_assert!((e - g).abs() <= 1e-10);
        }
    }

    #[test]
    fn oracle_energy_conserved(n in 0usize..60, r in 0.0f64..3.0, tau in 0.0f64..50.0) {
        let prop = SectorPropagator::new(n, r).unwrap();
        let psi = prop.evolve(&prop.ground_state(), tau);
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        prop_assert!(prop.energy(&psi).abs() < 1e-10);
    }

    #[test]
    fn oracle_composes(n in 0usize..60, r in 0.0f64..3.0, t1 in 0.0f64..25.0, t2 in 0.0f64..25.0) {
        let prop = SectorPropagator::new(n, r).unwrap();
        let two_step = prop.evolve(&prop.evolve(&prop.ground_state(), t1), t2);
        let one_step = prop.evolve(&prop.ground_state(), t1 + t2);
        for (a, b) in two_step.iter().zip(&one_step) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }
}
