//! Poisson photon-number weights and the automatic Fock-space cutoff.
//!
//! ```text
//! cargo run --example coherent_weights -- 50
//! ```

use cavity_purity::{choose_truncation, coherent_weights, ModelParams};

fn main() -> cavity_purity::Result<()> {
    let nbar: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("nbar must be a number"))
        .unwrap_or(50.0);

    for tol in [1e-6, 1e-9, 1e-12] {
        println!("tail < {tol:e}: n_max = {}", choose_truncation(nbar, tol));
    }

    let params = ModelParams::new(0.5, nbar)?.with_phase(0.3)?;
    let w = coherent_weights(&params)?;
    println!("retained mass {:.15}", w.total());

    let (mode, peak) =
        w.weights().iter().enumerate().fold(
            (0, 0.0),
            |best, (n, &p)| if p > best.1 { (n, p) } else { best },
        );
    println!("most likely n = {mode} (p = {peak:.5})");
    for n in (0..=w.n_max()).step_by((w.n_max() / 10).max(1)) {
        let a = w.amplitudes()[n];
        println!("  n={n:4}  p={:.3e}  arg={:+.4}", w.weights()[n], a.arg());
    }
    Ok(())
}
