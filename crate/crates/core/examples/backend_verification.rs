//! Full closed-form vs oracle comparison over sectors, ratios and times.

use cavity_purity::cli::{verify_grid, VERIFY_MAX_SECTOR, VERIFY_RATIOS};
use cavity_purity::{time_grid, Backend, Dynamics, ModelParams};

fn main() -> cavity_purity::Result<()> {
    let report = verify_grid(&VERIFY_RATIOS, VERIFY_MAX_SECTOR, &time_grid(0.0, 50.0, 50))?;
    println!(
        "{} amplitude sets, max deviation {:.3e} at n={} R={} tau={:.3} -> {}",
        report.points_checked,
        report.max_deviation,
        report.worst_n,
        report.worst_ratio,
        report.worst_tau,
        if report.passed() { "ok" } else { "MISMATCH" }
    );

    // same comparison at the level of the observables
    let params = ModelParams::new(0.5, 50.0)?;
    let closed = Dynamics::new(params, Backend::ClosedForm)?;
    let oracle = Dynamics::new(params, Backend::Oracle)?;
    for tau in [1.0, 10.0, 44.4] {
        let a = closed.observe(tau)?;
        let b = oracle.observe(tau)?;
        println!(
            "tau={tau:5.1}  purity {:.12} / {:.12}  <n> {:.10} / {:.10}",
            a.purity_direct, b.purity_direct, a.mean_n, b.mean_n
        );
    }
    Ok(())
}
