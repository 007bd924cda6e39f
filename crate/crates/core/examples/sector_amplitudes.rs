//! Closed-form sector amplitudes next to direct diagonalization of the block.

use cavity_purity::{amplitudes_closed, sector_spectrum, SectorPropagator};

fn main() -> cavity_purity::Result<()> {
    let r = 0.5;
    let n = 10;
    let sp = sector_spectrum(n, r)?;
    let prop = SectorPropagator::new(n, r)?;
    println!("n={n} R={r}");
    println!(
        "  closed-form frequencies +-{:.12}, +-{:.12}",
        sp.lambda_plus, sp.lambda_minus
    );
    println!("  block eigenvalues       {:?}", prop.eigenvalues());
    println!("{}", prop.block().matrix);

    println!(
        "{:>6} {:>28} {:>28} {:>10}",
        "tau", "c4 closed", "c4 oracle", "max |d|"
    );
    for tau in [0.0, 0.5, 1.0, 2.5, 10.0, 40.0] {
        let a = amplitudes_closed(n, r, tau)?;
        let b = prop.ground_amplitudes(tau);
        println!(
            "{tau:6.2} {:>28} {:>28} {:10.2e}",
            format!("{:.10}", a.c4),
            format!("{:.10}", b.c4),
            a.max_deviation(&b)
        );
    }
    Ok(())
}
