//! Collapse minimum, revival maximum and measured revival time for a few ratios.

use cavity_purity::cli::RunConfig;
use cavity_purity::{detect_features, Backend, Dynamics};

fn main() -> cavity_purity::Result<()> {
    let config = RunConfig::default();
    let nbar = config.mean_photons;
    println!("nbar = {nbar}");
    println!(
        "{:>5} {:>12} {:>12} {:>10} {:>10}",
        "R", "min purity", "max purity", "T meas", "T pred"
    );
    for r in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let series = Dynamics::new(config.params_for(r, nbar)?, Backend::ClosedForm)?
            .series(&config.time_grid_for(nbar))?;
        let f = detect_features(&series)?;
        println!(
            "{r:5.2} {:12.4} {:12.4} {:10.3} {:10.3}",
            f.purity_collapse_min,
            f.purity_revival_max,
            f.t_revival_measured,
            f.t_revival_predicted
        );
    }
    Ok(())
}
