//! Programmatic sweep: CSVs and features.json written to a directory.
//!
//! ```text
//! cargo run --release --example parameter_sweep -- out_dir
//! ```

use cavity_purity::cli::{run_sweep, RunConfig};

fn main() -> cavity_purity::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "sweep_example".into());
    let config = RunConfig {
        sweep_ratios: vec![0.0, 0.5, 1.0],
        sweep_nbars: vec![25.0, 50.0],
        tau_steps: 1200,
        out: Some(dir.into()),
        ..RunConfig::default()
    };
    let out = run_sweep(&config)?;
    for (path, f) in out.csv_paths.iter().zip(&out.reports) {
        println!(
            "{}  T_rev {:.2} (pred {:.2})",
            path.display(),
            f.t_revival_measured,
            f.t_revival_predicted
        );
    }
    println!("features: {}", out.features_path.display());
    Ok(())
}
