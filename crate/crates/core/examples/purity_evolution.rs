//! Atomic purity over time for one coupling ratio, printed as CSV on stdout.
//!
//! ```text
//! cargo run --release --example purity_evolution -- 0.5 50 > purity.csv
//! ```

use std::f64::consts::PI;

use cavity_purity::{time_grid, Backend, Dynamics, ModelParams};

fn main() -> cavity_purity::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<f64>().expect("numeric argument"));
    let r = args.next().unwrap_or(0.5);
    let nbar = args.next().unwrap_or(50.0);

    let dynamics = Dynamics::new(ModelParams::new(r, nbar)?, Backend::ClosedForm)?;
    let taus = time_grid(0.0, 3.0 * PI * nbar.max(1.0).sqrt(), 1500);
    let series = dynamics.series(&taus)?;

    println!("tau,purity,purity_series,field_purity");
    for p in &series.points {
        println!(
            "{:.6},{:.10},{:.10},{:.10}",
            p.tau, p.purity_direct, p.purity_eq8, p.field_purity
        );
    }
    Ok(())
}
