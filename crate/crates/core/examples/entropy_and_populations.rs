//! Reduced atomic state: spectrum, von Neumann entropy and level populations.

use cavity_purity::{
    build_joint_state, mean_photon_number, purity_direct, reduce_atomic, von_neumann_entropy,
    Backend, ModelParams,
};

fn main() -> cavity_purity::Result<()> {
    let params = ModelParams::new(0.5, 50.0)?;
    println!(
        "{:>6} {:>8} {:>8} {:>9} {:>33} {:>8}",
        "tau", "purity", "S", "<n>", "p(++) p(+-) p(-+) p(--)", "min eig"
    );
    for tau in [0.0, 0.3, 1.0, 3.4, 10.0, 22.2, 44.4] {
        let state = build_joint_state(&params, tau, Backend::ClosedForm)?;
        let rho = reduce_atomic(&state);
        let pops = rho.populations();
        println!(
            "{tau:6.1} {:8.4} {:8.4} {:9.5} {:>33} {:8.1e}",
            purity_direct(&rho),
            von_neumann_entropy(&rho),
            mean_photon_number(&state),
            format!(
                "{:.4} {:.4} {:.4} {:.4}",
                pops[0], pops[1], pops[2], pops[3]
            ),
            rho.eigenvalues()[0]
        );
    }
    println!("max entropy of two qubits: {:.4}", 4f64.ln());
    Ok(())
}
