//! Exact dynamics of two two-level atoms with unequal couplings `g1`, `g2`
//! to one resonant cavity mode prepared in a coherent state, with the atoms
//! starting in `|-,->`.
//!
//! The rotating-wave Hamiltonian conserves excitation number, so the state
//! splits into independent four-level sectors. Amplitudes come either from
//! closed-form expressions ([`closed_form`]) or from direct diagonalization
//! of each sector block ([`oracle`]); the two are cross-checked everywhere.
//! [`observables`] assembles the joint state and reduces it to the atomic
//! purity, entropies, populations and mean photon number, and [`features`]
//! extracts collapse and revival landmarks.
//!
//! ```
//! use cavity_purity::{Backend, Dynamics, ModelParams};
//!
//! let params = ModelParams::new(0.5, 50.0)?;
//! let dynamics = Dynamics::new(params, Backend::ClosedForm)?;
//! let point = dynamics.observe(3.4)?;
//! assert!(point.purity_direct < 0.3);
//! # Ok::<(), cavity_purity::Error>(())
//! ```

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod features;
pub mod model;
pub mod observables;
pub mod oracle;

pub use closed_form::{amplitudes_closed, sector_spectrum, SectorAmplitudes, SectorSpectrum};
pub use error::{Error, Result};
pub use features::{detect_features, FeatureReport};
pub use model::{choose_truncation, coherent_weights, ModelParams, PoissonWeights};
pub use observables::{
    build_joint_state, field_purity, mean_photon_number, purity_direct, purity_eq8, reduce_atomic,
    time_grid, von_neumann_entropy, AtomicDensityMatrix, Backend, Dynamics, JointState,
    ObservablePoint, ObservableSeries,
};
pub use oracle::{amplitudes_oracle, hamiltonian_block, HamiltonianBlock, SectorPropagator};
