//! Dynamical systems and seed conditions.
//!
//! Every builder is a pure function of its spec: random ingredients come from
//! [`rng::substream`], so a `(master seed, realization, component)` triple
//! always reproduces the same matrix.

mod cue;
mod kicked_top;
mod rmte;
pub mod rng;
mod seeds;
mod tfim;

pub use cue::sample_cue;
pub use kicked_top::{kicked_top_unitary, KickedTopSpec};
pub use rmte::{rmte_unitary, RmteRealization, RmteSpec};
pub use seeds::{
    collective_spin, rotate_state, rotated_eigenvector_seed, rotated_operator_seed, spin_coherent_state,
};
pub use tfim::{
    collective_from_site_operator, collective_operator, parity_operator, parity_sector,
    project_positive_parity, site_operator, site_rotation, tfim_hamiltonian, Axis, ParitySector, TfimSpec,
    MAX_TFIM_SITES,
};
