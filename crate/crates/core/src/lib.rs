//! Krylov spread complexity for quantum states and operators.
//!
//! The crate is `no_std` (it only needs `alloc`) and covers the numerical
//! side of the toolkit:
//!
//! - [`quantum`]: dense complex operators, spin matrices, rotations,
//!   eigensystems of Hermitian and unitary matrices, Hilbert–Schmidt
//!   geometry.
//! - [`krylov`]: Lanczos and full-orthogonalization Arnoldi, complexity time
//!   series for Hamiltonian and Floquet dynamics, late-time decomposition.
//! - [`models`]: random matrix transition ensemble, quantum kicked top,
//!   transverse-field Ising chain, seed states and operators.
//! - [`diagnostics`]: inverse participation ratios, gap-ratio statistics,
//!   linear entropy and OTOC dynamics.
//!
//! IO, configuration and the experiment runner live in the `krylov-lab`
//! crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod diagnostics;
mod error;
pub mod krylov;
pub mod models;
pub mod quantum;

pub use error::{Error, Result};
pub use quantum::{CMatrix, CVector, C64};
