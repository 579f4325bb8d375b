//! Dense complex linear algebra and quantum primitives.
//!
//! Index convention: tensor products are row-major, so the pair
//! `(i1, i2)` of a bipartite space with factor dimensions `(d1, d2)` maps to
//! the flat index `i1 * d2 + i2`. Every builder in the crate (states, the
//! RMTE coupling diagonal, the Ising parity operator) uses it.

mod eigen;
mod operator;
mod spin;
mod state;

pub(crate) use eigen::wrap_phase;
pub use eigen::{eigensystem, Eigensystem, SpectrumKind, DEGENERACY_GAP};
pub use operator::{
    commutator, exp_i_hermitian, hs_inner, liouvillian_apply, pauli, tensor_product, trace_norm,
    trace_norm_normalize, DenseOperator, HERMITIAN_TOL, UNITARY_TOL,
};
pub use spin::{rotation_operator, single_spin_rdm, spin_operators, SpinSystem};
pub use state::StateVector;

use nalgebra::{DMatrix, DVector};

pub type C64 = num_complex::Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest entrywise modulus of `A†A - I`.
pub fn unitarity_defect(a: &CMatrix) -> f64 {
    let prod = a.adjoint() * a;
    max_abs_diff(&prod, &CMatrix::identity(a.nrows(), a.ncols()))
}

/// Largest entrywise modulus of `A - A†`.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    max_abs_diff(a, &a.adjoint())
}
