use crate::error::bail;
use crate::quantum::{eigensystem, rotation_operator, DenseOperator, SpectrumKind, SpinSystem, StateVector};
use crate::Result;

/// The whole `dim`-dimensional space viewed as one spin `j = (dim-1)/2`.
pub fn collective_spin(dim: usize) -> Result<SpinSystem> {
    if dim == 0 {
        bail!(InvalidArgument, "dimension must be positive");
    }
    Ok(SpinSystem::from_twice_j((dim - 1) as u32))
}

/// Spin coherent state `R(θ, φ)|j, j⟩`.
pub fn spin_coherent_state(spin: &SpinSystem, theta: f64, phi: f64) -> Result<StateVector> {
    let r = rotation_operator(theta, phi, spin)?;
    StateVector::new(r.matrix().column(0).into_owned())
}

/// `R(θ, φ)|ψ⟩` with the rotation built on the collective spin of the space.
pub fn rotate_state(psi: &StateVector, theta: f64, phi: f64) -> Result<StateVector> {
    let spin = collective_spin(psi.dim())?;
    let r = rotation_operator(theta, phi, &spin)?;
    StateVector::new(r.matrix() * psi.amplitudes())
}

fn spectrum_kind(op: &DenseOperator) -> Result<SpectrumKind> {
    if op.is_unitary() {
        Ok(SpectrumKind::Unitary)
    } else if op.is_hermitian() {
        Ok(SpectrumKind::Hermitian)
    } else {
        bail!(InvalidArgument, "dynamics must carry a unitary or Hermitian attestation")
    }
}

/// `R(θ, φ)|v_which⟩`, eigenvectors ordered by ascending eigenphase (or energy).
pub fn rotated_eigenvector_seed(
    dynamics: &DenseOperator,
    which: usize,
    theta: f64,
    phi: f64,
) -> Result<StateVector> {
    let eig = eigensystem(dynamics, spectrum_kind(dynamics)?)?;
    if which >= eig.dim() {
        bail!(InvalidArgument, "eigenvector index {which} out of range for dimension {}", eig.dim());
    }
    rotate_state(&StateVector::new(eig.vector(which))?, theta, phi)
}

/// Similarity transform `R(θ, φ) U R(θ, φ)†` of the dynamics itself.
pub fn rotated_operator_seed(dynamics: &DenseOperator, theta: f64, phi: f64) -> Result<DenseOperator> {
    let spin = collective_spin(dynamics.dim())?;
    let r = rotation_operator(theta, phi, &spin)?;
    r.conjugate(dynamics)
}
