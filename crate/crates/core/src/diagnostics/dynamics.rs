use crate::error::bail;
use crate::quantum::{commutator, single_spin_rdm, CMatrix, DenseOperator, SpinSystem, StateVector};
use crate::Result;
use alloc::vec::Vec;

/// `S₂ = 1 - Tr ρ²` of one constituent spin-½.
pub fn linear_entropy(psi: &StateVector, spin: &SpinSystem) -> Result<f64> {
    let rho = single_spin_rdm(psi, spin)?;
    let purity: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
    Ok(1.0 - purity)
}

/// `S₂` along `ψ, Uψ, …, U^n ψ`.
pub fn linear_entropy_series(
    u: &DenseOperator,
    psi0: &StateVector,
    spin: &SpinSystem,
    n_steps: usize,
) -> Result<Vec<f64>> {
    if u.dim() != spin.dim() || psi0.dim() != spin.dim() {
        bail!(InvalidArgument, "dimensions of U, ψ and the spin do not agree");
    }
    let mut psi = psi0.clone();
    let mut out = Vec::with_capacity(n_steps + 1);
    for step in 0..=n_steps {
        out.push(linear_entropy(&psi, spin)?);
        if step < n_steps {
            psi = StateVector::new(u.matrix() * psi.amplitudes())?;
        }
    }
    Ok(out)
}

/// `-Tr([A, A(n)]²) / (2D)` for `A(n) = U†ⁿ A Uⁿ`, `n = 0..=n_steps`.
///
/// For Hermitian `A` the commutator is anti-Hermitian, so this equals
/// `‖[A, A(n)]‖_F² / (2D)` and is computed that way.
pub fn otoc_series(u: &DenseOperator, a: &DenseOperator, n_steps: usize) -> Result<Vec<f64>> {
    if !a.is_hermitian() {
        bail!(InvalidArgument, "OTOC requires a Hermitian operator");
    }
    crate::krylov::check_floquet(u)?;
    if u.dim() != a.dim() {
        bail!(InvalidArgument, "dimension mismatch: {} vs {}", u.dim(), a.dim());
    }
    let d = a.dim() as f64;
    let mut at: CMatrix = a.matrix().clone();
    let mut out = Vec::with_capacity(n_steps + 1);
    for step in 0..=n_steps {
        let comm = commutator(a.matrix(), &at)?;
        out.push(comm.iter().map(|z| z.norm_sqr()).sum::<f64>() / (2.0 * d));
        if step < n_steps {
            at = u.matrix().ad_mul(&at) * u.matrix();
        }
    }
    Ok(out)
}
