use super::{lanczos, KrylovOptions, RecurrenceCoefficients};
use crate::error::bail;
use crate::quantum::{DenseOperator, StateVector};
use crate::Result;

/// Population variance of the Arnoldi coefficients `h_{n,n-1}`.
pub fn arnoldi_subdiag_variance(coeffs: &RecurrenceCoefficients) -> Result<f64> {
    let h = coeffs.subdiagonal();
    if h.len() < 2 {
        bail!(DegenerateInput, "need at least 2 Arnoldi coefficients, got {}", h.len());
    }
    let n = h.len() as f64;
    let mean = h.iter().sum::<f64>() / n;
    Ok(h.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n)
}

/// Energy variance `⟨H²⟩ - ⟨H⟩²` of `ψ₀` next to the squared first Lanczos
/// coefficient `b₁²`; the two agree for any Hermitian `H`.
pub fn variance_identity_check(h: &DenseOperator, psi0: &StateVector) -> Result<(f64, f64)> {
    if h.dim() != psi0.dim() {
        bail!(InvalidArgument, "dimension mismatch: {} vs {}", h.dim(), psi0.dim());
    }
    let m = h.matrix();
    let hpsi = m * psi0.amplitudes();
    let mean = psi0.amplitudes().dotc(&hpsi).re;
    let second = hpsi.norm_squared();
    let variance = second - mean * mean;

    let opts = KrylovOptions { max_iter: Some(1), ..Default::default() };
    let (_, coeffs) = lanczos(|v| m * v, psi0.amplitudes(), opts)?;
    let b1 = coeffs.b.first().copied().unwrap_or(coeffs.final_residual);
    Ok((variance, b1 * b1))
}
