use crate::error::bail;
use crate::quantum::{trace_norm_normalize, CMatrix, DenseOperator, Eigensystem, StateVector};
use crate::Result;
use nalgebra::Schur;

/// `Σ_i |⟨v_i|ψ⟩|⁴`.
pub fn ipr_state(psi: &StateVector, eig: &Eigensystem) -> Result<f64> {
    let overlaps = eig.overlaps(psi.amplitudes())?;
    Ok(overlaps.iter().map(|z| z.norm_sqr() * z.norm_sqr()).sum())
}

/// `Σ_i |⟨v_i|Ô|v_i⟩|²` with `Ô = O / Tr√(OO†)`.
///
/// Inside a degenerate cluster the diagonal is taken from the Schur form of
/// the restricted block, i.e. its eigenvalues, which does not depend on the
/// basis the eigensolver happened to return.
pub fn ipr_operator(op: &DenseOperator, eig: &Eigensystem) -> Result<f64> {
    if op.dim() != eig.dim() {
        bail!(InvalidArgument, "dimension mismatch: {} vs {}", op.dim(), eig.dim());
    }
    let o = trace_norm_normalize(op)?;
    let v = eig.vectors();
    let mut total = 0.0;
    for cluster in eig.clusters() {
        let cols = v.columns(cluster.start, cluster.len());
        let block: CMatrix = cols.ad_mul(&(o.matrix() * cols));
        if cluster.len() == 1 {
            total += block[(0, 0)].norm_sqr();
            continue;
        }
        let t = Schur::try_new(block, f64::EPSILON, 0)
            .ok_or_else(|| crate::Error::NumericalFailure("Schur iteration did not converge".into()))?
            .unpack()
            .1;
        total += (0..t.nrows()).map(|k| t[(k, k)].norm_sqr()).sum::<f64>();
    }
    Ok(total)
}
