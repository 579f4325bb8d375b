use crate::error::bail;
use crate::quantum::{
    hermiticity_defect, max_abs_diff, unitarity_defect, CMatrix, CVector, DenseOperator, C64, HERMITIAN_TOL,
    UNITARY_TOL,
};
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;
use nalgebra::{Schur, SymmetricEigen};

/// Eigenphases closer than this are treated as one degenerate cluster.
pub const DEGENERACY_GAP: f64 = 1e-9;

const ORTHONORMAL_TOL: f64 = 1e-10;
const RECONSTRUCTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    /// Real energies, ascending.
    Hermitian,
    /// Eigenphases in `[-π, π)`, ascending.
    Unitary,
}

/// Orthonormal eigenbasis together with energies or eigenphases.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    values: Vec<f64>,
    vectors: CMatrix,
    kind: SpectrumKind,
}

impl Eigensystem {
    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Energies (Hermitian) or eigenphases (unitary), ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Columns are the eigenvectors `|v_j⟩`.
    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> CVector {
        self.vectors.column(j).into_owned()
    }

    /// Eigenvalue `E_j` or `e^{iφ_j}`.
    pub fn eigenvalue(&self, j: usize) -> C64 {
        match self.kind {
            SpectrumKind::Hermitian => C64::new(self.values[j], 0.0),
            SpectrumKind::Unitary => C64::from_polar(1.0, self.values[j]),
        }
    }

    /// Overlaps `⟨v_j|ψ⟩` for every `j`.
    pub fn overlaps(&self, psi: &CVector) -> Result<CVector> {
        if psi.len() != self.dim() {
            bail!(InvalidArgument, "dimension mismatch: {} vs {}", psi.len(), self.dim());
        }
        Ok(self.vectors.ad_mul(psi))
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for j in 0..self.dim() {
            let lambda = self.eigenvalue(j);
            for z in scaled.column_mut(j).iter_mut() {
                *z *= lambda;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// Index ranges of degenerate clusters (consecutive values closer than
    /// [`DEGENERACY_GAP`]), singletons included.
    pub fn clusters(&self) -> Vec<core::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..=self.dim() {
            if k == self.dim() || self.values[k] - self.values[k - 1] >= DEGENERACY_GAP {
                out.push(start..k);
                start = k;
            }
        }
        out
    }
}

/// Diagonalizes a Hermitian or unitary operator.
pub fn eigensystem(a: &DenseOperator, kind: SpectrumKind) -> Result<Eigensystem> {
    let m = a.matrix();
    let (mut values, vectors) = match kind {
        SpectrumKind::Hermitian => {
            if !a.is_hermitian() {
                let defect = hermiticity_defect(m);
                if !(defect < HERMITIAN_TOL) {
                    bail!(InvalidArgument, "operator is not Hermitian (defect {defect:e})");
                }
            }
            let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 0)
                .ok_or_else(|| Error::NumericalFailure("Hermitian eigensolver did not converge".into()))?;
            (eig.eigenvalues.iter().copied().collect::<Vec<_>>(), eig.eigenvectors)
        }
        SpectrumKind::Unitary => {
            if !a.is_unitary() {
                let defect = unitarity_defect(m);
                if !(defect < UNITARY_TOL) {
                    bail!(InvalidArgument, "operator is not unitary (defect {defect:e})");
                }
            }
            // A unitary matrix is normal, so its Schur form is diagonal up to
            // rounding and the Schur vectors are an orthonormal eigenbasis.
            let (q, t) = Schur::try_new(m.clone(), f64::EPSILON, 0)
                .ok_or_else(|| Error::NumericalFailure("Schur iteration did not converge".into()))?
                .unpack();
            let phases = (0..t.nrows()).map(|k| wrap_phase(t[(k, k)].arg())).collect();
            (phases, q)
        }
    };

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&x, &y| values[x].total_cmp(&values[y]));
    let sorted_vectors =
        CMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, col| vectors[(r, order[col])]);
    values = order.iter().map(|&k| values[k]).collect();

    let mut es = Eigensystem { values, vectors: sorted_vectors, kind };
    for cluster in es.clusters() {
        if cluster.len() > 1 {
            orthonormalize_columns(&mut es.vectors, cluster);
        }
    }

    let gram = es.vectors.adjoint() * &es.vectors;
    let ortho = max_abs_diff(&gram, &CMatrix::identity(es.dim(), es.dim()));
    if !(ortho < ORTHONORMAL_TOL) {
        bail!(NumericalFailure, "eigenvectors not orthonormal (defect {ortho:e})");
    }
    let recon = max_abs_diff(&es.reconstruct(), m);
    if !(recon < RECONSTRUCTION_TOL) {
        bail!(NumericalFailure, "eigendecomposition residual {recon:e} too large");
    }
    Ok(es)
}

/// Maps an angle into `[-π, π)`.
pub(crate) fn wrap_phase(phi: f64) -> f64 {
    let mut p = phi % (2.0 * PI);
    if p >= PI {
        p -= 2.0 * PI;
    }
    if p < -PI {
        p += 2.0 * PI;
    }
    p
}

/// Modified Gram–Schmidt, applied twice, on a column range.
fn orthonormalize_columns(v: &mut CMatrix, cols: core::ops::Range<usize>) {
    for _ in 0..2 {
        for k in cols.clone() {
            for prev in cols.start..k {
                let proj = v.column(prev).dotc(&v.column(k));
                let p = v.column(prev).into_owned();
                v.column_mut(k).axpy(-proj, &p, C64::new(1.0, 0.0));
            }
            let n = v.column(k).norm();
            v.column_mut(k).unscale_mut(n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::c;
    use alloc::vec;

    #[test]
    fn diagonal_unitary_phases() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = C64::from_polar(1.0, 1.1);
        m[(1, 1)] = C64::from_polar(1.0, 0.3);
        let es = eigensystem(&DenseOperator::unitary(m).unwrap(), SpectrumKind::Unitary).unwrap();
        assert!((es.values()[0] - 0.3).abs() < 1e-14);
        assert!((es.values()[1] - 1.1).abs() < 1e-14);
        assert!((es.vectors()[(1, 0)].norm() - 1.0).abs() < 1e-14);
        assert!((es.vectors()[(0, 1)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_is_fully_degenerate() {
        let es = eigensystem(&DenseOperator::identity(4), SpectrumKind::Unitary).unwrap();
        assert_eq!(es.clusters(), vec![0..4]);
        assert!(max_abs_diff(&es.reconstruct(), &CMatrix::identity(4, 4)) < 1e-9);
        let es = eigensystem(&DenseOperator::identity(4), SpectrumKind::Hermitian).unwrap();
        assert!(es.values().iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn phases_lie_in_half_open_interval() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(-1.0);
        m[(1, 1)] = c(1.0);
        let es = eigensystem(&DenseOperator::unitary(m).unwrap(), SpectrumKind::Unitary).unwrap();
        assert!((es.values()[0] + PI).abs() < 1e-14);
        assert_eq!(wrap_phase(PI), -PI);
        assert!((wrap_phase(3.0 * PI + 0.5) - (-PI + 0.5)).abs() < 1e-12);
    }

    #[test]
    fn hermitian_ascending() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2.0), c(1.0), c(1.0), c(2.0)]);
        let es = eigensystem(&DenseOperator::hermitian(m).unwrap(), SpectrumKind::Hermitian).unwrap();
        assert!((es.values()[0] - 1.0).abs() < 1e-14);
        assert!((es.values()[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn attestation_violation_rejected() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(0.0), c(1.0)]);
        let op = DenseOperator::new(m).unwrap();
        assert!(matches!(eigensystem(&op, SpectrumKind::Hermitian), Err(Error::InvalidArgument(_))));
        assert!(matches!(eigensystem(&op, SpectrumKind::Unitary), Err(Error::InvalidArgument(_))));
    }
}
