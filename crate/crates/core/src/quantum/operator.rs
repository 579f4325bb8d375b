use crate::error::bail;
use crate::quantum::{c, hermiticity_defect, unitarity_defect, CMatrix, C64, I};
use crate::{Error, Result};
use alloc::format;
use nalgebra::{SymmetricEigen, SVD};

/// Entrywise tolerance for a Hermitian attestation.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Entrywise tolerance on `A†A - I` for a unitary attestation.
pub const UNITARY_TOL: f64 = 1e-10;

/// Square complex matrix with optional Hermitian / unitary attestations.
///
/// The flags are only ever set by constructors that verified them, so a
/// `DenseOperator` reporting `is_unitary()` can be trusted downstream.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    matrix: CMatrix,
    hermitian: bool,
    unitary: bool,
}

impl DenseOperator {
    /// Wraps a square matrix without attestations.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        check_square(&matrix)?;
        Ok(Self { matrix, hermitian: false, unitary: false })
    }

    /// Wraps a matrix that must be Hermitian within [`HERMITIAN_TOL`]. The
    /// stored matrix is symmetrized so the attestation is exact.
    pub fn hermitian(matrix: CMatrix) -> Result<Self> {
        check_square(&matrix)?;
        let defect = hermiticity_defect(&matrix);
        if !(defect < HERMITIAN_TOL) {
            bail!(InvalidArgument, "matrix is not Hermitian (max |A - A†| = {defect:e})");
        }
        let sym = (&matrix + matrix.adjoint()).unscale(2.0);
        Ok(Self { matrix: sym, hermitian: true, unitary: false })
    }

    /// Wraps a matrix that must be unitary within [`UNITARY_TOL`].
    pub fn unitary(matrix: CMatrix) -> Result<Self> {
        check_square(&matrix)?;
        let defect = unitarity_defect(&matrix);
        if !(defect < UNITARY_TOL) {
            bail!(InvalidArgument, "matrix is not unitary (max |A†A - I| = {defect:e})");
        }
        Ok(Self { matrix, hermitian: false, unitary: true })
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: CMatrix::identity(dim, dim), hermitian: true, unitary: true }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint(), hermitian: self.hermitian, unitary: self.unitary }
    }

    /// Matrix product; the unitary attestation survives, Hermiticity does not.
    pub fn compose(&self, rhs: &DenseOperator) -> Result<Self> {
        check_same_dim(self.dim(), rhs.dim())?;
        Ok(Self {
            matrix: &self.matrix * &rhs.matrix,
            hermitian: false,
            unitary: self.unitary && rhs.unitary,
        })
    }

    /// `self · X · self†`.
    pub fn conjugate(&self, x: &DenseOperator) -> Result<DenseOperator> {
        check_same_dim(self.dim(), x.dim())?;
        let matrix = &self.matrix * &x.matrix * self.matrix.adjoint();
        let keep = self.unitary;
        let out = Self { matrix, hermitian: false, unitary: false };
        Ok(match (keep && x.hermitian, keep && x.unitary) {
            (true, _) => DenseOperator::hermitian(out.matrix)?,
            (_, true) => DenseOperator::unitary(out.matrix)?,
            _ => out,
        })
    }
}

fn check_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        bail!(InvalidArgument, "operator must be square and non-empty, got {}x{}", m.nrows(), m.ncols());
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        bail!(InvalidArgument, "operator has non-finite entries");
    }
    Ok(())
}

pub(crate) fn check_same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::InvalidArgument(format!("dimension mismatch: {a} vs {b}")));
    }
    Ok(())
}

/// `exp(i t H)` for Hermitian `H`, through its spectral decomposition.
pub fn exp_i_hermitian(h: &CMatrix, t: f64) -> Result<CMatrix> {
    if !t.is_finite() {
        bail!(InvalidArgument, "non-finite exponent scale");
    }
    let eig = SymmetricEigen::try_new(h.clone(), f64::EPSILON, 0)
        .ok_or_else(|| Error::NumericalFailure("Hermitian eigensolver did not converge".into()))?;
    let mut scaled = eig.eigenvectors.clone();
    for (k, lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = C64::from_polar(1.0, t * lambda);
        for z in scaled.column_mut(k).iter_mut() {
            *z *= phase;
        }
    }
    Ok(scaled * eig.eigenvectors.adjoint())
}

/// Kronecker product `A ⊗ B`, row-major: `(i1, i2) ↦ i1·dim(B) + i2`.
pub fn tensor_product(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    DenseOperator {
        matrix: a.matrix.kronecker(&b.matrix),
        hermitian: a.hermitian && b.hermitian,
        unitary: a.unitary && b.unitary,
    }
}

/// Normalized Hilbert–Schmidt product `(A|B) = Tr(A†B) / D`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<C64> {
    if a.shape() != b.shape() {
        bail!(InvalidArgument, "dimension mismatch: {:?} vs {:?}", a.shape(), b.shape());
    }
    Ok(a.dotc(b) / c(a.nrows() as f64))
}

/// Sum of singular values.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    let svd = SVD::try_new(m.clone(), false, false, f64::EPSILON, 0)
        .ok_or_else(|| Error::NumericalFailure("SVD did not converge".into()))?;
    Ok(svd.singular_values.iter().sum())
}

/// `O / Tr√(O O†)`.
pub fn trace_norm_normalize(op: &DenseOperator) -> Result<DenseOperator> {
    let tn = trace_norm(op.matrix())?;
    if tn < 1e-14 {
        bail!(DegenerateInput, "operator trace norm {tn:e} is too small to normalize");
    }
    Ok(DenseOperator { matrix: op.matrix.unscale(tn), hermitian: op.hermitian, unitary: false })
}

/// `AB - BA`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.shape() != b.shape() || a.nrows() != a.ncols() {
        bail!(InvalidArgument, "dimension mismatch: {:?} vs {:?}", a.shape(), b.shape());
    }
    Ok(a * b - b * a)
}

/// Liouvillian action `[H, O]`, never forming the D²×D² superoperator.
pub fn liouvillian_apply(h: &CMatrix, o: &CMatrix) -> Result<CMatrix> {
    commutator(h, o)
}

pub fn pauli() -> [CMatrix; 3] {
    let z = C64::new(0.0, 0.0);
    let one = c(1.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        CMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
        CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    ]
}
