//! Krylov basis construction and spread complexity.
//!
//! Basis builders are generic over [`KrylovVector`], so the same Lanczos
//! and Arnoldi code serves state vectors, operators under the normalized
//! Hilbert–Schmidt product, and the real eigenframe representation used for
//! Liouvillian dynamics ([`LiouvillianFrame`]).
//!
//! Krylov index `n` starts at 0 for the normalized seed, and complexity is
//! `K(t) = Σ_n n |φ_n(t)|²`.

mod arnoldi;
mod complexity;
mod dense;
mod lanczos;
mod liouvillian;
mod stats;

pub(crate) use arnoldi::check_floquet;
pub use arnoldi::{arnoldi, floquet_arnoldi, FloquetVector};
pub use complexity::{
    complexity_series_floquet, complexity_series_stroboscopic, late_time_complexity, ComplexitySeries,
    SATURATION_FRACTION,
};
pub use lanczos::lanczos;
pub use liouvillian::{complexity_series_hamiltonian, LiouvillianFrame};
pub use stats::{arnoldi_subdiag_variance, variance_identity_check};

use crate::quantum::{CMatrix, CVector, C64};
use alloc::vec::Vec;
use nalgebra::DVector;

/// Default breakdown threshold on the norm of a new (unnormalized) direction.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Loss of orthogonality beyond this sets [`KrylovBasis::orthogonality_warning`].
pub const ORTHOGONALITY_WARNING: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    State,
    Operator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Hamiltonian,
    Floquet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The new direction fell below the tolerance.
    Breakdown,
    /// The basis spans the whole space.
    SpaceExhausted,
    /// `max_iter` reached first.
    MaxIter,
}

/// Vector in an inner-product space that a Krylov iteration can act on.
pub trait KrylovVector: Clone {
    const SPACE: SpaceKind;

    /// Inner product, conjugate-linear in `self`.
    fn inner(&self, other: &Self) -> C64;
    /// `self += alpha · x`.
    fn axpy(&mut self, alpha: C64, x: &Self);
    fn scale(&mut self, alpha: f64);
    /// Dimension of the ambient space.
    fn space_dim(&self) -> usize;

    fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }
}

impl KrylovVector for CVector {
    const SPACE: SpaceKind = SpaceKind::State;

    fn inner(&self, other: &Self) -> C64 {
        self.dotc(other)
    }

    fn axpy(&mut self, alpha: C64, x: &Self) {
        nalgebra::Matrix::axpy(self, alpha, x, C64::new(1.0, 0.0));
    }

    fn scale(&mut self, alpha: f64) {
        self.scale_mut(alpha);
    }

    fn space_dim(&self) -> usize {
        self.len()
    }

    fn norm(&self) -> f64 {
        nalgebra::Matrix::norm(self)
    }
}

/// Real vectors; complex coefficients are truncated to their real part,
/// which is exact whenever the generator preserves realness.
impl KrylovVector for DVector<f64> {
    const SPACE: SpaceKind = SpaceKind::State;

    fn inner(&self, other: &Self) -> C64 {
        C64::new(self.dot(other), 0.0)
    }

    fn axpy(&mut self, alpha: C64, x: &Self) {
        nalgebra::Matrix::axpy(self, alpha.re, x, 1.0);
    }

    fn scale(&mut self, alpha: f64) {
        self.scale_mut(alpha);
    }

    fn space_dim(&self) -> usize {
        self.len()
    }

    fn norm(&self) -> f64 {
        nalgebra::Matrix::norm(self)
    }
}

/// Operators with `(A|B) = Tr(A†B)/D`.
impl KrylovVector for CMatrix {
    const SPACE: SpaceKind = SpaceKind::Operator;

    fn inner(&self, other: &Self) -> C64 {
        self.dotc(other) / C64::new(self.nrows() as f64, 0.0)
    }

    fn axpy(&mut self, alpha: C64, x: &Self) {
        for (s, xi) in self.iter_mut().zip(x.iter()) {
            *s += alpha * xi;
        }
    }

    fn scale(&mut self, alpha: f64) {
        self.scale_mut(alpha);
    }

    fn space_dim(&self) -> usize {
        self.nrows() * self.ncols()
    }
}

/// Options shared by [`lanczos`] and [`arnoldi`].
#[derive(Debug, Clone, Copy)]
pub struct KrylovOptions {
    /// Breakdown threshold on the norm of the new direction (vectors are
    /// normalized, so this is relative to the seed scale).
    pub tol: f64,
    /// Re-project every new direction against all previous basis vectors,
    /// twice.
    pub reorthogonalize: bool,
    /// Maximum number of new basis vectors after the seed.
    pub max_iter: Option<usize>,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, reorthogonalize: true, max_iter: None }
    }
}

/// Ordered orthonormal Krylov vectors; `vectors()[0]` is the normalized seed.
#[derive(Debug, Clone)]
pub struct KrylovBasis<V> {
    vectors: Vec<V>,
    space: SpaceKind,
    generator: GeneratorKind,
    orthogonality_warning: bool,
}

impl<V: KrylovVector> KrylovBasis<V> {
    pub(crate) fn new(vectors: Vec<V>, space: SpaceKind, generator: GeneratorKind) -> Self {
        Self { vectors, space, generator, orthogonality_warning: false }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[V] {
        &self.vectors
    }

    pub fn space_kind(&self) -> SpaceKind {
        self.space
    }

    pub fn generator_kind(&self) -> GeneratorKind {
        self.generator
    }

    /// Set when an iteration without reorthogonalization lost orthogonality
    /// beyond [`ORTHOGONALITY_WARNING`].
    pub fn orthogonality_warning(&self) -> bool {
        self.orthogonality_warning
    }

    /// Amplitudes `φ_n = ⟨K_n|v⟩`.
    pub fn project(&self, v: &V) -> Vec<C64> {
        self.vectors.iter().map(|k| k.inner(v)).collect()
    }

    /// `max_{i,j} |⟨K_i|K_j⟩ - δ_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, ki) in self.vectors.iter().enumerate() {
            for (j, kj) in self.vectors.iter().enumerate().skip(i) {
                let mut g = ki.inner(kj);
                if i == j {
                    g -= C64::new(1.0, 0.0);
                }
                worst = worst.max(g.norm());
            }
        }
        worst
    }

    pub(crate) fn with_space(mut self, space: SpaceKind) -> Self {
        self.space = space;
        self
    }

    pub(crate) fn set_warning(&mut self, flag: bool) {
        self.orthogonality_warning = flag;
    }
}

/// Recurrence coefficients of a Krylov iteration.
///
/// `b[n-1]` is the normalization of `K_n` (Lanczos `b_n`, or the Arnoldi
/// subdiagonal `h_{n,n-1}`, always real and non-negative). `a[n]` is the
/// real diagonal `⟨K_n|A|K_n⟩`. Arnoldi additionally stores the full
/// projected upper-Hessenberg matrix.
#[derive(Debug, Clone)]
pub struct RecurrenceCoefficients {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub hessenberg: Option<CMatrix>,
    /// Norm of the rejected direction that ended the iteration.
    pub final_residual: f64,
    pub termination: Termination,
}

impl RecurrenceCoefficients {
    /// Arnoldi coefficients `h_{n,n-1}`, `n ≥ 1`.
    pub fn subdiagonal(&self) -> &[f64] {
        &self.b
    }
}

pub(crate) fn normalized_seed<V: KrylovVector>(seed: &V) -> crate::Result<V> {
    let norm = seed.norm();
    if !norm.is_finite() {
        return Err(crate::Error::InvalidArgument("seed has non-finite entries".into()));
    }
    if norm < 1e-300 {
        return Err(crate::Error::DegenerateInput("zero seed vector".into()));
    }
    let mut k0 = seed.clone();
    k0.scale(1.0 / norm);
    Ok(k0)
}

/// Subtracts the projections on every vector of `basis` from `w`,
/// accumulating the coefficients into `coeffs`.
pub(crate) fn project_out<V: KrylovVector>(basis: &[V], w: &mut V, coeffs: &mut [C64]) {
    for (k, c) in basis.iter().zip(coeffs.iter_mut()) {
        let proj = k.inner(w);
        w.axpy(-proj, k);
        *c += proj;
    }
}
