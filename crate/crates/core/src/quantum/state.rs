use crate::error::bail;
use crate::quantum::{CVector, C64};
use crate::Result;
#[allow(unused_imports)] // f64 math in no_std builds
use nalgebra::ComplexField;

/// Unit-norm complex amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    /// Normalizes `amplitudes`; fails on a zero or non-finite vector.
    pub fn new(amplitudes: CVector) -> Result<Self> {
        if amplitudes.is_empty() {
            bail!(InvalidArgument, "state vector must have positive dimension");
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() {
            bail!(InvalidArgument, "state vector has non-finite entries");
        }
        if norm < 1e-300 {
            bail!(DegenerateInput, "cannot normalize a zero vector");
        }
        Ok(Self { amplitudes: amplitudes.unscale(norm) })
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            bail!(InvalidArgument, "basis index {k} out of range for dimension {dim}");
        }
        let mut v = CVector::zeros(dim);
        v[k] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Expectation value `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, op: &crate::quantum::CMatrix) -> C64 {
        self.amplitudes.dotc(&(op * &self.amplitudes))
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.modulus_squared()).sum::<f64>().sqrt()
    }
}
