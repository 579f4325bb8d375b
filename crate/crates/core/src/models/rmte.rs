use super::cue::sample_cue;
use super::rng::{substream, tag};
use crate::error::bail;
use crate::quantum::{tensor_product, DenseOperator, C64};
use crate::Result;
use alloc::vec::Vec;
use core::f64::consts::PI;
use rand::Rng;

/// Random matrix transition ensemble member `U_ε = U₁₂(ε)(U₁ ⊗ U₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmteSpec {
    /// Dimension of each subsystem.
    pub d: usize,
    /// Coupling strength in `[0, 1]`.
    pub epsilon: f64,
    pub seed: u64,
}

/// Random ingredients of one RMTE member: the two CUE factors and the
/// coupling phases `ξ_{n₁n₂} ∈ [-½, ½)`, fixed once drawn so that a sweep in
/// `ε` reuses them.
#[derive(Debug, Clone)]
pub struct RmteRealization {
    d: usize,
    u1: DenseOperator,
    u2: DenseOperator,
    xi: Vec<f64>,
}

impl RmteRealization {
    pub fn sample(d: usize, seed: u64) -> Result<Self> {
        if d < 2 {
            bail!(InvalidArgument, "RMTE subsystem dimension must be at least 2, got {d}");
        }
        let u1 = sample_cue(d, &mut substream(seed, 0, tag::CUE_LEFT));
        let u2 = sample_cue(d, &mut substream(seed, 0, tag::CUE_RIGHT));
        let mut rng = substream(seed, 0, tag::COUPLING);
        let xi = (0..d * d).map(|_| rng.random::<f64>() - 0.5).collect();
        Ok(Self { d, u1, u2, xi })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn factors(&self) -> (&DenseOperator, &DenseOperator) {
        (&self.u1, &self.u2)
    }

    /// `ξ` in row-major order, index `n₁·d + n₂`.
    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn unitary(&self, epsilon: f64) -> Result<DenseOperator> {
        if !(0.0..=1.0).contains(&epsilon) {
            bail!(InvalidArgument, "epsilon must lie in [0, 1], got {epsilon}");
        }
        let mut m = tensor_product(&self.u1, &self.u2).into_matrix();
        if epsilon != 0.0 {
            for (row, xi) in self.xi.iter().enumerate() {
                let phase = C64::from_polar(1.0, 2.0 * PI * epsilon * xi);
                for x in m.row_mut(row).iter_mut() {
                    *x *= phase;
                }
            }
        }
        DenseOperator::unitary(m)
    }
}

pub fn rmte_unitary(spec: &RmteSpec) -> Result<DenseOperator> {
    RmteRealization::sample(spec.d, spec.seed)?.unitary(spec.epsilon)
}
