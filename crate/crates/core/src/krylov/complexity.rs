use super::arnoldi::{check_floquet, FloquetVector};
use super::{KrylovBasis, KrylovVector};
use crate::error::bail;
use crate::quantum::{CVector, DenseOperator, Eigensystem};
use crate::Result;
use alloc::vec::Vec;

/// Fraction of a run treated as the saturated regime when time-averaging.
pub const SATURATION_FRACTION: f64 = 0.8;

/// Complexity `K(t)` on a time grid, optionally with `|φ_n(t)|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexitySeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub amplitudes: Option<Vec<Vec<f64>>>,
}

impl ComplexitySeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Mean of `values[range]`.
    pub fn mean_over(&self, range: core::ops::Range<usize>) -> f64 {
        let slice = &self.values[range];
        slice.iter().sum::<f64>() / slice.len() as f64
    }

    /// Index of the first sample in the saturation window (the last 80%).
    pub fn saturation_start(&self) -> usize {
        let n = self.len();
        n - ((n as f64) * SATURATION_FRACTION).floor() as usize
    }

    /// Time average over the saturation window.
    pub fn saturation_mean(&self) -> f64 {
        self.mean_over(self.saturation_start()..self.len())
    }

    /// Largest `|Σ_n |φ_n|² - 1|` over the stored amplitudes.
    pub fn amplitude_defect(&self) -> Option<f64> {
        self.amplitudes
            .as_ref()
            .map(|amps| amps.iter().map(|p| (p.iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max))
    }
}

pub(crate) fn check_seed_matches<V: KrylovVector>(seed: &V, basis: &KrylovBasis<V>) -> Result<()> {
    let k0 = match basis.vectors().first() {
        Some(k) => k,
        None => bail!(InvalidArgument, "empty Krylov basis"),
    };
    if seed.space_dim() != k0.space_dim() {
        bail!(InvalidArgument, "seed and basis live in different spaces");
    }
    let norm = seed.norm();
    if norm < 1e-300 {
        bail!(DegenerateInput, "zero seed vector");
    }
    let mut diff = seed.clone();
    diff.scale(1.0 / norm);
    diff.axpy(crate::quantum::C64::new(-1.0, 0.0), k0);
    if diff.norm() > 1e-8 {
        bail!(InvalidArgument, "Krylov basis was not built from this seed");
    }
    Ok(())
}

pub(crate) fn weighted_position(probabilities: &[f64]) -> f64 {
    probabilities.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
}

/// Complexity along a stroboscopic orbit `seed, step(seed), step²(seed), …`,
/// projected on `basis`; the time grid is `0, 1, …, n_steps`.
pub fn complexity_series_stroboscopic<V, F>(
    mut step: F,
    seed: &V,
    basis: &KrylovBasis<V>,
    n_steps: usize,
    keep_amplitudes: bool,
) -> Result<ComplexitySeries>
where
    V: KrylovVector,
    F: FnMut(&V) -> V,
{
    check_seed_matches(seed, basis)?;
    let mut v = basis.vectors()[0].clone();
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut values = Vec::with_capacity(n_steps + 1);
    let mut amplitudes = keep_amplitudes.then(|| Vec::with_capacity(n_steps + 1));
    for j in 0..=n_steps {
        if j > 0 {
            v = step(&v);
        }
        let probs: Vec<f64> = basis.project(&v).iter().map(|z| z.norm_sqr()).collect();
        times.push(j as f64);
        values.push(weighted_position(&probs));
        if let Some(a) = amplitudes.as_mut() {
            a.push(probs);
        }
    }
    Ok(ComplexitySeries { times, values, amplitudes })
}

/// Floquet complexity `K_j = Σ_n n |(K_n|U^j|K_0)|²` for `j = 0…n_steps`.
pub fn complexity_series_floquet<V: FloquetVector>(
    u: &DenseOperator,
    seed: &V,
    basis: &KrylovBasis<V>,
    n_steps: usize,
    keep_amplitudes: bool,
) -> Result<ComplexitySeries> {
    check_floquet(u)?;
    let m = u.matrix();
    complexity_series_stroboscopic(|v| V::floquet_step(m, v), seed, basis, n_steps, keep_amplitudes)
}

/// Dephased late-time complexity of a state,
/// `Σ_j (Σ_i i |⟨K_i|v_j⟩|²) |⟨v_j|ψ₀⟩|²`.
///
/// Exact as the infinite-time average whenever the eigenvalues are
/// non-degenerate.
pub fn late_time_complexity(eig: &Eigensystem, seed: &CVector, basis: &KrylovBasis<CVector>) -> Result<f64> {
    check_seed_matches(seed, basis)?;
    if seed.len() != eig.dim() {
        bail!(InvalidArgument, "dimension mismatch: {} vs {}", seed.len(), eig.dim());
    }
    let k0 = &basis.vectors()[0];
    let p = eig.overlaps(k0)?;
    let mut total = 0.0;
    for j in 0..eig.dim() {
        let pj = p[j].norm_sqr();
        if pj == 0.0 {
            continue;
        }
        let vj = eig.vector(j);
        let cj: f64 =
            basis.vectors().iter().enumerate().skip(1).map(|(i, k)| i as f64 * k.dotc(&vj).norm_sqr()).sum();
        total += cj * pj;
    }
    Ok(total)
}
