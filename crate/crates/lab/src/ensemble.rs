//! Parallel ensembles with schedule-independent results.
//!
//! Realization `i` only ever sees its index, so its random inputs come from
//! `derive_seed(master, i, tag)`; results land in indexed slots and are
//! reduced in index order.

use crate::error::{LabError, Result};
use rayon::prelude::*;

/// Runs `f(0..size)` on the current rayon pool, results in index order.
/// The lowest-index error wins.
pub fn ensemble_map<T, F>(size: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let slots: Vec<Result<T>> = (0..size).into_par_iter().map(&f).collect();
    slots.into_iter().collect()
}

/// Pointwise statistics of an ensemble of equally long series.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSeries {
    pub mean: Vec<f64>,
    /// Sample standard deviation.
    pub std: Vec<f64>,
    pub size: usize,
}

impl EnsembleSeries {
    pub fn from_members(members: &[Vec<f64>]) -> Result<Self> {
        let size = members.len();
        if size < 2 {
            return Err(LabError::validation("ensemble_size", "need at least 2 realizations"));
        }
        let len = members[0].len();
        if members.iter().any(|m| m.len() != len) {
            return Err(LabError::Numerical("ensemble members differ in length".into()));
        }
        let n = size as f64;
        let mut mean = vec![0.0; len];
        for m in members {
            for (acc, x) in mean.iter_mut().zip(m) {
                *acc += x;
            }
        }
        mean.iter_mut().for_each(|x| *x /= n);
        let mut std = vec![0.0; len];
        for m in members {
            for ((acc, x), mu) in std.iter_mut().zip(m).zip(&mean) {
                *acc += (x - mu) * (x - mu);
            }
        }
        std.iter_mut().for_each(|x| *x = (*x / (n - 1.0)).sqrt());
        Ok(Self { mean, std, size })
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> Vec<f64> {
        let root = (self.size as f64).sqrt();
        self.std.iter().map(|s| s / root).collect()
    }
}

/// Mean and dispersion of `f(i)` over `i < size`.
pub fn ensemble_average<F>(size: usize, f: F) -> Result<EnsembleSeries>
where
    F: Fn(usize) -> Result<Vec<f64>> + Sync,
{
    if size < 2 {
        return Err(LabError::validation("ensemble_size", "need at least 2 realizations"));
    }
    EnsembleSeries::from_members(&ensemble_map(size, f)?)
}

/// Mean and standard error of a sample.
pub fn mean_stderr(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    if x.len() < 2 {
        return (mean, 0.0);
    }
    let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
