#![allow(dead_code)]

use krylov_core::quantum::{CMatrix, CVector, C64};
use rand::Rng;

pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> CMatrix {
    let a = CMatrix::from_fn(d, d, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    (&a + a.adjoint()).unscale(2.0)
}

pub fn random_vector(rng: &mut impl Rng, d: usize) -> CVector {
    CVector::from_fn(d, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

/// `exp(M)` by scaling and squaring of a truncated Taylor series.
pub fn expm_taylor(m: &CMatrix) -> CMatrix {
    let norm = m.iter().map(|z| z.norm()).sum::<f64>();
    let mut s = 0;
    while norm / f64::from(1u32 << s) > 0.25 {
        s += 1;
    }
    let a = m.unscale(f64::from(1u32 << s));
    let n = m.nrows();
    let mut term = CMatrix::identity(n, n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &a / C64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
