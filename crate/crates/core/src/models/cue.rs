use crate::quantum::{CMatrix, DenseOperator, C64};
use nalgebra::QR;
use rand::Rng;
use rand_distr::StandardNormal;

/// Haar-random `d×d` unitary (circular unitary ensemble).
///
/// Columns of a complex Ginibre matrix are orthonormalized by QR, then each
/// column is multiplied by the phase of the matching diagonal entry of `R`,
/// which removes the bias of the QR phase convention.
pub fn sample_cue<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DenseOperator {
    assert!(d >= 1, "CUE dimension must be positive");
    let z = CMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    });
    let qr = QR::new(z);
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..d {
        let rkk = r[(k, k)];
        let n = rkk.norm();
        let phase = if n > 0.0 { rkk / n } else { C64::new(1.0, 0.0) };
        for x in q.column_mut(k).iter_mut() {
            *x *= phase;
        }
    }
    DenseOperator::unitary(q).expect("QR factor is unitary")
}
