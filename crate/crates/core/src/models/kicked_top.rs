use crate::error::bail;
use crate::quantum::{exp_i_hermitian, CMatrix, DenseOperator, SpinSystem, C64};
use crate::Result;
use core::f64::consts::FRAC_PI_2;

/// Quantum kicked top `U = exp(-i κ/(2j) Jz²) exp(-i α Jy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickedTopSpec {
    /// Twice the spin, `2j`.
    pub two_j: u32,
    pub kappa: f64,
    pub alpha: f64,
}

impl KickedTopSpec {
    /// Spin `j` with kick strength `kappa` and the default precession `α = π/2`.
    pub fn new(j: f64, kappa: f64) -> Result<Self> {
        let spin = crate::quantum::spin_operators(j)?;
        Ok(Self { two_j: spin.two_j(), kappa, alpha: FRAC_PI_2 })
    }

    pub fn spin(&self) -> SpinSystem {
        SpinSystem::from_twice_j(self.two_j)
    }
}

pub fn kicked_top_unitary(spec: &KickedTopSpec) -> Result<DenseOperator> {
    if spec.two_j == 0 {
        bail!(InvalidArgument, "kicked top needs j > 0");
    }
    if !spec.kappa.is_finite() || !spec.alpha.is_finite() {
        bail!(InvalidArgument, "kick strength and precession angle must be finite");
    }
    let spin = spec.spin();
    let j = spin.j();
    // Jz² is diagonal, so its spectral decomposition is the basis itself.
    let torsion = CMatrix::from_diagonal(&crate::CVector::from_fn(spin.dim(), |k, _| {
        let m = j - k as f64;
        C64::from_polar(1.0, -spec.kappa / (2.0 * j) * m * m)
    }));
    let rotation = exp_i_hermitian(spin.jy().matrix(), -spec.alpha)?;
    DenseOperator::unitary(torsion * rotation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{max_abs_diff, unitarity_defect};

    #[test]
    fn zero_kick_is_pure_rotation() {
        let spec = KickedTopSpec::new(2.0, 0.0).unwrap();
        let u = kicked_top_unitary(&spec).unwrap();
        let r = exp_i_hermitian(spec.spin().jy().matrix(), -FRAC_PI_2).unwrap();
        assert!(max_abs_diff(u.matrix(), &r) < 1e-14);
    }

    #[test]
    fn spin_half_torsion_is_a_global_phase() {
        let spec = KickedTopSpec::new(0.5, 3.7).unwrap();
        let u = kicked_top_unitary(&spec).unwrap();
        let r = exp_i_hermitian(spec.spin().jy().matrix(), -FRAC_PI_2).unwrap();
        let phase = C64::from_polar(1.0, -3.7 / 1.0 * 0.25);
        assert!(max_abs_diff(u.matrix(), &(r * phase)) < 1e-14);
    }

    #[test]
    fn unitary_for_paper_parameters() {
        let u = kicked_top_unitary(&KickedTopSpec::new(15.0, 6.0).unwrap()).unwrap();
        assert_eq!(u.dim(), 31);
        assert!(unitarity_defect(u.matrix()) < 1e-10);
    }

    #[test]
    fn zero_spin_rejected() {
        let spec = KickedTopSpec { two_j: 0, kappa: 1.0, alpha: 1.0 };
        assert!(kicked_top_unitary(&spec).is_err());
    }
}
