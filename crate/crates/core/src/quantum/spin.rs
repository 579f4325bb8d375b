use crate::error::bail;
use crate::quantum::operator::{check_same_dim, pauli};
use crate::quantum::{c, exp_i_hermitian, CMatrix, DenseOperator, StateVector, C64, I};
use crate::Result;
#[allow(unused_imports)] // f64 math in no_std builds
use nalgebra::ComplexField;

/// Angular-momentum matrices of a spin `j` (ħ = 1).
///
/// Basis index `k` carries magnetic number `m = j - k`, so `Jz` is
/// `diag(j, j-1, …, -j)`.
#[derive(Debug, Clone)]
pub struct SpinSystem {
    two_j: u32,
    jx: DenseOperator,
    jy: DenseOperator,
    jz: DenseOperator,
}

impl SpinSystem {
    /// Builds the spin from `2j`, which is always a valid half-integer.
    pub fn from_twice_j(two_j: u32) -> Self {
        let dim = two_j as usize + 1;
        let j = f64::from(two_j) / 2.0;
        let m = |k: usize| j - k as f64;
        // ⟨m+1|J+|m⟩ = sqrt(j(j+1) - m(m+1)); J+ connects index k+1 -> k.
        let mut jp = CMatrix::zeros(dim, dim);
        for k in 0..dim.saturating_sub(1) {
            let mk = m(k + 1);
            jp[(k, k + 1)] = c((j * (j + 1.0) - mk * (mk + 1.0)).sqrt());
        }
        let jm = jp.adjoint();
        let jx = (&jp + &jm).unscale(2.0);
        let jy = (&jp - &jm) * (-I / c(2.0));
        let jz = CMatrix::from_diagonal(&crate::CVector::from_fn(dim, |k, _| c(m(k))));
        Self {
            two_j,
            jx: DenseOperator::hermitian(jx).expect("Jx is Hermitian by construction"),
            jy: DenseOperator::hermitian(jy).expect("Jy is Hermitian by construction"),
            jz: DenseOperator::hermitian(jz).expect("Jz is Hermitian by construction"),
        }
    }

    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn jx(&self) -> &DenseOperator {
        &self.jx
    }

    pub fn jy(&self) -> &DenseOperator {
        &self.jy
    }

    pub fn jz(&self) -> &DenseOperator {
        &self.jz
    }

    /// `|j, m = j⟩`.
    pub fn highest_weight(&self) -> StateVector {
        StateVector::basis(self.dim(), 0).expect("dimension is positive")
    }
}

/// Spin matrices for angular momentum `j`; `2j` must be a non-negative integer.
pub fn spin_operators(j: f64) -> Result<SpinSystem> {
    let two_j = 2.0 * j;
    if !two_j.is_finite() || two_j < 0.0 || (two_j - two_j.round()).abs() > 1e-12 || two_j > 1e6 {
        bail!(InvalidArgument, "j = {j} is not a non-negative half-integer");
    }
    Ok(SpinSystem::from_twice_j(two_j.round() as u32))
}

/// `R(θ, φ) = exp[iθ(Jx sin φ - Jy cos φ)]`.
pub fn rotation_operator(theta: f64, phi: f64, spin: &SpinSystem) -> Result<DenseOperator> {
    if !theta.is_finite() || !phi.is_finite() {
        bail!(InvalidArgument, "rotation angles must be finite");
    }
    let generator = spin.jx.matrix() * c(phi.sin()) - spin.jy.matrix() * c(phi.cos());
    DenseOperator::unitary(exp_i_hermitian(&generator, theta)?)
}

/// One-qubit reduced state of a spin-`j` state viewed as `2j` spin-½
/// constituents in the symmetric subspace:
/// `ρ = ½(I + Σ_α ⟨J_α⟩/j σ_α)`.
pub fn single_spin_rdm(psi: &StateVector, spin: &SpinSystem) -> Result<CMatrix> {
    check_same_dim(psi.dim(), spin.dim())?;
    if spin.two_j == 0 {
        bail!(InvalidArgument, "spin j = 0 has no constituent qubit");
    }
    let j = spin.j();
    let [sx, sy, sz] = pauli();
    let rx = psi.expectation(spin.jx.matrix()).re / j;
    let ry = psi.expectation(spin.jy.matrix()).re / j;
    let rz = psi.expectation(spin.jz.matrix()).re / j;
    let rho = (CMatrix::identity(2, 2) + sx * c(rx) + sy * c(ry) + sz * c(rz)) * C64::new(0.5, 0.0);
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{max_abs_diff, unitarity_defect};
    use alloc::vec::Vec;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn comm(a: &CMatrix, b: &CMatrix) -> CMatrix {
        a * b - b * a
    }

    #[test]
    fn spin_half_is_pauli_over_two() {
        let s = spin_operators(0.5).unwrap();
        let [sx, sy, sz] = pauli();
        assert!(max_abs_diff(s.jx().matrix(), &sx.unscale(2.0)) < 1e-15);
        assert!(max_abs_diff(s.jy().matrix(), &sy.unscale(2.0)) < 1e-15);
        assert!(max_abs_diff(s.jz().matrix(), &sz.unscale(2.0)) < 1e-15);
    }

    #[test]
    fn spin_one_ladder_elements() {
        let s = spin_operators(1.0).unwrap();
        assert!((s.jx().matrix()[(0, 1)].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.jx().matrix()[(1, 2)].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(s.jx().matrix()[(0, 2)], c(0.0));
    }

    #[test]
    fn commutation_and_casimir_up_to_j_twenty() {
        for two_j in 0..=40 {
            let s = SpinSystem::from_twice_j(two_j);
            let (x, y, z) = (s.jx().matrix(), s.jy().matrix(), s.jz().matrix());
            assert!(max_abs_diff(&comm(x, y), &(z * I)) < 1e-12, "2j={two_j}");
            assert!(max_abs_diff(&comm(y, z), &(x * I)) < 1e-12, "2j={two_j}");
            assert!(max_abs_diff(&comm(z, x), &(y * I)) < 1e-12, "2j={two_j}");
            let j = s.j();
            let cas = x * x + y * y + z * z;
            let want = CMatrix::identity(s.dim(), s.dim()) * c(j * (j + 1.0));
            assert!(max_abs_diff(&cas, &want) < 1e-10, "2j={two_j}");
        }
        let s = spin_operators(15.0).unwrap();
        assert_eq!(s.dim(), 31);
        assert!((s.jz().matrix()[(0, 0)].re - 15.0).abs() < 1e-15);
        assert!((s.jz().matrix()[(30, 30)].re + 15.0).abs() < 1e-15);
    }

    #[test]
    fn non_half_integer_rejected() {
        assert!(spin_operators(0.3).is_err());
        assert!(spin_operators(-1.0).is_err());
        assert!(spin_operators(f64::NAN).is_err());
    }

    #[test]
    fn rotation_examples() {
        let s = spin_operators(0.5).unwrap();
        let r = rotation_operator(0.0, 1.3, &s).unwrap();
        assert!(max_abs_diff(r.matrix(), &CMatrix::identity(2, 2)) < 1e-15);

        // 2×2 oracle: exp(iπσx/2) = cos(π/2) I + i sin(π/2) σx.
        let [sx, ..] = pauli();
        let r = rotation_operator(PI, FRAC_PI_2, &s).unwrap();
        let oracle = CMatrix::identity(2, 2) * c((PI / 2.0).cos()) + sx * (I * c((PI / 2.0).sin()));
        assert!(max_abs_diff(r.matrix(), &oracle) < 1e-14);

        let s = spin_operators(7.5).unwrap();
        for (theta, phi) in [(0.3, 0.1), (2.0, 4.0), (-1.0, 0.7)] {
            let r = rotation_operator(theta, phi, &s).unwrap();
            assert!(unitarity_defect(r.matrix()) < 1e-10);
        }
        assert!(rotation_operator(f64::INFINITY, 0.0, &s).is_err());
    }

    #[test]
    fn rdm_of_highest_weight_is_pure() {
        let s = spin_operators(3.0).unwrap();
        let rho = single_spin_rdm(&s.highest_weight(), &s).unwrap();
        let want = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)]);
        assert!(max_abs_diff(&rho, &want) < 1e-14);
    }

    #[test]
    fn rdm_of_unpolarized_state_is_maximally_mixed() {
        // |j=1, m=0⟩ has ⟨J⟩ = 0.
        let s = spin_operators(1.0).unwrap();
        let psi = StateVector::basis(3, 1).unwrap();
        let rho = single_spin_rdm(&psi, &s).unwrap();
        assert!(max_abs_diff(&rho, &CMatrix::identity(2, 2).unscale(2.0)) < 1e-14);
    }

    #[test]
    fn rdm_is_a_density_matrix() {
        let s = spin_operators(4.5).unwrap();
        let amps: Vec<C64> =
            (0..s.dim()).map(|k| C64::new((k as f64).sin(), (k as f64 * 0.7).cos())).collect();
        let psi = StateVector::new(crate::CVector::from_vec(amps)).unwrap();
        let rho = single_spin_rdm(&psi, &s).unwrap();
        assert!(max_abs_diff(&rho, &rho.adjoint()) < 1e-12);
        assert!(((rho[(0, 0)] + rho[(1, 1)]).re - 1.0).abs() < 1e-12);
        let ev = nalgebra::SymmetricEigen::new(rho).eigenvalues;
        assert!(ev.iter().all(|&l| l > -1e-10 && l < 1.0 + 1e-10));
    }

    #[test]
    fn rdm_requires_positive_spin() {
        let s = spin_operators(0.0).unwrap();
        assert!(single_spin_rdm(&s.highest_weight(), &s).is_err());
    }
}
