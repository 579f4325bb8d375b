use crate::error::bail;
use crate::quantum::pauli;
use crate::quantum::{c, exp_i_hermitian, CMatrix, DenseOperator};
use crate::Result;
#[allow(unused_imports)] // f64 math in no_std builds
use nalgebra::ComplexField;

/// Dense construction is refused beyond this chain length.
pub const MAX_TFIM_SITES: usize = 12;

/// Open Ising chain `H = Σ_k (hx σ_k^x + hz σ_k^z) - J Σ_k σ_k^z σ_{k+1}^z`.
///
/// Site `k` (0-based) is tensor factor `k`, i.e. bit `L-1-k` of the
/// computational index; `|0⟩` is the `σ^z = +1` state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfimSpec {
    pub l: usize,
    pub j: f64,
    pub hx: f64,
    pub hz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

fn pauli_of(axis: Axis) -> CMatrix {
    let [x, y, z] = pauli();
    match axis {
        Axis::X => x,
        Axis::Y => y,
        Axis::Z => z,
    }
}

fn check_chain(l: usize) -> Result<()> {
    if l == 0 {
        bail!(InvalidArgument, "chain length must be positive");
    }
    if l > MAX_TFIM_SITES {
        bail!(ResourceLimit, "chain length {l} exceeds the dense limit of {MAX_TFIM_SITES} sites");
    }
    Ok(())
}

/// `I^{⊗k} ⊗ op ⊗ I^{⊗(L-k-1)}` for a 2×2 `op`.
pub fn site_operator(l: usize, k: usize, op: &CMatrix) -> Result<CMatrix> {
    check_chain(l)?;
    if k >= l || op.shape() != (2, 2) {
        bail!(InvalidArgument, "site {k} of {l}, operator shape {:?}", op.shape());
    }
    let left = CMatrix::identity(1 << k, 1 << k);
    let right = CMatrix::identity(1 << (l - k - 1), 1 << (l - k - 1));
    Ok(left.kronecker(op).kronecker(&right))
}

pub fn tfim_hamiltonian(spec: &TfimSpec) -> Result<DenseOperator> {
    check_chain(spec.l)?;
    if ![spec.j, spec.hx, spec.hz].iter().all(|x| x.is_finite()) {
        bail!(InvalidArgument, "couplings must be finite");
    }
    let [x, _, z] = pauli();
    let field = &x * c(spec.hx) + &z * c(spec.hz);
    let dim = 1 << spec.l;
    let mut h = CMatrix::zeros(dim, dim);
    for k in 0..spec.l {
        h += site_operator(spec.l, k, &field)?;
    }
    for k in 0..spec.l.saturating_sub(1) {
        h -= site_operator(spec.l, k, &z)? * site_operator(spec.l, k + 1, &z)? * c(spec.j);
    }
    DenseOperator::hermitian(h)
}

/// `Σ_k σ_k^axis`.
pub fn collective_operator(l: usize, axis: Axis) -> Result<DenseOperator> {
    collective_from_site_operator(l, &pauli_of(axis))
}

/// `Σ_k op_k` for a Hermitian 2×2 `op` placed on every site.
pub fn collective_from_site_operator(l: usize, op: &CMatrix) -> Result<DenseOperator> {
    check_chain(l)?;
    let dim = 1 << l;
    let mut s = CMatrix::zeros(dim, dim);
    for k in 0..l {
        s += site_operator(l, k, op)?;
    }
    DenseOperator::hermitian(s)
}

/// Single-site rotation `exp[iθ(σx sin φ - σy cos φ)]`.
pub fn site_rotation(theta: f64, phi: f64) -> Result<DenseOperator> {
    let [x, y, _] = pauli();
    let generator = x * c(phi.sin()) - y * c(phi.cos());
    DenseOperator::unitary(exp_i_hermitian(&generator, theta)?)
}

fn reverse_sites(s: usize, l: usize) -> usize {
    (0..l).fold(0, |acc, b| acc | (((s >> b) & 1) << (l - 1 - b)))
}

/// Reflection `k ↔ L-1-k` as a permutation matrix.
pub fn parity_operator(l: usize) -> Result<DenseOperator> {
    check_chain(l)?;
    let dim = 1 << l;
    let mut p = CMatrix::zeros(dim, dim);
    for s in 0..dim {
        p[(reverse_sites(s, l), s)] = c(1.0);
    }
    DenseOperator::unitary(p)
}

/// Isometry onto the reflection-even subspace.
///
/// Columns are `|s⟩` for palindromic configurations and `(|s⟩ + P|s⟩)/√2`
/// otherwise, one column per orbit, ordered by the smaller configuration.
#[derive(Debug, Clone)]
pub struct ParitySector {
    l: usize,
    isometry: CMatrix,
}

impl ParitySector {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.isometry.ncols()
    }

    pub fn isometry(&self) -> &CMatrix {
        &self.isometry
    }
}

pub fn parity_sector(l: usize) -> Result<ParitySector> {
    check_chain(l)?;
    let dim = 1 << l;
    let reps: alloc::vec::Vec<usize> = (0..dim).filter(|&s| s <= reverse_sites(s, l)).collect();
    let mut v = CMatrix::zeros(dim, reps.len());
    let r2 = core::f64::consts::FRAC_1_SQRT_2;
    for (col, &s) in reps.iter().enumerate() {
        let r = reverse_sites(s, l);
        if r == s {
            v[(s, col)] = c(1.0);
        } else {
            v[(s, col)] = c(r2);
            v[(r, col)] = c(r2);
        }
    }
    Ok(ParitySector { l, isometry: v })
}

/// `V† O V`.
pub fn project_positive_parity(op: &DenseOperator, sector: &ParitySector) -> Result<DenseOperator> {
    if op.dim() != sector.isometry.nrows() {
        bail!(InvalidArgument, "operator dimension {} does not match the chain", op.dim());
    }
    let m = sector.isometry.ad_mul(op.matrix()) * &sector.isometry;
    if op.is_hermitian() {
        DenseOperator::hermitian(m)
    } else {
        DenseOperator::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{eigensystem, max_abs_diff, SpectrumKind};

    fn sorted_eigs(op: &DenseOperator) -> alloc::vec::Vec<f64> {
        eigensystem(op, SpectrumKind::Hermitian).unwrap().values().to_vec()
    }

    #[test]
    fn classical_ising_pair() {
        let h = tfim_hamiltonian(&TfimSpec { l: 2, j: 0.7, hx: 0.0, hz: 0.0 }).unwrap();
        let e = sorted_eigs(&h);
        for (got, want) in e.iter().zip([-0.7, -0.7, 0.7, 0.7]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn single_spin() {
        let h = tfim_hamiltonian(&TfimSpec { l: 1, j: 3.0, hx: 0.6, hz: 0.8 }).unwrap();
        let e = sorted_eigs(&h);
        assert!((e[0] + 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn chain_length_guard() {
        let spec = TfimSpec { l: 13, j: 1.0, hx: 1.0, hz: 1.0 };
        assert!(matches!(tfim_hamiltonian(&spec), Err(crate::Error::ResourceLimit(_))));
    }

    #[test]
    fn sector_dimensions() {
        assert_eq!(parity_sector(2).unwrap().dim(), 3);
        for l in 1..=8usize {
            let want = ((1usize << l) + (1usize << l.div_ceil(2))) / 2;
            assert_eq!(parity_sector(l).unwrap().dim(), want, "L={l}");
        }
        assert_eq!(parity_sector(6).unwrap().dim(), 36);
    }

    #[test]
    fn isometry_is_parity_even() {
        let sector = parity_sector(6).unwrap();
        let v = sector.isometry();
        let p = parity_operator(6).unwrap();
        assert!(max_abs_diff(&(v.adjoint() * v), &CMatrix::identity(36, 36)) < 1e-14);
        assert!(max_abs_diff(&(p.matrix() * v), v) < 1e-14);
    }

    #[test]
    fn hamiltonian_and_collective_operators_commute_with_parity() {
        let p = parity_operator(6).unwrap();
        for (j, hx, hz) in [(1.0, 1.0, 0.2), (0.3, -1.1, 2.5)] {
            let h = tfim_hamiltonian(&TfimSpec { l: 6, j, hx, hz }).unwrap();
            let comm = h.matrix() * p.matrix() - p.matrix() * h.matrix();
            assert!(comm.iter().all(|z| z.norm() < 1e-12));
        }
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let s = collective_operator(6, axis).unwrap();
            let comm = s.matrix() * p.matrix() - p.matrix() * s.matrix();
            assert!(comm.iter().all(|z| z.norm() < 1e-13));
        }
    }

    #[test]
    fn collective_small_cases() {
        let sx = collective_operator(1, Axis::X).unwrap();
        assert_eq!(sx.matrix(), &pauli()[0]);
        let e = sorted_eigs(&collective_operator(2, Axis::Z).unwrap());
        for (got, want) in e.iter().zip([-2.0, 0.0, 0.0, 2.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }
}
