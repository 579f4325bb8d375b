use super::{
    normalized_seed, project_out, GeneratorKind, KrylovBasis, KrylovOptions, KrylovVector,
    RecurrenceCoefficients, Termination, ORTHOGONALITY_WARNING,
};
use crate::error::bail;
use crate::quantum::{CMatrix, CVector, DenseOperator, C64, UNITARY_TOL};
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// Arnoldi iteration with full orthogonalization.
///
/// Each new direction `A|K_{n-1})` is orthogonalized against every previous
/// basis vector, and again when `reorthogonalize` is set. The normalization
/// `h_{n,n-1}` is the norm of what remains, so the subdiagonal is real and
/// non-negative by construction.
pub fn arnoldi<V, F>(
    mut apply: F,
    seed: &V,
    opts: KrylovOptions,
) -> Result<(KrylovBasis<V>, RecurrenceCoefficients)>
where
    V: KrylovVector,
    F: FnMut(&V) -> V,
{
    let k0 = normalized_seed(seed)?;
    let dim = k0.space_dim();
    let mut basis = vec![k0];
    let mut columns: Vec<Vec<C64>> = Vec::new();
    let mut b = Vec::new();

    let (final_residual, termination) = loop {
        let n = basis.len() - 1;
        let mut w = apply(&basis[n]);
        let mut h = vec![C64::new(0.0, 0.0); basis.len()];
        project_out(&basis, &mut w, &mut h);
        if opts.reorthogonalize {
            project_out(&basis, &mut w, &mut h);
        }
        let beta = w.norm();
        columns.push(h);

        if basis.len() >= dim {
            break (beta, Termination::SpaceExhausted);
        }
        if beta < opts.tol {
            break (beta, Termination::Breakdown);
        }
        if opts.max_iter.is_some_and(|m| n >= m) {
            break (beta, Termination::MaxIter);
        }
        w.scale(1.0 / beta);
        b.push(beta);
        basis.push(w);
    };

    let n = basis.len();
    let mut hess = CMatrix::zeros(n, n);
    for (col, h) in columns.iter().enumerate().take(n) {
        for (row, &v) in h.iter().enumerate() {
            hess[(row, col)] = v;
        }
        if col + 1 < n {
            hess[(col + 1, col)] = C64::new(b[col], 0.0);
        }
    }
    let a = (0..n).map(|k| hess[(k, k)].re).collect();

    let mut kb = KrylovBasis::new(basis, V::SPACE, GeneratorKind::Floquet);
    if !opts.reorthogonalize {
        kb.set_warning(kb.orthonormality_defect() > ORTHOGONALITY_WARNING);
    }
    Ok((kb, RecurrenceCoefficients { a, b, hessenberg: Some(hess), final_residual, termination }))
}

/// One period of Floquet evolution on a vector space.
pub trait FloquetVector: KrylovVector {
    fn floquet_step(u: &CMatrix, v: &Self) -> Self;
}

/// States evolve as `|ψ⟩ ↦ U|ψ⟩`.
impl FloquetVector for CVector {
    fn floquet_step(u: &CMatrix, v: &Self) -> Self {
        u * v
    }
}

/// Operators evolve in the Heisenberg picture, `|O) ↦ |U†OU)`.
impl FloquetVector for CMatrix {
    fn floquet_step(u: &CMatrix, v: &Self) -> Self {
        u.ad_mul(v) * u
    }
}

pub(crate) fn check_floquet(u: &DenseOperator) -> Result<()> {
    if !u.is_unitary() {
        let defect = crate::quantum::unitarity_defect(u.matrix());
        if !(defect < UNITARY_TOL) {
            bail!(InvalidArgument, "Floquet operator is not unitary (defect {defect:e})");
        }
    }
    Ok(())
}

/// Krylov basis of the stroboscopic orbit `{seed, U seed, U² seed, …}`.
pub fn floquet_arnoldi<V: FloquetVector>(
    u: &DenseOperator,
    seed: &V,
    opts: KrylovOptions,
) -> Result<(KrylovBasis<V>, RecurrenceCoefficients)> {
    check_floquet(u)?;
    let expected = match V::SPACE {
        super::SpaceKind::State => u.dim(),
        super::SpaceKind::Operator => u.dim() * u.dim(),
    };
    if seed.space_dim() != expected {
        bail!(InvalidArgument, "seed dimension {} does not match Floquet operator", seed.space_dim());
    }
    let m = u.matrix();
    arnoldi(|v| V::floquet_step(m, v), seed, opts)
}
