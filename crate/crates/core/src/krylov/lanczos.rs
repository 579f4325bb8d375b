use super::{
    normalized_seed, project_out, GeneratorKind, KrylovBasis, KrylovOptions, KrylovVector,
    RecurrenceCoefficients, Termination, ORTHOGONALITY_WARNING,
};
use crate::quantum::C64;
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// Lanczos three-term recurrence for a generator `apply` that is Hermitian
/// with respect to the vector inner product.
///
/// With `reorthogonalize` each new direction is additionally projected
/// against all previous vectors, twice. Without it the basis is checked once
/// at the end and [`KrylovBasis::orthogonality_warning`] is raised on loss of
/// orthogonality.
pub fn lanczos<V, F>(
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
    let mut a = Vec::new();
    let mut b: Vec<f64> = Vec::new();
    let mut scratch = Vec::new();

    let (final_residual, termination) = loop {
        let n = basis.len() - 1;
        let mut w = apply(&basis[n]);
        let alpha = basis[n].inner(&w).re;
        w.axpy(C64::new(-alpha, 0.0), &basis[n]);
        if n > 0 {
            w.axpy(C64::new(-b[n - 1], 0.0), &basis[n - 1]);
        }
        if opts.reorthogonalize {
            scratch.clear();
            scratch.resize(basis.len(), C64::new(0.0, 0.0));
            project_out(&basis, &mut w, &mut scratch);
            project_out(&basis, &mut w, &mut scratch);
        }
        a.push(alpha);
        let beta = w.norm();

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

    // The last step computed `a` for the final vector but its residual was
    // rejected, except when stopping on max_iter where the residual is real.
    let mut kb = KrylovBasis::new(basis, V::SPACE, GeneratorKind::Hamiltonian);
    if !opts.reorthogonalize {
        kb.set_warning(kb.orthonormality_defect() > ORTHOGONALITY_WARNING);
    }
    Ok((kb, RecurrenceCoefficients { a, b, hessenberg: None, final_residual, termination }))
}
