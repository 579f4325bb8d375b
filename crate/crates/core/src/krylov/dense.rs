//! Column-major `f64` kernels for the hot loops of the eigenframe route.

/// `C ← alpha Aᵀ B + beta C` with `A: k×m`, `B: k×n`, `C: m×n`, all
/// column-major and contiguous.
pub(crate) fn gemm_tn(
    m: usize,
    k: usize,
    n: usize,
    alpha: f64,
    a: &[f64],
    b: &[f64],
    beta: f64,
    c: &mut [f64],
) {
    assert!(a.len() >= k * m && b.len() >= k * n && c.len() >= m * n);
    if m == 0 || n == 0 {
        return;
    }
    // SAFETY: the bounds above cover every strided access.
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            alpha,
            a.as_ptr(),
            k as isize,
            1,
            b.as_ptr(),
            1,
            k as isize,
            beta,
            c.as_mut_ptr(),
            1,
            m as isize,
        );
    }
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let (xc, xr) = x.split_at(x.len() & !3);
    let (yc, yr) = y.split_at(xc.len());
    for (a, b) in xc.chunks_exact(4).zip(yc.chunks_exact(4)) {
        for l in 0..4 {
            acc[l] += a[l] * b[l];
        }
    }
    let tail: f64 = xr.iter().zip(yr).map(|(a, b)| a * b).sum();
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    nalgebra::ComplexField::sqrt(dot(x, x))
}

/// Removes from `w` its components along the `count` orthonormal columns
/// stored in `basis` (classical Gram–Schmidt, one pass).
pub(crate) fn project_out_columns(basis: &[f64], len: usize, count: usize, w: &mut [f64], h: &mut [f64]) {
    for (j, hj) in h[..count].iter_mut().enumerate() {
        *hj = dot(&basis[j * len..(j + 1) * len], w);
    }
    for j in 0..count {
        let hj = h[j];
        for (wi, bi) in w.iter_mut().zip(&basis[j * len..(j + 1) * len]) {
            *wi -= hj * bi;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gemm_matches_loops() {
        let (m, k, n) = (5, 7, 3);
        let a: alloc::vec::Vec<f64> = (0..k * m).map(|x| (x as f64 * 0.37).sin()).collect();
        let b: alloc::vec::Vec<f64> = (0..k * n).map(|x| (x as f64 * 0.11).cos()).collect();
        let mut c = alloc::vec![1.0; m * n];
        gemm_tn(m, k, n, 2.0, &a, &b, 0.5, &mut c);
        for i in 0..m {
            for j in 0..n {
                let want: f64 = 0.5 + 2.0 * (0..k).map(|l| a[i * k + l] * b[j * k + l]).sum::<f64>();
                assert!((c[j * m + i] - want).abs() < 1e-12);
            }
        }
    }
}
