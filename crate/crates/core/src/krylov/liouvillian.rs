use super::complexity::{check_seed_matches, weighted_position};
use super::dense::{gemm_tn, norm, project_out_columns};
use super::{
    lanczos, ComplexitySeries, GeneratorKind, KrylovBasis, KrylovOptions, RecurrenceCoefficients, SpaceKind,
    Termination,
};
use crate::error::bail;
use crate::quantum::{eigensystem, CMatrix, DenseOperator, Eigensystem, SpectrumKind, C64};
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math in no_std builds
use nalgebra::ComplexField;
use nalgebra::DVector;

/// Time samples evaluated per dense product in the complexity series.
const TIME_BLOCK: usize = 64;

/// Operator space of a Hamiltonian seen from its energy eigenbasis.
///
/// In the eigenbasis the Liouvillian `[H, ·]` is diagonal, multiplying the
/// matrix element `(i, j)` by `ω_ij = E_i - E_j`. Every Krylov vector of a
/// seed `O` is then `P_n(ω_ij) Õ_ij` for a real polynomial `P_n`, so the
/// fixed phases of `Õ_ij` can be factored out and the whole construction
/// runs on real vectors of weights `|Õ_ij| / √D` (normalized Hilbert–Schmidt
/// geometry). [`LiouvillianFrame::to_operator`] maps a frame vector back to
/// the operator it represents.
///
/// For a Hermitian seed the weights are symmetric under `(i, j) ↔ (j, i)`
/// while `ω` flips sign, so even Krylov vectors are symmetric and odd ones
/// antisymmetric. The recurrence then runs on the upper triangle only,
/// one parity at a time.
#[derive(Debug, Clone)]
pub struct LiouvillianFrame {
    eig: Eigensystem,
    frequencies: DVector<f64>,
    weights: DVector<f64>,
    phases: Vec<C64>,
    folded: Option<Folded>,
}

/// Upper-triangle coordinates. Symmetric vectors use `d` diagonal entries
/// followed by `√2 v_ij` for the pairs `i < j`; antisymmetric vectors use
/// the pairs only.
#[derive(Debug, Clone)]
struct Folded {
    d: usize,
    pairs: Vec<(usize, usize)>,
    omega: Vec<f64>,
}

impl Folded {
    fn new(d: usize, e: &[f64]) -> Self {
        let mut pairs = Vec::with_capacity(d * (d - 1) / 2);
        let mut omega = Vec::with_capacity(d * (d - 1) / 2);
        for i in 0..d {
            for j in i + 1..d {
                pairs.push((i, j));
                omega.push(e[i] - e[j]);
            }
        }
        Self { d, pairs, omega }
    }

    fn len(&self, even: bool) -> usize {
        self.pairs.len() + if even { self.d } else { 0 }
    }

    fn fold(&self, v: &DVector<f64>, even: bool, out: &mut [f64]) {
        let d = self.d;
        let r2 = core::f64::consts::FRAC_1_SQRT_2;
        let off = if even { d } else { 0 };
        if even {
            for i in 0..d {
                out[i] = v[i * d + i];
            }
        }
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            let (a, b) = (v[i * d + j], v[j * d + i]);
            out[off + p] = if even { (a + b) * r2 } else { (a - b) * r2 };
        }
    }

    fn unfold(&self, x: &[f64], even: bool) -> DVector<f64> {
        let d = self.d;
        let r2 = core::f64::consts::FRAC_1_SQRT_2;
        let mut v = DVector::zeros(d * d);
        let off = if even { d } else { 0 };
        if even {
            for i in 0..d {
                v[i * d + i] = x[i];
            }
        }
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            let y = x[off + p] * r2;
            v[i * d + j] = y;
            v[j * d + i] = if even { y } else { -y };
        }
        v
    }

    /// Liouvillian from one parity to the other.
    fn apply(&self, x: &[f64], from_even: bool, out: &mut [f64]) {
        let d = self.d;
        if from_even {
            for (p, &w) in self.omega.iter().enumerate() {
                out[p] = w * x[d + p];
            }
        } else {
            out[..d].fill(0.0);
            for (p, &w) in self.omega.iter().enumerate() {
                out[d + p] = w * x[p];
            }
        }
    }
}

impl LiouvillianFrame {
    pub fn new(h: &DenseOperator, seed: &DenseOperator) -> Result<Self> {
        let eig = eigensystem(h, SpectrumKind::Hermitian)?;
        Self::from_eigensystem(eig, seed)
    }

    pub fn from_eigensystem(eig: Eigensystem, seed: &DenseOperator) -> Result<Self> {
        if eig.kind() != SpectrumKind::Hermitian {
            bail!(InvalidArgument, "Liouvillian frame needs a Hermitian eigensystem");
        }
        let d = eig.dim();
        if seed.dim() != d {
            bail!(InvalidArgument, "dimension mismatch: {} vs {}", seed.dim(), d);
        }
        let v = eig.vectors();
        let mut rotated = v.ad_mul(seed.matrix()) * v;
        if seed.is_hermitian() {
            rotated = (&rotated + rotated.adjoint()).unscale(2.0);
        }
        let scale = 1.0 / (d as f64).sqrt();
        let e = eig.values();
        let mut frequencies = DVector::zeros(d * d);
        let mut weights = DVector::zeros(d * d);
        let mut phases = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let k = i * d + j;
                let z = rotated[(i, j)];
                let r = z.norm();
                frequencies[k] = e[i] - e[j];
                weights[k] = r * scale;
                phases.push(if r > 0.0 { z / r } else { C64::new(1.0, 0.0) });
            }
        }
        let folded = seed.is_hermitian().then(|| Folded::new(d, e));
        Ok(Self { eig, frequencies, weights, phases, folded })
    }

    pub fn eigensystem(&self) -> &Eigensystem {
        &self.eig
    }

    /// Seed in frame coordinates (not normalized).
    pub fn seed(&self) -> &DVector<f64> {
        &self.weights
    }

    /// `ω_ij = E_i - E_j` in row-major order.
    pub fn frequencies(&self) -> &DVector<f64> {
        &self.frequencies
    }

    /// Liouvillian action in frame coordinates.
    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        v.component_mul(&self.frequencies)
    }

    /// Lanczos on the seed's Liouvillian orbit.
    ///
    /// Hermitian seeds with `reorthogonalize` take the parity-split route;
    /// the returned basis is in full frame coordinates either way.
    pub fn krylov(&self, opts: KrylovOptions) -> Result<(KrylovBasis<DVector<f64>>, RecurrenceCoefficients)> {
        match &self.folded {
            Some(f) if opts.reorthogonalize => self.folded_lanczos(f, opts),
            _ => {
                let (basis, coeffs) = lanczos(|v| self.apply(v), &self.weights, opts)?;
                Ok((basis.with_space(SpaceKind::Operator), coeffs))
            }
        }
    }

    fn folded_lanczos(
        &self,
        f: &Folded,
        opts: KrylovOptions,
    ) -> Result<(KrylovBasis<DVector<f64>>, RecurrenceCoefficients)> {
        let dim = self.weights.len();
        let (len_e, len_o) = (f.len(true), f.len(false));
        let mut x0 = vec![0.0; len_e];
        f.fold(&self.weights, true, &mut x0);
        let n0 = norm(&x0);
        if !(n0 > 1e-300) {
            bail!(DegenerateInput, "zero seed vector");
        }
        x0.iter_mut().for_each(|x| *x /= n0);

        // Column-major stores, one per parity.
        let mut even = x0;
        let mut odd: Vec<f64> = Vec::new();
        let (mut n_even, mut n_odd) = (1usize, 0usize);
        let mut b: Vec<f64> = Vec::new();
        let mut h = Vec::new();
        let mut w = vec![0.0; len_e.max(len_o)];

        let (final_residual, termination) = loop {
            let n = n_even + n_odd - 1;
            let from_even = n % 2 == 0;
            let (src, src_len) = if from_even { (&even, len_e) } else { (&odd, len_o) };
            let idx = n / 2;
            let current = &src[idx * src_len..(idx + 1) * src_len];
            let out_len = if from_even { len_o } else { len_e };
            let w = &mut w[..out_len];
            f.apply(current, from_even, w);

            let (store, count) = if from_even { (&odd, n_odd) } else { (&even, n_even) };
            if n > 0 {
                let prev = &store[(count - 1) * out_len..count * out_len];
                let bn = b[n - 1];
                w.iter_mut().zip(prev).for_each(|(wi, pi)| *wi -= bn * pi);
            }
            // The other parity is orthogonal by construction.
            h.resize(count.max(1), 0.0);
            project_out_columns(store, out_len, count, w, &mut h);
            project_out_columns(store, out_len, count, w, &mut h);
            let beta = norm(w);

            if n + 1 >= dim {
                break (beta, Termination::SpaceExhausted);
            }
            if beta < opts.tol {
                break (beta, Termination::Breakdown);
            }
            if opts.max_iter.is_some_and(|m| n >= m) {
                break (beta, Termination::MaxIter);
            }
            b.push(beta);
            let target = if from_even { &mut odd } else { &mut even };
            target.extend(w.iter().map(|x| x / beta));
            if from_even {
                n_odd += 1;
            } else {
                n_even += 1;
            }
        };

        let total = n_even + n_odd;
        let vectors = (0..total)
            .map(|n| {
                let (store, len) = if n % 2 == 0 { (&even, len_e) } else { (&odd, len_o) };
                let k = n / 2;
                f.unfold(&store[k * len..(k + 1) * len], n % 2 == 0)
            })
            .collect();
        let basis = KrylovBasis::new(vectors, SpaceKind::Operator, GeneratorKind::Hamiltonian);
        let coeffs =
            RecurrenceCoefficients { a: vec![0.0; total], b, hessenberg: None, final_residual, termination };
        Ok((basis, coeffs))
    }

    /// Operator represented by a frame vector.
    pub fn to_operator(&self, v: &DVector<f64>) -> CMatrix {
        let d = self.eig.dim();
        let root = (d as f64).sqrt();
        let x = CMatrix::from_fn(d, d, |i, j| self.phases[i * d + j] * (v[i * d + j] * root));
        let vecs = self.eig.vectors();
        vecs * x * vecs.adjoint()
    }
}

/// Column-major copy of `basis` restricted to indices `n ≡ parity (mod 2)`
/// (all of them when `parity` is `None`), folded when `f` is given.
fn pack(basis: &[DVector<f64>], f: Option<&Folded>, parity: Option<usize>) -> (Vec<f64>, usize, usize) {
    let picked: Vec<&DVector<f64>> =
        basis.iter().enumerate().filter(|(n, _)| parity.is_none_or(|p| n % 2 == p)).map(|(_, v)| v).collect();
    let len = match (f, parity) {
        (Some(f), Some(p)) => f.len(p == 0),
        _ => basis[0].len(),
    };
    let mut out = vec![0.0; len * picked.len()];
    for (k, v) in picked.iter().enumerate() {
        let dst = &mut out[k * len..(k + 1) * len];
        match (f, parity) {
            (Some(f), Some(p)) => f.fold(v, p == 0, dst),
            _ => dst.copy_from_slice(v.as_slice()),
        }
    }
    (out, len, picked.len())
}

/// Complexity of `O(t) = e^{iHt} O e^{-iHt}` on an arbitrary time grid,
/// using the exact eigenframe evolution and the stored Krylov basis.
pub fn complexity_series_hamiltonian(
    frame: &LiouvillianFrame,
    basis: &KrylovBasis<DVector<f64>>,
    times: &[f64],
    keep_amplitudes: bool,
) -> Result<ComplexitySeries> {
    check_seed_matches(frame.seed(), basis)?;
    if times.iter().any(|t| !t.is_finite()) {
        bail!(InvalidArgument, "time grid must be finite");
    }
    let nk = basis.len();
    let mut values = Vec::with_capacity(times.len());
    let mut amplitudes = keep_amplitudes.then(|| Vec::with_capacity(times.len()));
    let mut probs = vec![0.0; nk];

    // Krylov indices `first, first + stride, …` share one packed store.
    struct Group {
        store: Vec<f64>,
        len: usize,
        count: usize,
        first: usize,
        stride: usize,
        seed: Vec<f64>,
        omega: Vec<f64>,
        cos: bool,
        sin: bool,
    }
    let groups: Vec<Group> = match &frame.folded {
        Some(f) => {
            let w0 = &basis.vectors()[0];
            let mut seed_e = vec![0.0; f.len(true)];
            f.fold(w0, true, &mut seed_e);
            let mut omega_e = vec![0.0; f.d];
            omega_e.extend_from_slice(&f.omega);
            let (se, le, ce) = pack(basis.vectors(), Some(f), Some(0));
            let (so, lo, co) = pack(basis.vectors(), Some(f), Some(1));
            vec![
                Group {
                    store: se,
                    len: le,
                    count: ce,
                    first: 0,
                    stride: 2,
                    seed: seed_e.clone(),
                    omega: omega_e,
                    cos: true,
                    sin: false,
                },
                Group {
                    store: so,
                    len: lo,
                    count: co,
                    first: 1,
                    stride: 2,
                    seed: seed_e[f.d..].to_vec(),
                    omega: f.omega.clone(),
                    cos: false,
                    sin: true,
                },
            ]
        }
        None => {
            let (s, l, c) = pack(basis.vectors(), None, None);
            vec![Group {
                store: s,
                len: l,
                count: c,
                first: 0,
                stride: 1,
                seed: basis.vectors()[0].as_slice().to_vec(),
                omega: frame.frequencies.as_slice().to_vec(),
                cos: true,
                sin: true,
            }]
        }
    };

    let mut rhs = Vec::new();
    let mut out = Vec::new();
    for chunk in times.chunks(TIME_BLOCK) {
        let m = chunk.len();
        let mut block_probs = vec![0.0; nk * m];
        for g in &groups {
            if g.count == 0 {
                continue;
            }
            for (use_it, trig) in [(g.cos, 0), (g.sin, 1)] {
                if !use_it {
                    continue;
                }
                rhs.clear();
                rhs.resize(g.len * m, 0.0);
                for (c, &t) in chunk.iter().enumerate() {
                    let col = &mut rhs[c * g.len..(c + 1) * g.len];
                    for k in 0..g.len {
                        let (s, co) = (g.omega[k] * t).sin_cos();
                        col[k] = g.seed[k] * if trig == 0 { co } else { s };
                    }
                }
                out.clear();
                out.resize(g.count * m, 0.0);
                gemm_tn(g.count, g.len, m, 1.0, &g.store, &rhs, 0.0, &mut out);
                for c in 0..m {
                    for k in 0..g.count {
                        let a = out[c * g.count + k];
                        block_probs[c * nk + g.first + k * g.stride] += a * a;
                    }
                }
            }
        }
        for c in 0..m {
            probs.copy_from_slice(&block_probs[c * nk..(c + 1) * nk]);
            values.push(weighted_position(&probs));
            if let Some(a) = amplitudes.as_mut() {
                a.push(probs.clone());
            }
        }
    }
    Ok(ComplexitySeries { times: times.to_vec(), values, amplitudes })
}
