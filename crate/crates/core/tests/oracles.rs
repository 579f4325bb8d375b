//! Checks against independent constructions and closed forms.

mod common;

use common::{expm_taylor, max_diff, random_vector};
use krylov_core::diagnostics::{ipr_operator, ipr_state, mean_gap_ratio, LevelKind};
use krylov_core::krylov::{
    complexity_series_floquet, complexity_series_hamiltonian, floquet_arnoldi, lanczos, late_time_complexity,
    variance_identity_check, KrylovOptions, KrylovVector, LiouvillianFrame, Termination,
};
use krylov_core::models::{
    kicked_top_unitary, rng, rotated_eigenvector_seed, sample_cue, spin_coherent_state, tfim_hamiltonian,
    KickedTopSpec, RmteRealization, TfimSpec,
};
use krylov_core::quantum::{
    eigensystem, pauli, CMatrix, CVector, DenseOperator, Eigensystem, SpectrumKind, StateVector, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const I: C64 = C64::new(0.0, 1.0);

fn rmte(seed: u64, eps: f64) -> (DenseOperator, Eigensystem) {
    let u = RmteRealization::sample(5, seed).unwrap().unitary(eps).unwrap();
    let eig = eigensystem(&u, SpectrumKind::Unitary).unwrap();
    (u, eig)
}

fn uniform_superposition(eig: &Eigensystem) -> CVector {
    let d = eig.dim();
    let norm = C64::new((d as f64).sqrt(), 0.0);
    CVector::from_fn(d, |r, _| (0..d).map(|j| eig.vectors()[(r, j)]).sum::<C64>() / norm)
}

#[test]
fn kicked_top_matches_taylor_exponentials() {
    for (j, kappa) in [(2.5, 3.0), (7.0, 6.0), (15.0, 6.0)] {
        let spec = KickedTopSpec::new(j, kappa).unwrap();
        let spin = spec.spin();
        let jz2 = spin.jz().matrix() * spin.jz().matrix();
        let torsion = expm_taylor(&(jz2 * (-I * (kappa / (2.0 * j)))));
        let turn = expm_taylor(&(spin.jy().matrix() * (-I * std::f64::consts::FRAC_PI_2)));
        let want = torsion * turn;
        let got = kicked_top_unitary(&spec).unwrap();
        assert!(max_diff(got.matrix(), &want) < 1e-10, "j={j}");
    }
}

#[test]
fn two_level_operator_complexity_is_sin_squared() {
    let [x, _, z] = pauli();
    let h = DenseOperator::hermitian(z).unwrap();
    let frame = LiouvillianFrame::new(&h, &DenseOperator::hermitian(x).unwrap()).unwrap();
    let (basis, coeffs) = frame.krylov(KrylovOptions::default()).unwrap();
    assert_eq!(basis.len(), 2);
    assert!((coeffs.b[0] - 2.0).abs() < 1e-14);
    let times: Vec<f64> = (0..100).map(|k| k as f64 * 0.0731).collect();
    let series = complexity_series_hamiltonian(&frame, &basis, &times, true).unwrap();
    for (t, k) in times.iter().zip(&series.values) {
        assert!((k - (2.0 * t).sin().powi(2)).abs() < 1e-10, "t={t}");
    }
}

#[test]
fn sigma_x_lanczos_by_hand() {
    let [x, _, _] = pauli();
    let seed = StateVector::basis(2, 0).unwrap();
    let (basis, c) = lanczos(|v: &CVector| &x * v, seed.amplitudes(), KrylovOptions::default()).unwrap();
    assert_eq!(basis.len(), 2);
    assert_eq!(c.termination, Termination::SpaceExhausted);
    assert_eq!(c.a.len(), 2);
    assert!(c.a[0].abs() < 1e-15 && c.a[1].abs() < 1e-15);
    assert_eq!(c.b.len(), 1);
    assert!((c.b[0] - 1.0).abs() < 1e-15);
    let (dh2, b1sq) = variance_identity_check(&DenseOperator::hermitian(x).unwrap(), &seed).unwrap();
    assert!((dh2 - 1.0).abs() < 1e-15 && (b1sq - 1.0).abs() < 1e-15);
}

#[test]
fn eigenstate_variance_identity_is_trivial() {
    let [_, _, z] = pauli();
    let h = DenseOperator::hermitian(z).unwrap();
    let (dh2, b1sq) = variance_identity_check(&h, &StateVector::basis(2, 1).unwrap()).unwrap();
    assert!(dh2.abs() < 1e-15 && b1sq.abs() < 1e-15);
}

#[test]
fn variance_identity_on_random_twenty_dim_problem() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let h = common::random_hermitian(&mut rng, 20);
    let psi = StateVector::new(random_vector(&mut rng, 20)).unwrap();
    // direct moments
    let hv = &h * psi.amplitudes();
    let mean = psi.amplitudes().dotc(&hv).re;
    let second = hv.norm_squared();
    let (dh2, b1sq) = variance_identity_check(&DenseOperator::hermitian(h).unwrap(), &psi).unwrap();
    assert!((dh2 - (second - mean * mean)).abs() < 1e-12);
    assert!((dh2 - b1sq).abs() < 1e-10 * dh2.max(1.0));
}

#[test]
fn floquet_step_matches_matrix_power() {
    let (u, eig) = rmte(11, 1.0);
    let psi = rotated_eigenvector_seed(&u, 3, 0.4, 1.1).unwrap();
    let (basis, _) = floquet_arnoldi(&u, psi.amplitudes(), KrylovOptions::default()).unwrap();
    let series = complexity_series_floquet(&u, psi.amplitudes(), &basis, 64, false).unwrap();
    // U^j from the spectral decomposition, independent of step-by-step application.
    for j in [0usize, 1, 7, 33, 64] {
        let mut diag = eig.vectors().clone();
        for k in 0..eig.dim() {
            let phase = C64::from_polar(1.0, eig.values()[k] * j as f64);
            for z in diag.column_mut(k).iter_mut() {
                *z *= phase;
            }
        }
        let uj = diag * eig.vectors().adjoint();
        let v = uj * psi.amplitudes();
        let k: f64 =
            basis.vectors().iter().enumerate().map(|(n, kn)| n as f64 * kn.dotc(&v).norm_sqr()).sum();
        assert!((k - series.values[j]).abs() < 1e-8, "j={j}");
    }
}

#[test]
fn operator_floquet_step_is_heisenberg() {
    let (u, _) = rmte(5, 0.6);
    let [x, _, _] = pauli();
    let seed =
        CMatrix::from_fn(
            25,
            25,
            |r, c| if r / 5 == c / 5 { x[(r % 5 % 2, c % 5 % 2)] } else { C64::new(0.0, 0.0) },
        );
    let (basis, _) =
        floquet_arnoldi(&u, &seed, KrylovOptions { max_iter: Some(40), ..Default::default() }).unwrap();
    let series = complexity_series_floquet(&u, &seed, &basis, 3, false).unwrap();
    let mut o = seed.clone();
    for j in 1..=3 {
        o = u.matrix().adjoint() * &o * u.matrix();
        let norm = KrylovVector::norm(&seed);
        let k: f64 = basis
            .vectors()
            .iter()
            .enumerate()
            .map(|(n, kn)| n as f64 * (kn.inner(&o) / norm).norm_sqr())
            .sum();
        assert!((k - series.values[j]).abs() < 1e-10, "j={j}");
    }
}

#[test]
fn uniform_seed_krylov_dimension_is_gram_rank() {
    let (u, eig) = rmte(3, 1.0);
    let psi = uniform_superposition(&eig);
    let (basis, _) = floquet_arnoldi(&u, &psi, KrylovOptions::default()).unwrap();
    // Rank of the orbit {ψ, Uψ, …, U^29 ψ} from the Gram matrix spectrum.
    let mut orbit = Vec::new();
    let mut v = psi.clone();
    for _ in 0..30 {
        orbit.push(v.clone());
        v = u.matrix() * v;
    }
    let gram = CMatrix::from_fn(30, 30, |a, b| orbit[a].dotc(&orbit[b]));
    let evals = nalgebra::SymmetricEigen::new(gram).eigenvalues;
    let top = evals.iter().cloned().fold(0.0, f64::max);
    let rank = evals.iter().filter(|&&e| e > 1e-10 * top).count();
    assert_eq!(rank, 25);
    assert_eq!(basis.len(), 25);
}

#[test]
fn late_time_formula_matches_long_run_average() {
    let (u, eig) = rmte(7, 1.0);
    let mut rng = rng::substream(7, 0, rng::tag::STATE);
    let psi = random_vector(&mut rng, 25);
    let (basis, _) = floquet_arnoldi(&u, &psi, KrylovOptions::default()).unwrap();
    let late = late_time_complexity(&eig, &psi, &basis).unwrap();
    let series = complexity_series_floquet(&u, &psi, &basis, 1000, false).unwrap();
    let avg = series.mean_over(200..1001);
    assert!((late - avg).abs() < 0.05 * avg, "{late} vs {avg}");
}

#[test]
fn uniform_seed_late_time_value_is_half_the_dimension() {
    // With p_j = 1/D and a D-dimensional Krylov space,
    // Σ_j C_j / D = Σ_i i Σ_j |⟨K_i|v_j⟩|² / D = (D - 1) / 2.
    for eps in [0.1, 0.5, 1.0] {
        let (u, eig) = rmte(2, eps);
        let psi = uniform_superposition(&eig);
        let (basis, _) = floquet_arnoldi(&u, &psi, KrylovOptions::default()).unwrap();
        let late = late_time_complexity(&eig, &psi, &basis).unwrap();
        assert!((late - 12.0).abs() < 1e-9, "eps={eps}: {late}");
    }
}

#[test]
fn uniform_seed_beats_random_seeds() {
    let (u, eig) = rmte(7, 1.0);
    let psi = uniform_superposition(&eig);
    let (basis, _) = floquet_arnoldi(&u, &psi, KrylovOptions::default()).unwrap();
    let best = late_time_complexity(&eig, &psi, &basis).unwrap();
    let mut rng = rng::substream(7, 1, rng::tag::STATE);
    for _ in 0..200 {
        let v = random_vector(&mut rng, 25);
        let (b, _) = floquet_arnoldi(&u, &v, KrylovOptions::default()).unwrap();
        let k0 = b.vectors()[0].clone();
        assert!(late_time_complexity(&eig, &k0, &b).unwrap() <= best + 1e-9);
    }
}

#[test]
fn eigenstate_seed_does_not_spread() {
    let (u, eig) = rmte(9, 1.0);
    let v = eig.vector(4);
    let (basis, c) = floquet_arnoldi(&u, &v, KrylovOptions::default()).unwrap();
    assert_eq!(basis.len(), 1);
    assert_eq!(c.termination, Termination::Breakdown);
    let series = complexity_series_floquet(&u, &v, &basis, 50, false).unwrap();
    assert!(series.values.iter().all(|k| k.abs() < 1e-14));
    assert!(late_time_complexity(&eig, &v, &basis).unwrap().abs() < 1e-14);
    let psi = StateVector::new(v).unwrap();
    assert!((ipr_state(&psi, &eig).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn rotating_an_eigenvector_lowers_its_ipr() {
    let (u, eig) = rmte(7, 1.0);
    let iprs: Vec<f64> = [0.0, 0.05, 0.1, 0.2]
        .iter()
        .map(|&t| ipr_state(&rotated_eigenvector_seed(&u, 0, t, 0.3).unwrap(), &eig).unwrap())
        .collect();
    assert!((iprs[0] - 1.0).abs() < 1e-12);
    assert!(iprs.windows(2).all(|w| w[1] < w[0]), "{iprs:?}");
}

#[test]
fn ipr_of_uniform_and_random_states() {
    let (_, eig) = rmte(4, 0.8);
    let uni = StateVector::new(uniform_superposition(&eig)).unwrap();
    assert!((ipr_state(&uni, &eig).unwrap() - 0.04).abs() < 1e-12);

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let h = common::random_hermitian(&mut rng, 10);
    let eig = eigensystem(&DenseOperator::hermitian(h).unwrap(), SpectrumKind::Hermitian).unwrap();
    let psi = StateVector::new(random_vector(&mut rng, 10)).unwrap();
    let mut brute = 0.0;
    for j in 0..10 {
        let mut overlap = C64::new(0.0, 0.0);
        for r in 0..10 {
            overlap += eig.vectors()[(r, j)].conj() * psi.amplitudes()[r];
        }
        brute += overlap.norm_sqr().powi(2);
    }
    assert!((ipr_state(&psi, &eig).unwrap() - brute).abs() < 1e-12);
}

#[test]
fn identity_operator_ipr_is_inverse_dimension() {
    for d in [2, 7, 25] {
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        let h = common::random_hermitian(&mut rng, d);
        let eig = eigensystem(&DenseOperator::hermitian(h).unwrap(), SpectrumKind::Hermitian).unwrap();
        let ipr = ipr_operator(&DenseOperator::identity(d), &eig).unwrap();
        assert!((ipr - 1.0 / d as f64).abs() < 1e-12);
    }
}

#[test]
fn kicked_top_spin_components() {
    let spec = KickedTopSpec::new(15.0, 6.0).unwrap();
    let u = kicked_top_unitary(&spec).unwrap();
    let eig = eigensystem(&u, SpectrumKind::Unitary).unwrap();
    let s = spec.spin();
    assert!(ipr_operator(s.jx(), &eig).unwrap() < 1e-10);
    assert!(ipr_operator(s.jz(), &eig).unwrap() < 1e-10);
    assert!(ipr_operator(s.jy(), &eig).unwrap() > 1e-4);

    let (_, cx) = floquet_arnoldi(&u, s.jx().matrix(), KrylovOptions::default()).unwrap();
    let (_, cz) = floquet_arnoldi(&u, s.jz().matrix(), KrylovOptions::default()).unwrap();
    assert_eq!(cx.b.len(), cz.b.len());
    // Deep into the run roundoff decorrelates the two iterations.
    for (a, b) in cx.b.iter().zip(&cz.b).take(300) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn coherent_state_ipr_orders_saturation() {
    let spec = KickedTopSpec::new(15.0, 6.0).unwrap();
    let u = kicked_top_unitary(&spec).unwrap();
    let eig = eigensystem(&u, SpectrumKind::Unitary).unwrap();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut rows = Vec::new();
    for (theta, phi) in [(half_pi, half_pi), (1.0, 1.0), (0.5, 2.5)] {
        let psi = spin_coherent_state(&spec.spin(), theta, phi).unwrap();
        let (basis, _) = floquet_arnoldi(&u, psi.amplitudes(), KrylovOptions::default()).unwrap();
        let series = complexity_series_floquet(&u, psi.amplitudes(), &basis, 500, false).unwrap();
        rows.push((ipr_state(&psi, &eig).unwrap(), series.saturation_mean()));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1), "{rows:?}");
}

#[test]
fn poisson_levels_give_the_poisson_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut e = 0.0;
    let levels: Vec<f64> = (0..100_000)
        .map(|_| {
            e += -(1.0 - rng.random::<f64>()).ln();
            e
        })
        .collect();
    let stats = mean_gap_ratio(&levels, LevelKind::Energies).unwrap();
    // 2 ln 2 - 1 for independent exponential spacings
    assert!((stats.mean - 0.386).abs() < 0.005, "{}", stats.mean);
}

#[test]
fn cue_gap_ratio() {
    let mut rng = rng::substream(3, 0, rng::tag::CUE);
    let mut total = 0.0;
    for _ in 0..200 {
        let u = sample_cue(25, &mut rng);
        let eig = eigensystem(&u, SpectrumKind::Unitary).unwrap();
        total += mean_gap_ratio(eig.values(), LevelKind::Eigenphases).unwrap().mean;
    }
    let mean = total / 200.0;
    assert!((mean - 0.599).abs() < 0.01, "{mean}");
}

#[test]
fn uncoupled_rmte_is_a_kronecker_product() {
    let real = RmteRealization::sample(5, 13).unwrap();
    let (u1, u2) = real.factors();
    let u0 = real.unitary(0.0).unwrap();
    let u1m = real.unitary(1.0).unwrap();
    for r in 0..25 {
        let phase = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * real.xi()[r]);
        for c in 0..25 {
            let kron = u1.matrix()[(r / 5, c / 5)] * u2.matrix()[(r % 5, c % 5)];
            assert!((u0.matrix()[(r, c)] - kron).norm() < 1e-15);
            assert!((u1m.matrix()[(r, c)] - phase * kron).norm() < 1e-14);
        }
    }
}

#[test]
fn tfim_from_bit_strings() {
    let spec = TfimSpec { l: 6, j: 1.0, hx: 1.05, hz: 0.7 };
    let h = tfim_hamiltonian(&spec).unwrap();
    let l = spec.l;
    let spin = |s: usize, k: usize| 1.0 - 2.0 * ((s >> (l - 1 - k)) & 1) as f64;
    let mut want = CMatrix::zeros(1 << l, 1 << l);
    for s in 0..1usize << l {
        let mut diag = 0.0;
        for k in 0..l {
            diag += spec.hz * spin(s, k);
            if k + 1 < l {
                diag -= spec.j * spin(s, k) * spin(s, k + 1);
            }
            want[(s ^ (1 << (l - 1 - k)), s)] += C64::new(spec.hx, 0.0);
        }
        want[(s, s)] += C64::new(diag, 0.0);
    }
    assert!(max_diff(h.matrix(), &want) < 1e-14);
    assert!(max_diff(h.matrix(), &h.matrix().adjoint()) < 1e-14);
}
