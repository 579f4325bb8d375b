use super::{check_dim, check_ensemble, check_epsilon, check_steps, floquet_run, short, Job};
use crate::config::{require, Params};
use crate::ensemble::{ensemble_map, mean_stderr};
use crate::error::Result;
use crate::output::{Curve, Output, Plot, SubSeed};
use krylov_core::diagnostics::{
    ipr_operator, ipr_state, mean_gap_ratio, spearman_rank_correlation, LevelKind,
};
use krylov_core::krylov::{
    complexity_series_floquet, floquet_arnoldi, late_time_complexity, variance_identity_check, KrylovOptions,
};
use krylov_core::models::{rng, rotate_state, rotated_operator_seed, sample_cue, RmteRealization};
use krylov_core::quantum::{eigensystem, DenseOperator, Eigensystem, SpectrumKind, StateVector};
use krylov_core::{CMatrix, CVector, C64};
use rand::Rng;
use serde_json::json;

fn realization(d: usize, seed: u64, eps: f64) -> Result<(DenseOperator, Eigensystem)> {
    let u = RmteRealization::sample(d, seed)?.unitary(eps)?;
    let eig = eigensystem(&u, SpectrumKind::Unitary)?;
    Ok((u, eig))
}

fn master_seed(seed: u64) -> Vec<SubSeed> {
    vec![SubSeed { label: "rmte".into(), index: 0, seed }]
}

/// `Σ_j |v_j⟩ / √D`.
pub(crate) fn uniform_superposition(eig: &Eigensystem) -> CVector {
    let d = eig.dim();
    let w = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    CVector::from_fn(d, |r, _| eig.vectors().row(r).iter().sum::<C64>() * w)
}

pub(crate) fn fig1a(p: &Params) -> Result<Job> {
    let d = p.usize("d", 5)?;
    let eps = p.f64("epsilon", 1.0)?;
    let which = p.usize("eigenvector", 0)?;
    let thetas = p.f64_list("thetas", &[0.0, 0.05, 0.1, 0.2])?;
    let phi = p.f64("phi", 0.3)?;
    let n_steps = p.usize("n_steps", 300)?;
    check_dim(d)?;
    check_epsilon("epsilon", eps)?;
    require(which < d * d, "eigenvector", "index beyond the Hilbert space dimension")?;
    check_steps(n_steps)?;
    Ok(Box::new(move |seed| {
        let (u, eig) = realization(d, seed, eps)?;
        let v = StateVector::new(eig.vector(which))?;
        let mut out = Output { sub_seeds: master_seed(seed), ..Default::default() };
        let mut rows = Vec::new();
        let (mut iprs, mut sats) = (Vec::new(), Vec::new());
        for (k, &theta) in thetas.iter().enumerate() {
            let psi = rotate_state(&v, theta, phi)?;
            let ipr = ipr_state(&psi, &eig)?;
            let (series, dim) = floquet_run(&u, psi.amplitudes(), n_steps)?;
            let sat = series.saturation_mean();
            rows.push(
                json!({ "theta": theta, "phi": phi, "ipr": ipr, "saturation": sat, "krylov_dim": dim }),
            );
            iprs.push(ipr);
            sats.push(sat);
            out.curves.push(Curve::new(
                format!("fig1a_seed{k}"),
                format!("IPR {ipr:.3}"),
                series.times,
                series.values,
            ));
        }
        out.plots.push(Plot::new("fig1a", "state complexity, RMTE", "step", "K_C", &out.curves));
        out.summary.insert("seeds".into(), json!(rows));
        out.summary
            .insert("spearman_ipr_saturation".into(), json!(spearman_rank_correlation(&iprs, &sats).ok()));
        Ok(out)
    }))
}

pub(crate) fn fig1b(p: &Params) -> Result<Job> {
    let d = p.usize("d", 5)?;
    let epsilons = p.f64_list("epsilons", &[0.1, 0.3, 0.5, 1.0])?;
    let n_steps = p.usize("n_steps", 1000)?;
    check_dim(d)?;
    for &e in &epsilons {
        check_epsilon("epsilons", e)?;
    }
    check_steps(n_steps)?;
    Ok(Box::new(move |seed| {
        // One draw of U1, U2 and the couplings serves every ε.
        let real = RmteRealization::sample(d, seed)?;
        let mut out = Output { sub_seeds: master_seed(seed), ..Default::default() };
        let mut rows = Vec::new();
        let mut sats = Vec::new();
        for (k, &eps) in epsilons.iter().enumerate() {
            let u = real.unitary(eps)?;
            let eig = eigensystem(&u, SpectrumKind::Unitary)?;
            let psi = uniform_superposition(&eig);
            let ipr = ipr_state(&StateVector::new(psi.clone())?, &eig)?;
            let (basis, _) = floquet_arnoldi(&u, &psi, KrylovOptions::default())?;
            let late = late_time_complexity(&eig, &psi, &basis)?;
            let series = complexity_series_floquet(&u, &psi, &basis, n_steps, false)?;
            let sat = series.saturation_mean();
            sats.push(sat);
            rows.push(json!({ "epsilon": eps, "ipr": ipr, "saturation": sat, "late_time": late, "krylov_dim": basis.len() }));
            out.curves.push(Curve::new(
                format!("fig1b_eps{k}"),
                format!("eps = {}", short(eps)),
                series.times,
                series.values,
            ));
        }
        let mean = sats.iter().sum::<f64>() / sats.len() as f64;
        let spread = sats.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - sats.iter().cloned().fold(f64::INFINITY, f64::min);
        out.plots.push(Plot::new("fig1b", "uniform superposition seed", "step", "K_C", &out.curves).log_x());
        out.summary.insert("epsilons".into(), json!(rows));
        out.summary.insert("relative_spread".into(), json!(spread / mean));
        Ok(out)
    }))
}

pub(crate) fn fig2a(p: &Params) -> Result<Job> {
    let d = p.usize("d", 5)?;
    let eps = p.f64("epsilon", 1.0)?;
    let thetas = p.f64_list("thetas", &[0.02, 0.05, 0.1, 0.4])?;
    let phi = p.f64("phi", 0.3)?;
    let n_steps = p.usize("n_steps", 200)?;
    check_dim(d)?;
    require(d <= 8, "d", "operator runs are limited to d <= 8")?;
    check_epsilon("epsilon", eps)?;
    check_steps(n_steps)?;
    Ok(Box::new(move |seed| {
        let (u, eig) = realization(d, seed, eps)?;
        let mut out = Output { sub_seeds: master_seed(seed), ..Default::default() };
        let mut rows = Vec::new();
        let (mut iprs, mut sats) = (Vec::new(), Vec::new());
        for (k, &theta) in thetas.iter().enumerate() {
            let op = rotated_operator_seed(&u, theta, phi)?;
            let ipr = ipr_operator(&op, &eig)?;
            let (series, dim) = floquet_run(&u, op.matrix(), n_steps)?;
            let sat = series.saturation_mean();
            rows.push(
                json!({ "theta": theta, "phi": phi, "ipr": ipr, "saturation": sat, "krylov_dim": dim }),
            );
            iprs.push(ipr);
            sats.push(sat);
            out.curves.push(Curve::new(
                format!("fig2a_op{k}"),
                format!("IPR {ipr:.4}"),
                series.times,
                series.values,
            ));
        }
        out.plots.push(Plot::new("fig2a", "operator complexity, RMTE", "step", "K_C", &out.curves));
        out.summary.insert("operators".into(), json!(rows));
        out.summary
            .insert("spearman_ipr_saturation".into(), json!(spearman_rank_correlation(&iprs, &sats).ok()));
        Ok(out)
    }))
}

pub(crate) fn level_spacing(p: &Params) -> Result<Job> {
    let d = p.usize("d", 5)?;
    let epsilons = p.f64_list("epsilons", &[0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0])?;
    let size = p.usize("ensemble_size", 200)?;
    let cue_d = p.usize("cue_d", 25)?;
    let cue_n = p.usize("cue_realizations", 200)?;
    check_dim(d)?;
    for &e in &epsilons {
        check_epsilon("epsilons", e)?;
    }
    check_ensemble(size)?;
    require(cue_n == 0 || (3..=1296).contains(&cue_d), "cue_d", "CUE dimension must lie in 3..=1296")?;
    require(cue_n != 1, "cue_realizations", "use 0 to skip, or at least 2")?;
    Ok(Box::new(move |seed| {
        let per_member = ensemble_map(size, |k| {
            let real = RmteRealization::sample(d, rng::derive_seed(seed, k as u64, 0))?;
            epsilons
                .iter()
                .map(|&e| {
                    let eig = eigensystem(&real.unitary(e)?, SpectrumKind::Unitary)?;
                    Ok(mean_gap_ratio(eig.values(), LevelKind::Eigenphases)?.mean)
                })
                .collect::<Result<Vec<f64>>>()
        })?;
        let mut out = Output::default();
        let (mut means, mut errs, mut rows) = (Vec::new(), Vec::new(), Vec::new());
        for (i, &eps) in epsilons.iter().enumerate() {
            let col: Vec<f64> = per_member.iter().map(|m| m[i]).collect();
            let (m, s) = mean_stderr(&col);
            means.push(m);
            errs.push(s);
            rows.push(json!({ "epsilon": eps, "mean_r": m, "stderr": s }));
        }
        let curve = Curve::new("supp_level_spacing", "RMTE", epsilons.clone(), means).with_stderr(errs);
        out.plots.push(Plot::new(
            "supp_level_spacing",
            "mean gap ratio, RMTE",
            "epsilon",
            "<r>",
            std::slice::from_ref(&curve),
        ));
        out.curves.push(curve);
        out.summary.insert("rmte".into(), json!(rows));
        out.sub_seeds = (0..size as u64)
            .map(|k| SubSeed { label: "rmte".into(), index: k, seed: rng::derive_seed(seed, k, 0) })
            .collect();
        if cue_n > 0 {
            let rs = ensemble_map(cue_n, |k| {
                let u = sample_cue(cue_d, &mut rng::substream(seed, k as u64, rng::tag::CUE));
                let eig = eigensystem(&u, SpectrumKind::Unitary)?;
                Ok(mean_gap_ratio(eig.values(), LevelKind::Eigenphases)?.mean)
            })?;
            let (m, s) = mean_stderr(&rs);
            out.summary
                .insert("cue".into(), json!({ "d": cue_d, "realizations": cue_n, "mean_r": m, "stderr": s }));
            out.sub_seeds.extend((0..cue_n as u64).map(|k| SubSeed {
                label: "cue".into(),
                index: k,
                seed: rng::derive_seed(seed, k, rng::tag::CUE),
            }));
        }
        Ok(out)
    }))
}

fn random_hermitian(rng: &mut impl Rng, d: usize) -> CMatrix {
    let a = CMatrix::from_fn(d, d, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    (&a + a.adjoint()).unscale(2.0)
}

fn random_state(rng: &mut impl Rng, d: usize) -> CVector {
    CVector::from_fn(d, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

pub(crate) fn identity_checks(p: &Params) -> Result<Job> {
    let pairs = p.usize("n_pairs", 100)?;
    let dim = p.usize("dim", 20)?;
    let d = p.usize("d", 5)?;
    let eps = p.f64("epsilon", 1.0)?;
    let n_states = p.usize("n_states", 3)?;
    let n_steps = p.usize("n_steps", 1000)?;
    require((2..=1296).contains(&dim), "dim", "dimension must lie in 2..=1296")?;
    check_dim(d)?;
    check_epsilon("epsilon", eps)?;
    require(n_states >= 1, "n_states", "need at least one state")?;
    require(n_steps >= 5, "n_steps", "need at least 5 steps")?;
    Ok(Box::new(move |seed| {
        let residuals = ensemble_map(pairs, |i| {
            let mut r = rng::substream(seed, i as u64, rng::tag::STATE);
            let h = DenseOperator::hermitian(random_hermitian(&mut r, dim))?;
            let psi = StateVector::new(random_state(&mut r, dim))?;
            let (dh2, b1sq) = variance_identity_check(&h, &psi)?;
            Ok(((dh2 - b1sq).abs(), (dh2 - b1sq).abs() / dh2.abs().max(f64::MIN_POSITIVE)))
        })?;
        let max_abs = residuals.iter().map(|r| r.0).fold(0.0, f64::max);
        let max_rel = residuals.iter().map(|r| r.1).fold(0.0, f64::max);

        let (u, eig) = realization(d, seed, eps)?;
        let start = n_steps / 5;
        let mut out = Output { sub_seeds: master_seed(seed), ..Default::default() };
        let mut rows = Vec::new();
        for k in 0..n_states {
            let tag = pairs as u64 + k as u64;
            let psi = random_state(&mut rng::substream(seed, tag, rng::tag::STATE), d * d);
            let (basis, _) = floquet_arnoldi(&u, &psi, KrylovOptions::default())?;
            let late = late_time_complexity(&eig, &psi, &basis)?;
            let series = complexity_series_floquet(&u, &psi, &basis, n_steps, false)?;
            let avg = series.mean_over(start..n_steps + 1);
            rows.push(json!({ "state": k, "late_time": late, "time_average": avg, "relative_difference": (late - avg).abs() / avg }));
            out.curves.push(Curve::new(
                format!("identity_checks_state{k}"),
                format!("random state {k}"),
                series.times,
                series.values,
            ));
        }
        let psi = uniform_superposition(&eig);
        let (basis, _) = floquet_arnoldi(&u, &psi, KrylovOptions::default())?;
        let uniform = late_time_complexity(&eig, &psi, &basis)?;
        out.sub_seeds.extend((0..(pairs + n_states) as u64).map(|i| SubSeed {
            label: "state".into(),
            index: i,
            seed: rng::derive_seed(seed, i, rng::tag::STATE),
        }));
        out.plots.push(Plot::new("identity_checks", "random states, RMTE", "step", "K_C", &out.curves));
        out.summary.insert(
            "variance_identity".into(),
            json!({ "pairs": pairs, "dim": dim, "max_abs_residual": max_abs, "max_rel_residual": max_rel }),
        );
        out.summary.insert("late_time".into(), json!({ "window_start": start, "states": rows }));
        out.summary.insert(
            "uniform_seed".into(),
            json!({ "late_time": uniform, "half_dimension_minus_half": (d * d - 1) as f64 / 2.0 }),
        );
        Ok(out)
    }))
}
