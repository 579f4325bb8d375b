use super::{angle_seeds, check_ensemble, check_steps, floquet_run, short, steps, tail_mean, AngleLaw, Job};
use crate::config::{require, Params};
use crate::ensemble::{ensemble_average, ensemble_map, mean_stderr};
use crate::error::Result;
use crate::output::{Curve, Output, Plot};
use krylov_core::diagnostics::{ipr_operator, ipr_state, linear_entropy_series, otoc_series};
use krylov_core::krylov::{arnoldi_subdiag_variance, floquet_arnoldi, KrylovOptions};
use krylov_core::models::{kicked_top_unitary, spin_coherent_state, KickedTopSpec};
use krylov_core::quantum::{eigensystem, DenseOperator, SpectrumKind, SpinSystem};
use serde_json::json;
use std::f64::consts::FRAC_PI_2;

const FIG1C_ANGLES: [(f64, f64); 3] = [(FRAC_PI_2, FRAC_PI_2), (1.0, 1.0), (0.5, 2.5)];

fn read_j(p: &Params, default: f64, max_two_j: u32) -> Result<u32> {
    let j = p.f64("j", default)?;
    let two_j = 2.0 * j;
    require(j > 0.0 && two_j.fract() == 0.0, "j", "spin must be a positive multiple of 1/2")?;
    require(
        two_j <= f64::from(max_two_j),
        "j",
        &format!("spin above {} is out of scope here", f64::from(max_two_j) / 2.0),
    )?;
    Ok(two_j as u32)
}

fn read_spec(p: &Params, j: f64, kappa: f64, max_two_j: u32) -> Result<KickedTopSpec> {
    let two_j = read_j(p, j, max_two_j)?;
    let kappa = p.f64("kappa", kappa)?;
    let alpha = p.f64("alpha", FRAC_PI_2)?;
    Ok(KickedTopSpec { two_j, kappa, alpha })
}

fn spin_component<'a>(spin: &'a SpinSystem, name: &str) -> &'a DenseOperator {
    match name {
        "jx" => spin.jx(),
        "jy" => spin.jy(),
        _ => spin.jz(),
    }
}

pub(crate) fn fig1c(p: &Params) -> Result<Job> {
    let spec = read_spec(p, 15.0, 6.0, 200)?;
    let angles = p.angle_list("angles", &FIG1C_ANGLES)?;
    let n_steps = p.usize("n_steps", 500)?;
    check_steps(n_steps)?;
    Ok(Box::new(move |_seed| {
        let u = kicked_top_unitary(&spec)?;
        let eig = eigensystem(&u, SpectrumKind::Unitary)?;
        let spin = spec.spin();
        let mut out = Output::default();
        let mut rows = Vec::new();
        for (k, &(theta, phi)) in angles.iter().enumerate() {
            let psi = spin_coherent_state(&spin, theta, phi)?;
            let ipr = ipr_state(&psi, &eig)?;
            let (series, dim) = floquet_run(&u, psi.amplitudes(), n_steps)?;
            rows.push(json!({ "theta": theta, "phi": phi, "ipr": ipr, "saturation": series.saturation_mean(), "krylov_dim": dim }));
            let label = format!("({}, {}) {ipr:.3}", short(theta), short(phi));
            out.curves.push(Curve::new(format!("fig1c_state{k}"), label, series.times, series.values));
        }
        out.plots.push(Plot::new("fig1c", "coherent states, kicked top", "step", "K_C", &out.curves));
        out.summary.insert("states".into(), json!(rows));
        Ok(out)
    }))
}

pub(crate) fn fig1d(p: &Params) -> Result<Job> {
    let spec = read_spec(p, 15.0, 6.0, 200)?;
    let angles = p.angle_list("angles", &FIG1C_ANGLES)?;
    let n_steps = p.usize("n_steps", 500)?;
    check_steps(n_steps)?;
    require(spec.two_j >= 2, "j", "need at least two constituent spins")?;
    Ok(Box::new(move |_seed| {
        let u = kicked_top_unitary(&spec)?;
        let spin = spec.spin();
        let mut out = Output::default();
        let mut rows = Vec::new();
        for (k, &(theta, phi)) in angles.iter().enumerate() {
            let psi = spin_coherent_state(&spin, theta, phi)?;
            let s2 = linear_entropy_series(&u, &psi, &spin, n_steps)?;
            rows.push(json!({ "theta": theta, "phi": phi, "saturation": tail_mean(&s2) }));
            let label = format!("({}, {})", short(theta), short(phi));
            out.curves.push(Curve::new(format!("fig1d_state{k}"), label, steps(n_steps), s2));
        }
        out.plots.push(Plot::new("fig1d", "single-spin linear entropy", "step", "S_2", &out.curves));
        out.summary.insert("states".into(), json!(rows));
        Ok(out)
    }))
}

const COMPONENTS: [&str; 3] = ["jx", "jy", "jz"];

pub(crate) fn fig2b(p: &Params) -> Result<Job> {
    let spec = read_spec(p, 15.0, 6.0, 40)?;
    let ops = p.name_list("operators", &COMPONENTS, &COMPONENTS)?;
    let n_steps = p.usize("n_steps", 300)?;
    check_steps(n_steps)?;
    Ok(Box::new(move |_seed| {
        let u = kicked_top_unitary(&spec)?;
        let eig = eigensystem(&u, SpectrumKind::Unitary)?;
        let spin = spec.spin();
        let mut out = Output::default();
        let mut rows = Vec::new();
        for name in &ops {
            let op = spin_component(&spin, name);
            let ipr = ipr_operator(op, &eig)?;
            let (series, dim) = floquet_run(&u, op.matrix(), n_steps)?;
            rows.push(json!({ "operator": name, "ipr": ipr, "saturation": series.saturation_mean(), "krylov_dim": dim }));
            out.curves.push(Curve::new(
                format!("fig2b_{name}"),
                format!("{name} IPR {ipr:.3}"),
                series.times,
                series.values,
            ));
        }
        out.plots.push(Plot::new("fig2b", "spin components, kicked top", "step", "K_C", &out.curves));
        out.summary.insert("operators".into(), json!(rows));
        Ok(out)
    }))
}

pub(crate) fn fig2c(p: &Params) -> Result<Job> {
    let spec = read_spec(p, 15.0, 6.0, 200)?;
    let ops = p.name_list("operators", &COMPONENTS, &COMPONENTS)?;
    let n_steps = p.usize("n_steps", 300)?;
    check_steps(n_steps)?;
    Ok(Box::new(move |_seed| {
        let u = kicked_top_unitary(&spec)?;
        let spin = spec.spin();
        let mut out = Output::default();
        let mut rows = Vec::new();
        for name in &ops {
            let c = otoc_series(&u, spin_component(&spin, name), n_steps)?;
            rows.push(json!({ "operator": name, "saturation": tail_mean(&c) }));
            out.curves.push(Curve::new(format!("fig2c_{name}"), name.clone(), steps(n_steps), c));
        }
        out.plots.push(Plot::new("fig2c", "OTOC, kicked top", "step", "C(n)", &out.curves));
        out.summary.insert("operators".into(), json!(rows));
        Ok(out)
    }))
}

pub(crate) fn fig3b(p: &Params) -> Result<Job> {
    let two_j = read_j(p, 10.0, 200)?;
    let kappas = p.f64_list("kappas", &[0.5, 2.0, 4.0, 6.0])?;
    let alpha = p.f64("alpha", FRAC_PI_2)?;
    let size = p.usize("ensemble_size", 100)?;
    let n_steps = p.usize("n_steps", 200)?;
    let law = AngleLaw::read(p)?;
    check_ensemble(size)?;
    check_steps(n_steps)?;
    Ok(Box::new(move |seed| {
        let mut out = Output { sub_seeds: angle_seeds(seed, size), ..Default::default() };
        let mut rows = Vec::new();
        for (k, &kappa) in kappas.iter().enumerate() {
            let spec = KickedTopSpec { two_j, kappa, alpha };
            let u = kicked_top_unitary(&spec)?;
            let spin = spec.spin();
            let avg = ensemble_average(size, |i| {
                let (theta, phi) = law.sample(seed, i);
                let psi = spin_coherent_state(&spin, theta, phi)?;
                Ok(floquet_run(&u, psi.amplitudes(), n_steps)?.0.values)
            })?;
            rows.push(json!({ "kappa": kappa, "saturation": tail_mean(&avg.mean) }));
            let curve = Curve::new(
                format!("fig3b_kappa{k}"),
                format!("kappa = {}", short(kappa)),
                steps(n_steps),
                avg.mean.clone(),
            )
            .with_stderr(avg.stderr());
            out.curves.push(curve);
        }
        out.plots.push(Plot::new(
            "fig3b",
            "averaged state complexity, kicked top",
            "step",
            "mean K_C",
            &out.curves,
        ));
        out.summary.insert("kappas".into(), json!(rows));
        Ok(out)
    }))
}

pub(crate) fn fig3c(p: &Params) -> Result<Job> {
    let two_j = read_j(p, 10.0, 200)?;
    let default: Vec<f64> = (1..=12).map(|k| 0.5 * k as f64).collect();
    let kappas = p.f64_list("kappas", &default)?;
    let alpha = p.f64("alpha", FRAC_PI_2)?;
    let size = p.usize("ensemble_size", 100)?;
    let law = AngleLaw::read(p)?;
    check_ensemble(size)?;
    Ok(Box::new(move |seed| {
        let mut out = Output { sub_seeds: angle_seeds(seed, size), ..Default::default() };
        let (mut means, mut errs, mut rows) = (Vec::new(), Vec::new(), Vec::new());
        for &kappa in &kappas {
            let spec = KickedTopSpec { two_j, kappa, alpha };
            let u = kicked_top_unitary(&spec)?;
            let spin = spec.spin();
            let vars = ensemble_map(size, |i| {
                let (theta, phi) = law.sample(seed, i);
                let psi = spin_coherent_state(&spin, theta, phi)?;
                let (_, coeffs) = floquet_arnoldi(&u, psi.amplitudes(), KrylovOptions::default())?;
                Ok(arnoldi_subdiag_variance(&coeffs)?)
            })?;
            let (m, s) = mean_stderr(&vars);
            means.push(m);
            errs.push(s);
            rows.push(json!({ "kappa": kappa, "variance": m, "stderr": s }));
        }
        let curve = Curve::new("fig3c", "Arnoldi variance", kappas.clone(), means).with_stderr(errs);
        out.plots.push(Plot::new(
            "fig3c",
            "variance of Arnoldi coefficients",
            "kappa",
            "var h",
            std::slice::from_ref(&curve),
        ));
        out.curves.push(curve);
        out.summary.insert("kappas".into(), json!(rows));
        Ok(out)
    }))
}
