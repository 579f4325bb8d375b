use super::{angle_seeds, check_ensemble, check_steps, short, tail_mean, AngleLaw, Job};
use crate::config::{require, Params};
use crate::ensemble::ensemble_average;
use crate::error::{LabError, Result};
use crate::output::{Curve, Output, Plot};
use krylov_core::diagnostics::ipr_operator;
use krylov_core::krylov::{complexity_series_hamiltonian, ComplexitySeries, KrylovOptions, LiouvillianFrame};
use krylov_core::models::{
    collective_from_site_operator, collective_operator, parity_sector, project_positive_parity,
    site_rotation, tfim_hamiltonian, Axis, ParitySector, TfimSpec, MAX_TFIM_SITES,
};
use krylov_core::quantum::{eigensystem, pauli, trace_norm, DenseOperator, Eigensystem, SpectrumKind};
use serde_json::json;

const SEEDS: [&str; 2] = ["sz", "sx"];

#[derive(Debug, Clone, Copy)]
struct ChainParams {
    l: usize,
    coupling: f64,
    hx: f64,
}

impl ChainParams {
    fn read(p: &Params) -> Result<Self> {
        let l = p.usize("l", 6)?;
        let coupling = p.f64("coupling", 1.0)?;
        let hx = p.f64("hx", 1.0)?;
        require(
            (2..=MAX_TFIM_SITES).contains(&l),
            "l",
            &format!("chain length must lie in 2..={MAX_TFIM_SITES}"),
        )?;
        Ok(Self { l, coupling, hx })
    }

    /// Hamiltonian spectrum in the reflection-even sector.
    fn sector(&self, hz: f64) -> Result<(ParitySector, Eigensystem)> {
        let h = tfim_hamiltonian(&TfimSpec { l: self.l, j: self.coupling, hx: self.hx, hz })?;
        let sector = parity_sector(self.l)?;
        let eig = eigensystem(&project_positive_parity(&h, &sector)?, SpectrumKind::Hermitian)?;
        Ok((sector, eig))
    }
}

fn collective(l: usize, name: &str) -> Result<DenseOperator> {
    Ok(collective_operator(l, if name == "sx" { Axis::X } else { Axis::Z })?)
}

fn read_grid(p: &Params, n_default: usize) -> Result<(f64, usize)> {
    let dt = p.f64("dt", 0.5)?;
    let n = p.usize("n_steps", n_default)?;
    require(dt > 0.0, "dt", "time step must be positive")?;
    check_steps(n)?;
    Ok((dt, n))
}

fn time_grid(dt: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| k as f64 * dt).collect()
}

/// Operator complexity under `H` with spectrum `eig`, seed given in the
/// same sector basis.
fn hamiltonian_run(
    eig: &Eigensystem,
    seed: &DenseOperator,
    times: &[f64],
) -> Result<(ComplexitySeries, usize)> {
    let frame = LiouvillianFrame::from_eigensystem(eig.clone(), seed)?;
    let (basis, _) = frame.krylov(KrylovOptions::default())?;
    if basis.orthogonality_warning() {
        return Err(LabError::Numerical(format!(
            "Krylov basis lost orthogonality (defect {:e})",
            basis.orthonormality_defect()
        )));
    }
    let series = complexity_series_hamiltonian(&frame, &basis, times, false)?;
    Ok((series, basis.len()))
}

pub(crate) fn tfim_flip(p: &Params) -> Result<Job> {
    let chain = ChainParams::read(p)?;
    let hz_values = p.f64_list("hz_values", &[0.2, 2.5])?;
    let ops = p.name_list("operators", &SEEDS, &SEEDS)?;
    let (dt, n_steps) = read_grid(p, 1000)?;
    Ok(Box::new(move |_seed| {
        let times = time_grid(dt, n_steps);
        let mut out = Output::default();
        let mut rows = Vec::new();
        let systems = hz_values.iter().map(|&hz| chain.sector(hz)).collect::<Result<Vec<_>>>()?;
        for name in &ops {
            let full = collective(chain.l, name)?;
            let mut drawn = Vec::new();
            for (k, (&hz, (sector, eig))) in hz_values.iter().zip(&systems).enumerate() {
                let seed = project_positive_parity(&full, sector)?;
                let ipr = ipr_operator(&seed, eig)?;
                let (series, dim) = hamiltonian_run(eig, &seed, &times)?;
                rows.push(json!({
                    "operator": name, "hz": hz, "ipr": ipr,
                    "saturation": series.saturation_mean(), "krylov_dim": dim,
                }));
                drawn.push(Curve::new(
                    format!("supp_tfim_flip_{name}_hz{k}"),
                    format!("hz = {}", short(hz)),
                    times.clone(),
                    series.values,
                ));
            }
            let title = format!("{} seed, Ising chain", if name == "sx" { "Sx" } else { "Sz" });
            out.plots.push(Plot::new(&format!("supp_tfim_flip_{name}"), &title, "t", "K_C", &drawn));
            out.curves.extend(drawn);
        }
        out.summary.insert("runs".into(), json!(rows));
        Ok(out)
    }))
}

pub(crate) fn ipr_table(p: &Params) -> Result<Job> {
    let chain = ChainParams::read(p)?;
    let hz_values = p.f64_list("hz_values", &[0.2, 1.35, 2.5])?;
    Ok(Box::new(move |_seed| {
        let sx = collective(chain.l, "sx")?;
        let sz = collective(chain.l, "sz")?;
        let mut rows = Vec::new();
        let mut alt = Vec::new();
        for &hz in &hz_values {
            let (sector, eig) = chain.sector(hz)?;
            let mut trace = Vec::new();
            let mut hs = Vec::new();
            for full in [&sx, &sz] {
                let seed = project_positive_parity(full, &sector)?;
                let ipr = ipr_operator(&seed, &eig)?;
                trace.push(ipr);
                // Same diagonal weights, normalized by the full-space
                // Hilbert-Schmidt norm instead of the sector trace norm.
                let tn = trace_norm(seed.matrix())?;
                hs.push(ipr * tn * tn / full.matrix().norm_squared());
            }
            rows.push(json!({ "hz": hz, "s_x": trace[0], "s_z": trace[1] }));
            alt.push(json!({ "hz": hz, "s_x": hs[0], "s_z": hs[1] }));
        }
        let mut out = Output::default();
        out.summary.insert("normalization".into(), json!("trace norm, reflection-even sector"));
        out.summary.insert("rows".into(), json!(rows));
        out.summary.insert("full_space_hilbert_schmidt".into(), json!(alt));
        Ok(out)
    }))
}

pub(crate) fn fig3a(p: &Params) -> Result<Job> {
    let chain = ChainParams::read(p)?;
    let hz_values = p.f64_list("hz_values", &[0.2, 2.5])?;
    let size = p.usize("ensemble_size", 100)?;
    let (dt, n_steps) = read_grid(p, 800)?;
    check_ensemble(size)?;
    Ok(Box::new(move |seed| {
        let times = time_grid(dt, n_steps);
        let [x, _, _] = pauli();
        let mut out = Output { sub_seeds: angle_seeds(seed, size), ..Default::default() };
        let mut rows = Vec::new();
        for (k, &hz) in hz_values.iter().enumerate() {
            let (sector, eig) = chain.sector(hz)?;
            // Every site turned by the same (θ, φ) keeps the operator
            // reflection-even.
            let avg = ensemble_average(size, |i| {
                let (theta, phi) = AngleLaw::Box.sample(seed, i);
                let r = site_rotation(theta, phi)?;
                let local = r.matrix() * &x * r.matrix().adjoint();
                let full = collective_from_site_operator(chain.l, &local)?;
                let op = project_positive_parity(&full, &sector)?;
                Ok(hamiltonian_run(&eig, &op, &times)?.0.values)
            })?;
            rows.push(json!({ "hz": hz, "saturation": tail_mean(&avg.mean) }));
            let curve = Curve::new(
                format!("fig3a_hz{k}"),
                format!("hz = {}", short(hz)),
                times.clone(),
                avg.mean.clone(),
            )
            .with_stderr(avg.stderr());
            out.curves.push(curve);
        }
        out.plots.push(Plot::new(
            "fig3a",
            "averaged operator complexity, Ising chain",
            "t",
            "mean K_C",
            &out.curves,
        ));
        out.summary.insert("fields".into(), json!(rows));
        Ok(out)
    }))
}
