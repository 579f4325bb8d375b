//! Named experiments. Each preset reads and validates its parameters up
//! front and returns a job that maps the master seed to an [`Output`].

mod ising;
mod kicked;
mod rmte;

use crate::config::{require, ExperimentConfig, Params};
use crate::error::{LabError, Result};
use crate::output::{Output, SubSeed};
use krylov_core::krylov::{
    complexity_series_floquet, floquet_arnoldi, ComplexitySeries, FloquetVector, KrylovOptions,
    SATURATION_FRACTION,
};
use krylov_core::models::rng;
use krylov_core::quantum::DenseOperator;
use rand::Rng;
use std::f64::consts::PI;

pub type Job = Box<dyn Fn(u64) -> Result<Output> + Send + Sync>;

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    build: fn(&Params) -> Result<Job>,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig1a",
        description: "RMTE state complexity for rotated eigenvector seeds of different IPR",
        build: rmte::fig1a,
    },
    Preset {
        name: "fig1b",
        description: "RMTE uniform-superposition seed (IPR 1/D) across coupling strengths",
        build: rmte::fig1b,
    },
    Preset {
        name: "fig1c",
        description: "kicked-top state complexity for spin coherent seeds",
        build: kicked::fig1c,
    },
    Preset {
        name: "fig1d",
        description: "kicked-top single-spin linear entropy for the fig1c seeds",
        build: kicked::fig1d,
    },
    Preset {
        name: "fig2a",
        description: "RMTE operator complexity for rotated copies of the Floquet operator",
        build: rmte::fig2a,
    },
    Preset {
        name: "fig2b",
        description: "kicked-top operator complexity of jx, jy, jz",
        build: kicked::fig2b,
    },
    Preset { name: "fig2c", description: "kicked-top OTOC of jx, jy, jz", build: kicked::fig2c },
    Preset {
        name: "fig3a",
        description: "Ising chain operator complexity averaged over rotated seeds",
        build: ising::fig3a,
    },
    Preset {
        name: "fig3b",
        description: "kicked-top state complexity averaged over random coherent seeds",
        build: kicked::fig3b,
    },
    Preset {
        name: "fig3c",
        description: "variance of Arnoldi coefficients against kick strength",
        build: kicked::fig3c,
    },
    Preset {
        name: "supp_level_spacing",
        description: "mean gap ratio of the RMTE against coupling strength",
        build: rmte::level_spacing,
    },
    Preset {
        name: "supp_tfim_flip",
        description: "Ising chain Sz / Sx saturation flip between field strengths",
        build: ising::tfim_flip,
    },
    Preset {
        name: "ipr_table",
        description: "operator IPR of Sx and Sz in the Ising chain",
        build: ising::ipr_table,
    },
    Preset {
        name: "identity_checks",
        description: "energy variance against b1 squared, late-time formula against long averages",
        build: rmte::identity_checks,
    },
];

pub fn find(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        LabError::Usage(format!("unknown preset {name:?}; available: {}", names.join(", ")))
    })
}

/// Validate the configuration and prepare its job.
pub fn plan(config: &ExperimentConfig) -> Result<Job> {
    let preset = find(&config.preset)?;
    let params = config.params();
    let job = (preset.build)(&params)?;
    params.finish()?;
    Ok(job)
}

pub(crate) fn check_dim(p_d: usize) -> Result<()> {
    require((2..=36).contains(&p_d), "d", "subsystem dimension must lie in 2..=36")
}

pub(crate) fn check_epsilon(field: &str, eps: f64) -> Result<()> {
    require((0.0..=1.0).contains(&eps), field, "coupling strength must lie in [0, 1]")
}

pub(crate) fn check_steps(n: usize) -> Result<()> {
    require(n >= 1, "n_steps", "need at least one step")
}

pub(crate) fn check_ensemble(n: usize) -> Result<()> {
    require(n >= 2, "ensemble_size", "need at least 2 realizations")
}

pub(crate) fn steps(n: usize) -> Vec<f64> {
    (0..=n).map(|k| k as f64).collect()
}

/// Time average over the last 80% of a series.
pub(crate) fn tail_mean(values: &[f64]) -> f64 {
    let n = values.len();
    let start = n - ((n as f64) * SATURATION_FRACTION).floor() as usize;
    let tail = &values[start..];
    tail.iter().sum::<f64>() / tail.len() as f64
}

/// Complexity of a Floquet orbit over its full Krylov space.
pub(crate) fn floquet_run<V: FloquetVector>(
    u: &DenseOperator,
    seed: &V,
    n_steps: usize,
) -> Result<(ComplexitySeries, usize)> {
    let (basis, _) = floquet_arnoldi(u, seed, KrylovOptions::default())?;
    if basis.orthogonality_warning() {
        return Err(LabError::Numerical(format!(
            "Krylov basis lost orthogonality (defect {:e})",
            basis.orthonormality_defect()
        )));
    }
    let series = complexity_series_floquet(u, seed, &basis, n_steps, false)?;
    Ok((series, basis.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AngleLaw {
    /// θ uniform on [0, π), φ uniform on [0, 2π).
    Box,
    /// Uniform on the sphere.
    Sphere,
}

impl AngleLaw {
    pub(crate) fn read(p: &Params) -> Result<Self> {
        Ok(match p.choice("angle_law", "box", &["box", "sphere"])?.as_str() {
            "box" => AngleLaw::Box,
            _ => AngleLaw::Sphere,
        })
    }

    /// Angles of realization `index`.
    pub(crate) fn sample(self, master: u64, index: usize) -> (f64, f64) {
        let mut r = rng::substream(master, index as u64, rng::tag::ANGLES);
        let u: f64 = r.random();
        let v: f64 = r.random();
        let theta = match self {
            AngleLaw::Box => PI * u,
            AngleLaw::Sphere => (1.0 - 2.0 * u).acos(),
        };
        (theta, 2.0 * PI * v)
    }
}

pub(crate) fn angle_seeds(master: u64, size: usize) -> Vec<SubSeed> {
    (0..size as u64)
        .map(|i| SubSeed {
            label: "angles".into(),
            index: i,
            seed: rng::derive_seed(master, i, rng::tag::ANGLES),
        })
        .collect()
}

/// Compact decimal for names and legends.
pub(crate) fn short(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}
