use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::output::{render_svg, sha256_hex, FileDigest, Output, RunManifest, MANIFEST_FILE};
use crate::presets;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Overrides the output directory named in a config file.
pub const OUT_DIR_ENV: &str = "KRYLOV_OUT_DIR";

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Worker threads; `None` uses every core.
    pub threads: Option<usize>,
    pub plots: bool,
}

/// Command line, then environment, then config file, then `results/<preset>`.
pub fn resolve_out_dir(cli: Option<&Path>, config: &ExperimentConfig) -> PathBuf {
    if let Some(p) = cli {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(OUT_DIR_ENV).filter(|p| !p.is_empty()) {
        return PathBuf::from(p);
    }
    config.output_dir.clone().unwrap_or_else(|| Path::new("results").join(&config.preset))
}

pub fn validate(config: &ExperimentConfig) -> Result<()> {
    presets::plan(config).map(drop)
}

/// Runs the preset in memory.
pub fn execute(config: &ExperimentConfig, threads: Option<usize>) -> Result<Output> {
    let job = presets::plan(config)?;
    if threads == Some(0) {
        return Err(LabError::Usage("--threads must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| LabError::Usage(format!("cannot start worker pool: {e}")))?;
    let out = pool.install(|| job(config.seed))?;
    let mut names = BTreeSet::new();
    for c in &out.curves {
        if !names.insert(c.name.as_str()) {
            return Err(LabError::Numerical(format!("duplicate curve name {}", c.name)));
        }
    }
    Ok(out)
}

/// Executes the preset and writes its files; the manifest comes last.
pub fn run(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunManifest> {
    let start = Instant::now();
    let out = execute(config, opts.threads)?;
    let wall_time_s = start.elapsed().as_secs_f64();

    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    for c in &out.curves {
        files.push((format!("{}.csv", c.name), c.to_csv().into_bytes()));
    }
    let mut summary = serde_json::to_string_pretty(&out.summary).expect("summary serializes");
    summary.push('\n');
    files.push(("summary.json".into(), summary.into_bytes()));
    if opts.plots {
        for plot in &out.plots {
            let drawn: Vec<_> =
                plot.curves.iter().filter_map(|name| out.curves.iter().find(|c| &c.name == name)).collect();
            files.push((format!("{}.svg", plot.name), render_svg(plot, &drawn).into_bytes()));
        }
    }

    let dir = &opts.out_dir;
    std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    let mut digests = Vec::with_capacity(files.len());
    for (name, bytes) in &files {
        let path = dir.join(name);
        std::fs::write(&path, bytes).map_err(|e| LabError::io(&path, e))?;
        digests.push(FileDigest { name: name.clone(), sha256: sha256_hex(bytes), bytes: bytes.len() as u64 });
    }
    let manifest = RunManifest {
        preset: config.preset.clone(),
        seed: config.seed,
        config: config.entries().clone(),
        version: env!("CARGO_PKG_VERSION").into(),
        threads: opts.threads.unwrap_or_else(rayon::current_num_threads),
        wall_time_s,
        sub_seeds: out.sub_seeds,
        files: digests,
    };
    let path = dir.join(MANIFEST_FILE);
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| LabError::io(&path, e))?;
    Ok(manifest)
}
