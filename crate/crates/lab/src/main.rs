use clap::{Parser, Subcommand};
use krylov_lab::config::parse_entries;
use krylov_lab::presets::PRESETS;
use krylov_lab::{resolve_out_dir, run, validate, ExperimentConfig, LabError, RunOptions};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "krylov-lab", version, about = "Krylov spread complexity experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset and write its results.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the `preset` key.
        #[arg(long)]
        preset: Option<String>,
        /// Overrides the `seed` key.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory; beats KRYLOV_OUT_DIR and `output_dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        no_plots: bool,
    },
    /// Print the available presets.
    ListPresets,
    /// Check a config file without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

fn load(path: &Path, preset: Option<String>, seed: Option<u64>) -> Result<ExperimentConfig, LabError> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    let mut entries = parse_entries(&text)?;
    if let Some(p) = preset {
        entries.insert("preset".into(), p);
    }
    if let Some(s) = seed {
        entries.insert("seed".into(), s.to_string());
    }
    ExperimentConfig::from_entries(entries)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::ListPresets => {
            for p in PRESETS {
                println!("{:<20} {}", p.name, p.description);
            }
            Ok(())
        }
        Command::Validate { config } => load(&config, None, None).and_then(|c| {
            validate(&c)?;
            println!("{}: ok (preset {}, seed {})", config.display(), c.preset, c.seed);
            Ok(())
        }),
        Command::Run { config, preset, seed, out, threads, no_plots } => load(&config, preset, seed)
            .and_then(|c| {
                let out_dir = resolve_out_dir(out.as_deref(), &c);
                let manifest = run(&c, &RunOptions { out_dir: out_dir.clone(), threads, plots: !no_plots })?;
                println!(
                    "{}: {} files in {} ({:.2} s)",
                    manifest.preset,
                    manifest.files.len() + 1,
                    out_dir.display(),
                    manifest.wall_time_s
                );
                Ok(())
            }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
