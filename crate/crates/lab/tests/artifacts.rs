//! Files on disk and the command-line contract.

use krylov_lab::output::{RunManifest, MANIFEST_FILE};
use krylov_lab::{run, ExperimentConfig, RunOptions};
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_krylov-lab"))
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("run.cfg");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn fig1a_emits_four_curves_and_a_plot() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::new("fig1a", 7).with("n_steps", 120).unwrap();
    let manifest = run(&cfg, &RunOptions { out_dir: tmp.path().into(), threads: None, plots: true }).unwrap();
    let csvs: Vec<_> = manifest.files.iter().filter(|f| f.name.ends_with(".csv")).collect();
    let svgs: Vec<_> = manifest.files.iter().filter(|f| f.name.ends_with(".svg")).collect();
    assert_eq!(csvs.len(), 4);
    assert_eq!(svgs.len(), 1);
    for f in csvs {
        let text = std::fs::read_to_string(tmp.path().join(&f.name)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("step,time,value"));
        assert_eq!(lines.count(), 121);
    }
    assert!(tmp.path().join("summary.json").exists());
}

#[test]
fn manifest_digests_match_files() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg =
        ExperimentConfig::new("fig3b", 3).with("ensemble_size", 4).unwrap().with("n_steps", 30).unwrap();
    let written =
        run(&cfg, &RunOptions { out_dir: tmp.path().into(), threads: Some(2), plots: true }).unwrap();
    let loaded = RunManifest::load(tmp.path()).unwrap();
    assert_eq!(loaded, written);
    assert_eq!(loaded.config.get("ensemble_size").map(String::as_str), Some("4"));
    assert_eq!(loaded.sub_seeds.len(), 4);
    assert!(loaded.mismatches(tmp.path()).unwrap().is_empty());

    let csv = tmp.path().join("fig3b_kappa0.csv");
    let mut text = std::fs::read_to_string(&csv).unwrap();
    text.push('\n');
    std::fs::write(&csv, text).unwrap();
    assert_eq!(loaded.mismatches(tmp.path()).unwrap(), vec!["fig3b_kappa0.csv".to_string()]);
}

#[test]
fn ensemble_rows_carry_stderr() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::new("fig3a", 5)
        .with("l", 4)
        .unwrap()
        .with("ensemble_size", 3)
        .unwrap()
        .with("n_steps", 40)
        .unwrap();
    run(&cfg, &RunOptions { out_dir: tmp.path().into(), threads: None, plots: false }).unwrap();
    let text = std::fs::read_to_string(tmp.path().join("fig3a_hz0.csv")).unwrap();
    assert!(text.starts_with("step,time,value,stderr\n"));
    assert_eq!(text.lines().count(), 42);
    assert!(!tmp.path().join("fig3a.svg").exists());
}

#[test]
fn cli_runs_and_honours_the_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "# smallest useful run\npreset = fig1c\nseed = 1\nn_steps = 20\n");
    let out = tmp.path().join("from_env");
    let status = bin().args(["run", "--config"]).arg(&cfg).env("KRYLOV_OUT_DIR", &out).output().unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    assert!(out.join(MANIFEST_FILE).exists());

    let flag = tmp.path().join("from_flag");
    let status = bin()
        .args(["run", "--no-plots", "--threads", "2", "--preset", "fig1d", "--seed", "4", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&flag)
        .env("KRYLOV_OUT_DIR", &out)
        .output()
        .unwrap();
    assert!(status.status.success());
    let manifest = RunManifest::load(&flag).unwrap();
    assert_eq!((manifest.preset.as_str(), manifest.seed), ("fig1d", 4));
    assert!(manifest.files.iter().all(|f| !f.name.ends_with(".svg")));
}

#[test]
fn cli_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let code = |args: &[&str], cfg: &str| {
        let path = write_config(tmp.path(), cfg);
        let mut cmd = bin();
        cmd.args(args);
        if !args.is_empty() && args[0] != "list-presets" {
            cmd.arg("--config").arg(&path);
        }
        cmd.env_remove("KRYLOV_OUT_DIR").output().unwrap().status.code().unwrap()
    };
    assert_eq!(code(&["list-presets"], ""), 0);
    assert_eq!(code(&["validate"], "preset = fig2b\nseed = 2\n"), 0);
    assert_eq!(code(&["frobnicate"], ""), 2);
    assert_eq!(code(&["validate"], "preset = fig9\nseed = 2\n"), 2);
    assert_eq!(code(&["validate"], "preset = fig1a\n"), 3);
    assert_eq!(code(&["validate"], "preset = fig1a\nseed = 1\nepsilon = 2\n"), 3);
    assert_eq!(code(&["validate"], "preset = fig1a\nseed = 1\nkappa = 6\n"), 3);
    assert_eq!(code(&["validate"], "preset = fig3c\nseed = 1\nj = 2.25\n"), 3);

    // A regular file where the output directory should go.
    let blocker = tmp.path().join("blocker");
    std::fs::write(&blocker, "").unwrap();
    let path = write_config(tmp.path(), "preset = ipr_table\nseed = 0\n");
    let status =
        bin().args(["run", "--config"]).arg(&path).arg("--out").arg(blocker.join("sub")).output().unwrap();
    assert_eq!(status.status.code(), Some(4));
    let missing = bin().args(["validate", "--config"]).arg(tmp.path().join("nope.cfg")).output().unwrap();
    assert_eq!(missing.status.code(), Some(4));
}
