//! Result containers and their serialized forms: CSV curves, minimal SVG
//! line plots and the run manifest.

use crate::error::{LabError, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// One curve; row `k` is step `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    /// File stem of the CSV.
    pub name: String,
    /// Legend text.
    pub label: String,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub stderr: Option<Vec<f64>>,
}

impl Curve {
    pub fn new(name: impl Into<String>, label: impl Into<String>, times: Vec<f64>, values: Vec<f64>) -> Self {
        debug_assert_eq!(times.len(), values.len());
        Self { name: name.into(), label: label.into(), times, values, stderr: None }
    }

    pub fn with_stderr(mut self, stderr: Vec<f64>) -> Self {
        debug_assert_eq!(stderr.len(), self.values.len());
        self.stderr = Some(stderr);
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(48 * (self.values.len() + 1));
        out.push_str(if self.stderr.is_some() { "step,time,value,stderr\n" } else { "step,time,value\n" });
        for (k, (t, v)) in self.times.iter().zip(&self.values).enumerate() {
            let _ = write!(out, "{k},{t:.16e},{v:.16e}");
            if let Some(s) = &self.stderr {
                let _ = write!(out, ",{:.16e}", s[k]);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub name: String,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Names of the curves drawn, in legend order.
    pub curves: Vec<String>,
    pub log_x: bool,
}

impl Plot {
    pub fn new(name: &str, title: &str, x_label: &str, y_label: &str, curves: &[Curve]) -> Self {
        Self {
            name: name.into(),
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            curves: curves.iter().map(|c| c.name.clone()).collect(),
            log_x: false,
        }
    }

    pub fn log_x(mut self) -> Self {
        self.log_x = true;
        self
    }
}

/// Provenance of one random ingredient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubSeed {
    pub label: String,
    pub index: u64,
    pub seed: u64,
}

/// Everything a preset produces, before anything touches the disk.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub curves: Vec<Curve>,
    pub plots: Vec<Plot>,
    pub summary: serde_json::Map<String, serde_json::Value>,
    pub sub_seeds: Vec<SubSeed>,
}

const PALETTE: [&str; 8] =
    ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

pub fn render_svg(plot: &Plot, curves: &[&Curve]) -> String {
    let (w, h) = (720.0, 440.0);
    let (left, right, top, bottom) = (70.0, 170.0, 40.0, 50.0);
    let fx = |x: f64| if plot.log_x { x.log10() } else { x };
    let points: Vec<Vec<(f64, f64)>> = curves
        .iter()
        .map(|c| {
            c.times
                .iter()
                .zip(&c.values)
                .filter(|(t, v)| v.is_finite() && (!plot.log_x || **t > 0.0))
                .map(|(t, v)| (fx(*t), *v))
                .collect()
        })
        .collect();
    let all = points.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 < 1e-300 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 < 1e-300 {
        y1 = y0 + 1.0;
    }
    let (pw, ph) = (w - left - right, h - top - bottom);
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| top + ph - (y - y0) / (y1 - y0) * ph;
    let tick = |x: f64| if plot.log_x { 10f64.powf(x) } else { x };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        left + pw / 2.0,
        escape(&plot.title)
    );
    let _ =
        writeln!(s, r#"<path d="M{left} {top} V{} H{}" fill="none" stroke="black"/>"#, top + ph, left + pw);
    for (x, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="{anchor}">{}</text>"#,
            sx(x),
            top + ph + 16.0,
            fmt_tick(tick(x))
        );
    }
    for y in [y0, y1] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 6.0,
            sy(y) + 4.0,
            fmt_tick(y)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        left + pw / 2.0,
        h - 12.0,
        escape(&plot.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        top + ph / 2.0,
        top + ph / 2.0,
        escape(&plot.y_label)
    );
    for (i, (curve, pts)) in curves.iter().zip(&points).enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut poly = String::new();
        for &(x, y) in pts {
            let _ = write!(poly, "{:.2},{:.2} ", sx(x), sy(y));
        }
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.2"/>"#,
            poly.trim_end()
        );
        let ly = top + 14.0 + 18.0 * i as f64;
        let lx = left + pw + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(&curve.label));
    }
    s.push_str("</svg>\n");
    s
}

fn fmt_tick(x: f64) -> String {
    if x != 0.0 && (x.abs() >= 1e4 || x.abs() < 1e-2) {
        format!("{x:.2e}")
    } else {
        format!("{x:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub name: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub preset: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub version: String,
    pub threads: usize,
    pub wall_time_s: f64,
    pub sub_seeds: Vec<SubSeed>,
    pub files: Vec<FileDigest>,
}

pub const MANIFEST_FILE: &str = "manifest.json";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_FILE);
        let text = std::fs::read_to_string(&path).map_err(|e| LabError::io(&path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| LabError::io(&path, std::io::Error::new(std::io::ErrorKind::InvalidData, e)))
    }

    /// Names of listed files whose contents no longer match their digest.
    pub fn mismatches(&self, dir: &Path) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for f in &self.files {
            let path = dir.join(&f.name);
            let bytes = std::fs::read(&path).map_err(|e| LabError::io(&path, e))?;
            if sha256_hex(&bytes) != f.sha256 || bytes.len() as u64 != f.bytes {
                bad.push(f.name.clone());
            }
        }
        Ok(bad)
    }
}
