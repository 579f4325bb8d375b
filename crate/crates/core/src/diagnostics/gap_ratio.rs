use crate::error::bail;
use crate::Result;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelKind {
    Energies,
    /// Phases on the unit circle; the wrap-around spacing is included.
    Eigenphases,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRatioStats {
    pub ratios: Vec<f64>,
    pub mean: f64,
    /// Pairs of adjacent spacings that were both zero.
    pub skipped: usize,
}

/// `r_n = min(s_n, s_{n+1}) / max(s_n, s_{n+1})` over sorted levels.
pub fn mean_gap_ratio(values: &[f64], kind: LevelKind) -> Result<GapRatioStats> {
    if values.len() < 3 {
        bail!(DegenerateInput, "need at least 3 levels, got {}", values.len());
    }
    if values.iter().any(|v| !v.is_finite()) {
        bail!(InvalidArgument, "levels must be finite");
    }
    let mut levels: Vec<f64> = match kind {
        LevelKind::Energies => values.to_vec(),
        LevelKind::Eigenphases => values.iter().map(|&p| crate::quantum::wrap_phase(p)).collect(),
    };
    levels.sort_by(f64::total_cmp);
    let mut spacings: Vec<f64> = levels.windows(2).map(|w| w[1] - w[0]).collect();
    let pairs = match kind {
        LevelKind::Energies => spacings.len() - 1,
        LevelKind::Eigenphases => {
            spacings.push(2.0 * PI - (levels[levels.len() - 1] - levels[0]));
            spacings.len()
        }
    };
    let n = spacings.len();
    let mut ratios = Vec::with_capacity(pairs);
    let mut skipped = 0;
    for k in 0..pairs {
        let (s0, s1) = (spacings[k], spacings[(k + 1) % n]);
        let hi = s0.max(s1);
        if hi <= 0.0 {
            skipped += 1;
            continue;
        }
        ratios.push(s0.min(s1) / hi);
    }
    if ratios.is_empty() {
        bail!(DegenerateInput, "all spacings vanish");
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    Ok(GapRatioStats { ratios, mean, skipped })
}
