//! Localization and chaos diagnostics.

mod dynamics;
mod gap_ratio;
mod ipr;
mod rank;

pub use dynamics::{linear_entropy, linear_entropy_series, otoc_series};
pub use gap_ratio::{mean_gap_ratio, GapRatioStats, LevelKind};
pub use ipr::{ipr_operator, ipr_state};
pub use rank::{ranks, spearman_rank_correlation};
