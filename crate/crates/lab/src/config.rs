//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # fig. 1(a) with more seed states
//! preset = fig1a
//! seed = 7
//! thetas = 0, 0.05, 0.1, 0.2, 0.3
//! ```
//!
//! Lists are comma separated; angle pairs are written `theta:phi`.

use crate::error::{LabError, Result};
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

/// Keys every preset understands.
const COMMON_KEYS: [&str; 3] = ["preset", "seed", "output_dir"];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub preset: String,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    entries: BTreeMap<String, String>,
}

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_entries(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(LabError::validation(&format!("line {}", n + 1), "expected `key = value`"));
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(LabError::validation(&format!("line {}", n + 1), "empty key"));
        }
        if out.insert(key.to_owned(), value.trim().to_owned()).is_some() {
            return Err(LabError::validation(key, "given more than once"));
        }
    }
    Ok(out)
}

impl ExperimentConfig {
    pub fn new(preset: &str, seed: u64) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert("preset".into(), preset.into());
        entries.insert("seed".into(), seed.to_string());
        Self { preset: preset.into(), seed, output_dir: None, entries }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_entries(parse_entries(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn from_entries(entries: BTreeMap<String, String>) -> Result<Self> {
        let preset = entries
            .get("preset")
            .filter(|p| !p.is_empty())
            .ok_or_else(|| LabError::validation("preset", "missing"))?
            .clone();
        let seed = entries
            .get("seed")
            .ok_or_else(|| LabError::validation("seed", "missing (a seed is mandatory)"))?
            .parse::<u64>()
            .map_err(|e| LabError::validation("seed", e.to_string()))?;
        let output_dir = entries.get("output_dir").map(PathBuf::from);
        Ok(Self { preset, seed, output_dir, entries })
    }

    /// Builder-style override of one entry.
    pub fn with(mut self, key: &str, value: impl ToString) -> Result<Self> {
        self.entries.insert(key.to_owned(), value.to_string());
        Self::from_entries(self.entries)
    }

    /// Every entry, `preset` and `seed` included.
    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.entries
    }

    pub fn params(&self) -> Params<'_> {
        Params { entries: &self.entries, used: RefCell::new(BTreeSet::new()) }
    }
}

/// Typed, tracked access to the preset-specific keys.
#[derive(Debug)]
pub struct Params<'a> {
    entries: &'a BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
}

impl Params<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.used.borrow_mut().insert(key.to_owned());
        self.entries.get(key).map(String::as_str)
    }

    pub fn f64(&self, key: &str, default: f64) -> Result<f64> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => parse_f64(key, v),
        }
    }

    pub fn usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|e| LabError::validation(key, format!("{v:?}: {e}"))),
        }
    }

    pub fn f64_list(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(v) => {
                let list = split_list(v).map(|x| parse_f64(key, x)).collect::<Result<Vec<_>>>()?;
                if list.is_empty() {
                    return Err(LabError::validation(key, "empty list"));
                }
                Ok(list)
            }
        }
    }

    /// `theta:phi` pairs.
    pub fn angle_list(&self, key: &str, default: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(v) => {
                let list = split_list(v)
                    .map(|pair| {
                        let (t, p) = pair
                            .split_once(':')
                            .ok_or_else(|| LabError::validation(key, format!("{pair:?} is not theta:phi")))?;
                        Ok((parse_f64(key, t.trim())?, parse_f64(key, p.trim())?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if list.is_empty() {
                    return Err(LabError::validation(key, "empty list"));
                }
                Ok(list)
            }
        }
    }

    /// Names, each restricted to `allowed`.
    pub fn name_list(&self, key: &str, default: &[&str], allowed: &[&str]) -> Result<Vec<String>> {
        let list: Vec<String> = match self.raw(key) {
            None => default.iter().map(|s| s.to_string()).collect(),
            Some(v) => split_list(v).map(str::to_owned).collect(),
        };
        if list.is_empty() {
            return Err(LabError::validation(key, "empty list"));
        }
        for name in &list {
            if !allowed.contains(&name.as_str()) {
                return Err(LabError::validation(key, format!("{name:?} is not one of {allowed:?}")));
            }
        }
        Ok(list)
    }

    pub fn choice(&self, key: &str, default: &str, allowed: &[&str]) -> Result<String> {
        let v = self.raw(key).unwrap_or(default);
        if !allowed.contains(&v) {
            return Err(LabError::validation(key, format!("{v:?} is not one of {allowed:?}")));
        }
        Ok(v.to_owned())
    }

    /// Reject keys the preset never asked for.
    pub fn finish(self) -> Result<()> {
        let used = self.used.into_inner();
        for key in self.entries.keys() {
            if !used.contains(key) && !COMMON_KEYS.contains(&key.as_str()) {
                return Err(LabError::validation(key, "not a parameter of this preset"));
            }
        }
        Ok(())
    }
}

fn split_list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    let x: f64 = v.parse().map_err(|e| LabError::validation(key, format!("{v:?}: {e}")))?;
    if !x.is_finite() {
        return Err(LabError::validation(key, "must be finite"));
    }
    Ok(x)
}

/// Fails with a validation error on `field` unless `ok`.
pub fn require(ok: bool, field: &str, message: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(LabError::validation(field, message))
    }
}
