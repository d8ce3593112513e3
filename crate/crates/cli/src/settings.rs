use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::GlobalArgs;
use crate::failure::usage;

/// Keys accepted in a `--config` file.
#[derive(Deserialize, Debug, Default, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub out: Option<PathBuf>,
    pub eps_min: Option<f64>,
    pub eps_max: Option<f64>,
    pub scales: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub out: PathBuf,
    pub eps_min: Option<f64>,
    pub eps_max: Option<f64>,
    pub scales: usize,
    pub seed: u64,
}

pub const DEFAULT_OUT: &str = "boxdim-out";
pub const DEFAULT_SEED: u64 = 0;

impl Settings {
    /// Flags override the config file, which overrides the defaults.
    pub fn resolve(g: &GlobalArgs) -> anyhow::Result<Settings> {
        let file = match &g.config {
            Some(p) => read_config(p)?,
            None => ConfigFile::default(),
        };
        let s = Settings {
            out: g.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
            eps_min: g.eps_min.or(file.eps_min),
            eps_max: g.eps_max.or(file.eps_max),
            scales: g.scales.or(file.scales).unwrap_or(boxdim_core::fractal::DEFAULT_SCALES),
            seed: g.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        };
        if let Some(e) = s.eps_min {
            if !(e > 0.0 && e.is_finite()) {
                return Err(usage("--eps-min must be a positive number"));
            }
        }
        if let Some(e) = s.eps_max {
            if !(e > 0.0 && e.is_finite()) || s.eps_min.is_some_and(|lo| lo >= e) {
                return Err(usage("--eps-max must exceed --eps-min"));
            }
        }
        if s.scales < boxdim_core::fractal::MIN_SCALES {
            return Err(usage(format!("--scales must be at least {}", boxdim_core::fractal::MIN_SCALES)));
        }
        Ok(s)
    }
}

fn read_config(p: &Path) -> anyhow::Result<ConfigFile> {
    let text = std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read config {}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("bad config {}: {e}", p.display())))
}
