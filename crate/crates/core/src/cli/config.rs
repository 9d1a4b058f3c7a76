use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, QhaError, Result};
use crate::exponent::Exponent;
use crate::io::read_symbol;
use crate::phase_space::{PhaseGrid, Region, SymbolGrid, DEFAULT_MARGIN};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: f64,
}

/// Parameters of a `verify` or `estimate-constant` batch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridConfig,
    /// Region descriptor, e.g. `disc:2`.
    pub omega: String,
    pub p: Vec<Exponent>,
    pub samples: usize,
    pub seed: u64,
    pub margin: f64,
    /// Check this QHAGRID1 symbol instead of random samples.
    pub symbol: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub timestamp: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid: GridConfig { n: 256, l: 8.0 },
            omega: "disc:2".into(),
            p: vec![Exponent::ONE, Exponent::TWO, Exponent::Infinity],
            samples: 50,
            seed: 0,
            margin: DEFAULT_MARGIN,
            symbol: None,
            output: None,
            csv: None,
            timestamp: true,
        }
    }
}

/// A [`RunConfig`] checked against every precondition of the batch.
#[derive(Clone, Debug)]
pub struct ValidatedRun {
    pub grid: PhaseGrid,
    pub region: Region,
    /// The symbol named by `symbol`; its grid replaces `grid`.
    pub symbol: Option<SymbolGrid>,
    pub config: RunConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|source| QhaError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| invalid(format!("config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<ValidatedRun> {
        let symbol = self.symbol.as_ref().map(read_symbol).transpose()?;
        let grid = match &symbol {
            Some(s) => *s.grid(),
            None => PhaseGrid::new(self.grid.n, self.grid.l)?,
        };
        let region: Region = self.omega.parse()?;
        if !(self.margin.is_finite() && self.margin > 0.0) {
            return Err(invalid(format!(
                "margin must be positive, got {}",
                self.margin
            )));
        }
        region.ensure_fits(&grid, self.margin)?;
        if self.samples == 0 {
            return Err(invalid("samples must be at least 1"));
        }
        if self.p.is_empty() {
            return Err(invalid("at least one exponent is required"));
        }
        let mut config = self.clone();
        if symbol.is_some() {
            config.samples = 1;
            config.grid = GridConfig {
                n: grid.n(),
                l: grid.half_width(),
            };
        }
        Ok(ValidatedRun {
            grid,
            region,
            symbol,
            config,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        let err = serde_json::from_str::<RunConfig>(r#"{"samples": 3, "colour": 1}"#);
        assert!(err.is_err());
    }

    #[test]
    fn partial_config_uses_defaults() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"grid": {"N": 64, "L": 4}, "p": [1, "inf"]}"#).unwrap();
        assert_eq!(cfg.grid.n, 64);
        assert_eq!(cfg.p, vec![Exponent::ONE, Exponent::Infinity]);
        assert_eq!(cfg.samples, 50);
        cfg.validate().unwrap();
    }

    #[test]
    fn region_outside_window_rejected() {
        let cfg = RunConfig {
            omega: "disc:7.9".into(),
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
