use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CmcError, Result};

/// Settings of the finite-difference Newton solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Euclidean lattice spacing in the disk model.
    pub spacing: f64,
    /// Converged when `max |R| ≤ tol · λ_max`, `R` the residual scaled by `λ²`.
    pub tol: f64,
    pub max_newton: usize,
    /// Backtracking factor of the line search.
    pub damping: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            spacing: 0.01,
            tol: 1e-8,
            max_newton: 60,
            damping: 0.5,
        }
    }
}

impl SolverConfig {
    pub fn with_spacing(spacing: f64) -> Self {
        SolverConfig {
            spacing,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.spacing > 0.0 && self.spacing < 1.0) {
            return Err(CmcError::Input(format!("spacing must lie in (0, 1), got {}", self.spacing)));
        }
        if !(self.tol > 0.0) {
            return Err(CmcError::Input(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(CmcError::Input(format!("damping must lie in (0, 1), got {}", self.damping)));
        }
        if self.max_newton == 0 {
            return Err(CmcError::Input("max_newton must be at least 1".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SolverConfig = serde_json::from_str(text).map_err(|e| CmcError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SolverConfig = toml::from_str(text).map_err(|e| CmcError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a `.toml` file as TOML and anything else as JSON.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CmcError::io(path, e))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => SolverConfig::from_toml(&text),
            _ => SolverConfig::from_json(&text),
        }
    }
}
