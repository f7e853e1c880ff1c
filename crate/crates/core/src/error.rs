use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CmcError>;

#[derive(Debug, Error)]
pub enum CmcError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("curves are not nested: {0}")]
    NotNested(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("root not bracketed on [{a}, {b}] (f(a) = {fa}, f(b) = {fb})")]
    RootNotBracketed { a: f64, b: f64, fa: f64, fb: f64 },

    #[error("hypotheses belong to the other existence theorem: {0}")]
    WrongTheorem(String),

    #[error("no rotational graph reaches height {h}; attainable range is [{h_min}, {h_max}]")]
    NoRotationalGraph { h: f64, h_min: f64, h_max: f64 },

    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:e}): {reason}")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        reason: String,
    },

    #[error("gradient too steep for the grid (|Du| * spacing = {ratio:.3}); refine the spacing below {suggested:e}")]
    NeedsRefinement { ratio: f64, suggested: f64 },

    #[error("barrier undefined at s = {s}: {reason}")]
    BarrierDomain { s: f64, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl CmcError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CmcError::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CmcError::Io {
            path: path.into(),
            source,
        }
    }
}
