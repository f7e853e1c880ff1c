use serde::Serialize;

use super::{flux, flux_constant, hcap_eval, hnod_cumulative, slope_ratio, ProfileParams};
use crate::error::{CmcError, Result};

/// One row of a profile table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub s: f64,
    pub height: f64,
    pub phi: f64,
    /// Deviation of the conserved flux from its neck value.
    pub flux_residual: f64,
}

/// `n ≥ 2` equally spaced samples of the profile on `[0, s_max]`, where
/// `s_max` defaults to the profile domain end and must be finite.
pub fn profile_table(params: ProfileParams, n: usize, s_max: Option<f64>) -> Result<Vec<ProfileRow>> {
    if n < 2 {
        return Err(CmcError::Input(format!("a profile table needs at least 2 rows, got {n}")));
    }
    let end = params.domain_end();
    let s_max = s_max.unwrap_or(end).min(end);
    if !s_max.is_finite() || s_max <= 0.0 {
        return Err(CmcError::Input(format!(
            "profile table needs a finite positive upper limit, got {s_max}"
        )));
    }
    let s: Vec<f64> = (0..n)
        .map(|k| if k + 1 == n { s_max } else { s_max * k as f64 / (n - 1) as f64 })
        .collect();
    let heights = if params.neck_radius == 0.0 {
        s.iter().map(|&x| hcap_eval(params.mean_curvature, x)).collect::<Result<Vec<_>>>()?
    } else {
        hnod_cumulative(params, &s)?
    };
    let c = flux_constant(params);
    s.iter()
        .zip(heights)
        .map(|(&s, height)| {
            Ok(ProfileRow {
                s,
                height,
                phi: slope_ratio(params, s)?,
                flux_residual: flux(params, s)? - c,
            })
        })
        .collect()
}
