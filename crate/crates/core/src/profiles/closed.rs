//! Closed-form profiles: caps (`r = 0`) and horonodoids (`r = ∞`).

use std::f64::consts::{FRAC_PI_2, PI};

use super::{check_h, check_s, cutoff, HALF_BRANCH_TOL};
use crate::error::{CmcError, Result};

fn is_half(h: f64) -> bool {
    (h - 0.5).abs() < HALF_BRANCH_TOL
}

/// Height of the H-cap at distance `s` from its top, for `H ≥ 1/2`.
///
/// Nonpositive and decreasing, `0` at `s = 0`. For `H = 1/2` the cap is
/// `2 - 2cosh(s/2)` on all of `[0, ∞)`.
pub fn hcap_eval(h: f64, s: f64) -> Result<f64> {
    check_h(h)?;
    if h < 0.5 - HALF_BRANCH_TOL {
        return Err(CmcError::domain(format!("caps only exist for H >= 1/2, got H = {h}")));
    }
    if is_half(h) {
        let s = check_s(s, f64::INFINITY)?;
        return Ok(-4.0 * (0.25 * s).sinh().powi(2));
    }
    let t = cutoff(h);
    let s = check_s(s, t)?;
    // (4H/k)·[atan(√(1-4H²tanh²(s/2))/k) - atan(1/k)], k = √(4H²-1), written as
    // a difference of small arctangents to survive H close to 1/2.
    let k = ((2.0 * h - 1.0) * (2.0 * h + 1.0)).sqrt();
    let one_minus_g = (0.5 * (t - s)).sinh() / ((0.5 * t).sinh() * (0.5 * s).cosh());
    let one_plus_g = 1.0 + 2.0 * h * (0.5 * s).tanh();
    let root = (one_minus_g * one_plus_g).sqrt();
    let diff = k.atan() - (k / root).atan();
    Ok(4.0 * h / k * diff)
}

/// Height of the H-horonodoid at distance `s` from its horocycle neck.
pub fn horonod_eval(h: f64, s: f64) -> Result<f64> {
    check_h(h)?;
    let t = cutoff(h);
    let s = check_s(s, t)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    // 1 ∓ cos θ with cos θ = (1+2H)e^{-s} - 2H
    let om = -(1.0 + 2.0 * h) * (-s).exp_m1();
    if is_half(h) {
        let op = (1.0 + 2.0 * h) * (-s).exp() + (1.0 - 2.0 * h);
        let theta = 2.0 * om.sqrt().atan2(op.sqrt());
        return Ok(theta - (om / op).sqrt());
    }
    if h < 0.5 {
        let op = (1.0 + 2.0 * h) * (-s).exp() + (1.0 - 2.0 * h);
        let theta = 2.0 * om.sqrt().atan2(op.sqrt());
        let a = ((1.0 - 2.0 * h) * om / ((1.0 + 2.0 * h) * op)).sqrt();
        // artanh(a) = ln(1+a) - ln(1-a²)/2 with 1 - a² = 2e^{-s}/op
        let artanh = if a < 0.5 {
            a.atanh()
        } else {
            a.ln_1p() - 0.5 * (std::f64::consts::LN_2 - s - op.ln())
        };
        let k = ((1.0 - 2.0 * h) * (1.0 + 2.0 * h)).sqrt();
        return Ok(theta - 4.0 * h / k * artanh);
    }
    let op = (2.0 * h - 1.0) * (t - s).exp_m1();
    let theta = 2.0 * om.sqrt().atan2(op.sqrt());
    let k = ((2.0 * h - 1.0) * (2.0 * h + 1.0)).sqrt();
    let arg = ((2.0 * h - 1.0) * om).sqrt().atan2(((2.0 * h + 1.0) * op).sqrt());
    Ok(theta - 4.0 * h / k * arg)
}

/// Maximum height of the horonodoid, attained at `s = ln(1 + 1/(2H))`.
/// For `H = 0` this is the supremum `π/2` of the horocatenoid.
pub fn horonod_max(h: f64) -> Result<f64> {
    check_h(h)?;
    Ok(if h == 0.0 {
        FRAC_PI_2
    } else if is_half(h) {
        FRAC_PI_2 - 1.0
    } else if h < 0.5 {
        let k = ((1.0 - 2.0 * h) * (1.0 + 2.0 * h)).sqrt();
        FRAC_PI_2 - 4.0 * h / k * ((1.0 - 2.0 * h) / (1.0 + 2.0 * h)).sqrt().atanh()
    } else {
        let k = ((2.0 * h - 1.0) * (2.0 * h + 1.0)).sqrt();
        FRAC_PI_2 - 4.0 * h / k * ((2.0 * h - 1.0) / (2.0 * h + 1.0)).sqrt().atan()
    })
}

/// Bracket `[lower, upper]` for the H-nodoid height at `T_H` (any neck
/// radius), `H > 1/2`: the cap and the horonodoid values at `T_H`.
pub fn nodoid_endpoint_bounds(h: f64) -> Result<(f64, f64)> {
    check_h(h)?;
    if h <= 0.5 + HALF_BRANCH_TOL {
        return Err(CmcError::domain(format!("the endpoint bracket needs H > 1/2, got {h}")));
    }
    let k = ((2.0 * h - 1.0) * (2.0 * h + 1.0)).sqrt();
    let lower = -4.0 * h / k * (1.0 / k).atan();
    let upper = PI * (1.0 - 2.0 * h / k);
    Ok((lower, upper))
}
