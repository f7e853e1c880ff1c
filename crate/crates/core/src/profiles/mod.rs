//! Rotational CMC profiles in H²×R.
//!
//! A profile is the height `u(s)` of a rotational graph as a function of the
//! distance `s` from its neck, a geodesic circle of radius `r` (or a horocycle
//! when `r = ∞`). Writing `φ = u'/√(1+u'²)`, the CMC equation becomes
//! `φ' + φ·coth(r+s) + 2H = 0`, whose solutions with a vertical neck conserve
//! the flux `sinh(r+s)·φ + 2H·cosh(r+s) = sinh r + 2H·cosh r`.

mod closed;
mod nodoid;
mod table;

use serde::{Deserialize, Serialize};

use crate::error::{CmcError, Result};

pub use closed::{hcap_eval, horonod_eval, horonod_max, nodoid_endpoint_bounds};
pub use nodoid::{
    cat_asymptote, cat_eval, hcap_quadrature, hnod_cumulative, hnod_eval, horonod_quadrature, max_height,
    profile_height, rho_zero,
};
pub use table::{profile_table, ProfileRow};

/// Within this distance of `H = 1/2` the `H = 1/2` closed forms are used.
pub const HALF_BRANCH_TOL: f64 = 1e-8;

/// One member of the two-parameter profile family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileParams {
    #[serde(rename = "H")]
    pub mean_curvature: f64,
    /// Neck radius. `0` is the cap (only for `H ≥ 1/2`), `f64::INFINITY` the
    /// horonodoid.
    #[serde(rename = "r", with = "crate::serde_float")]
    pub neck_radius: f64,
}

impl ProfileParams {
    pub fn new(mean_curvature: f64, neck_radius: f64) -> Result<Self> {
        check_h(mean_curvature)?;
        if neck_radius.is_nan() || neck_radius < 0.0 {
            return Err(CmcError::domain(format!("neck radius must be >= 0, got {neck_radius}")));
        }
        if neck_radius == 0.0 && mean_curvature < 0.5 - HALF_BRANCH_TOL {
            return Err(CmcError::domain(format!(
                "caps (r = 0) only exist for H >= 1/2, got H = {mean_curvature}"
            )));
        }
        Ok(ProfileParams {
            mean_curvature,
            neck_radius,
        })
    }

    pub fn horo(mean_curvature: f64) -> Result<Self> {
        ProfileParams::new(mean_curvature, f64::INFINITY)
    }

    pub fn is_horo(&self) -> bool {
        self.neck_radius.is_infinite()
    }

    /// Right end of the profile domain, `T_H`.
    pub fn domain_end(&self) -> f64 {
        cutoff(self.mean_curvature)
    }
}

pub(crate) fn check_h(h: f64) -> Result<()> {
    if !(h >= 0.0 && h.is_finite()) {
        return Err(CmcError::domain(format!(
            "mean curvature must be finite and >= 0, got {h}"
        )));
    }
    Ok(())
}

fn cutoff(h: f64) -> f64 {
    if h <= 0.5 {
        f64::INFINITY
    } else {
        // ln((2H+1)/(2H-1)) without cancellation as H -> ∞
        (2.0 / (2.0 * h - 1.0)).ln_1p()
    }
}

/// `T_H`: where every H-nodoid profile (of any neck radius) turns vertical.
/// Infinite for `H ≤ 1/2`.
pub fn t_cutoff(h: f64) -> Result<f64> {
    check_h(h)?;
    Ok(cutoff(h))
}

/// Accepts `s` in `[0, end]` allowing for round-off at the right end.
pub(crate) fn check_s(s: f64, end: f64) -> Result<f64> {
    if s.is_nan() || s < -1e-14 {
        return Err(CmcError::domain(format!("profile argument must be >= 0, got {s}")));
    }
    let s = s.max(0.0);
    if s > end {
        if s <= end * (1.0 + 1e-13) {
            return Ok(end);
        }
        return Err(CmcError::domain(format!(
            "profile argument {s} exceeds the profile domain end {end}"
        )));
    }
    Ok(s)
}

/// Quantities of the slope ratio `φ` at distance `t` from the neck, computed
/// without cancellation. `delta` is `T_H - t` (ignored when `T_H` is infinite).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Slope {
    pub phi: f64,
    /// `1 - φ`
    pub one_minus: f64,
    /// `1 + φ`
    pub one_plus: f64,
}

pub(crate) fn slope_parts(h: f64, r: f64, t: f64, delta: f64) -> Slope {
    if r.is_infinite() {
        let e = (-t).exp();
        let one_minus = -(1.0 + 2.0 * h) * (-t).exp_m1();
        let one_plus = if h > 0.5 {
            (2.0 * h - 1.0) * delta.exp_m1()
        } else {
            (1.0 + 2.0 * h) * e + (1.0 - 2.0 * h)
        };
        return Slope {
            phi: (1.0 + 2.0 * h) * e - 2.0 * h,
            one_minus,
            one_plus,
        };
    }
    if t == 0.0 {
        // vertical neck, or the horizontal top of a cap
        return if r > 0.0 {
            Slope { phi: 1.0, one_minus: 0.0, one_plus: 2.0 }
        } else {
            Slope { phi: 0.0, one_minus: 1.0, one_plus: 1.0 }
        };
    }
    // Every hyperbolic function of r + x is scaled by 2e^{-r} so that large
    // radii do not overflow.
    let q = (-2.0 * r).exp();
    let one_minus_q = -(-2.0 * r).exp_m1();
    let a = 0.5 * t;
    let (ea, ema) = (a.exp(), (-a).exp());
    // e^x - q·e^{-x} = e^{-x}·(expm1(2x) + 1 - q), exact for small x and r
    let sh_a = ema * ((2.0 * a).exp_m1() + one_minus_q);
    let ch_a = ea + q * ema;
    let sh_t = ema * ema * ((2.0 * t).exp_m1() + one_minus_q);
    let sinh_a = a.sinh();
    let numer = one_minus_q - 4.0 * h * sh_a * sinh_a;
    let minus = 2.0 * sinh_a * (ch_a + 2.0 * h * sh_a);
    let k = if h > 0.5 {
        (0.5 * delta).sinh() / (0.5 * cutoff(h)).sinh()
    } else {
        0.5 * ((1.0 - 2.0 * h) * ea + (1.0 + 2.0 * h) * ema)
    };
    let plus = 2.0 * sh_a * k;
    Slope {
        phi: numer / sh_t,
        one_minus: minus / sh_t,
        one_plus: plus / sh_t,
    }
}

/// The profile integrand `φ/√(1-φ²)` at distance `t` from the neck.
pub(crate) fn slope_integrand(h: f64, r: f64, t: f64, delta: f64) -> f64 {
    let p = slope_parts(h, r, t, delta);
    p.phi / (p.one_minus * p.one_plus).sqrt()
}

/// `φ(s) = u'/√(1+u'²)` of the profile.
pub fn slope_ratio(params: ProfileParams, s: f64) -> Result<f64> {
    let h = params.mean_curvature;
    let end = params.domain_end();
    let s = check_s(s, end)?;
    Ok(slope_parts(h, params.neck_radius, s, end - s).phi)
}

/// The conserved quantity of the profile ODE at `s`: `sinh(r+s)·φ + 2H·cosh(r+s)`
/// for finite necks and `e^s·(φ + 2H)` for the horonodoid.
pub fn flux(params: ProfileParams, s: f64) -> Result<f64> {
    let phi = slope_ratio(params, s)?;
    let h = params.mean_curvature;
    let r = params.neck_radius;
    Ok(if r.is_infinite() {
        s.exp() * (phi + 2.0 * h)
    } else {
        (r + s).sinh() * phi + 2.0 * h * (r + s).cosh()
    })
}

/// Flux fixed by the neck condition `φ(0) = 1` (or `φ(0) = 0` for caps).
pub fn flux_constant(params: ProfileParams) -> f64 {
    let h = params.mean_curvature;
    let r = params.neck_radius;
    if r.is_infinite() {
        1.0 + 2.0 * h
    } else {
        r.sinh() + 2.0 * h * r.cosh()
    }
}

/// Centered-difference residual of `φ' + φ·coth(r+s) + 2H` (with `coth → 1`
/// for horocycle necks). Should be `O(step²)`.
pub fn ode_residual(params: ProfileParams, s: f64, step: f64) -> Result<f64> {
    if !(step > 0.0) {
        return Err(CmcError::domain(format!("step must be positive, got {step}")));
    }
    let end = params.domain_end();
    if s - 2.0 * step < 0.0 || s + 2.0 * step > end {
        return Err(CmcError::domain(format!(
            "s = {s} needs a margin of 2*step = {} inside [0, {end}]",
            2.0 * step
        )));
    }
    let d = (slope_ratio(params, s + step)? - slope_ratio(params, s - step)?) / (2.0 * step);
    let phi = slope_ratio(params, s)?;
    let lap = if params.is_horo() {
        1.0
    } else {
        1.0 / (params.neck_radius + s).tanh()
    };
    Ok(d + phi * lap + 2.0 * params.mean_curvature)
}

/// `x_H(r)`: distance from the neck to the top of the H-nodoid, where `φ = 0`.
pub fn x_peak(h: f64, r: f64) -> Result<f64> {
    check_h(h)?;
    if r.is_nan() || r <= 0.0 {
        return Err(CmcError::domain(format!("neck radius must be > 0, got {r}")));
    }
    if h == 0.0 {
        return Ok(f64::INFINITY);
    }
    if r > 20.0 {
        // arccosh(y) - r = ln((y + √(y²-1))·e^{-r})
        let q = (-2.0 * r).exp();
        let y = 0.5 * (1.0 + q) + (1.0 - q) / (4.0 * h);
        return Ok((y + (y * y - q).sqrt()).ln());
    }
    // arccosh(1 + ε) with ε = cosh r - 1 + sinh r / (2H)
    let eps = 2.0 * (0.5 * r).sinh().powi(2) + r.sinh() / (2.0 * h);
    Ok((eps + (eps * (2.0 + eps)).sqrt()).ln_1p() - r)
}

/// Critical slab height: no outward CMC `H` surface inside a
/// horocylinder spans a taller slab.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlabBound {
    #[serde(rename = "H")]
    pub mean_curvature: f64,
    pub h_max: f64,
}

/// `h_H`, twice the maximum height of the horonodoid.
pub fn h_slab(h: f64) -> Result<SlabBound> {
    check_h(h)?;
    Ok(SlabBound {
        mean_curvature: h,
        h_max: 2.0 * horonod_max(h)?,
    })
}
