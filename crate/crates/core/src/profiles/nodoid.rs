//! Quadrature-based profiles: H-nodoids with finite necks and catenoids.

use log::warn;

use super::closed::{hcap_eval, horonod_eval, horonod_max};
use super::{check_h, check_s, cutoff, slope_integrand, x_peak, ProfileParams};
use crate::error::{CmcError, Result};
use crate::numerics::{brent, BrentOptions, TanhSinh};

/// Longest panel handed to a single tanh-sinh run.
const MAX_PANEL: f64 = 4.0;

/// Largest distance from the neck at which profiles can be evaluated before
/// the hyperbolic functions overflow.
const S_LIMIT: f64 = 1400.0;

/// `∫_a^b φ/√(1-φ²)` for a finite neck, split into panels that each carry at
/// most one singular endpoint (`0` or `T_H`).
fn integrate(h: f64, r: f64, a: f64, b: f64) -> f64 {
    if a >= b {
        return 0.0;
    }
    let end = cutoff(h);
    let mut cuts = vec![a];
    if let Ok(xp) = x_peak(h, r) {
        if xp > a && xp < b {
            cuts.push(xp);
        }
    }
    cuts.push(b);
    let quad = TanhSinh::default();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let pieces = ((hi - lo) / MAX_PANEL).ceil().max(1.0) as usize;
        for k in 0..pieces {
            let p0 = if k == 0 { lo } else { lo + (hi - lo) * k as f64 / pieces as f64 };
            let p1 = if k + 1 == pieces { hi } else { lo + (hi - lo) * (k + 1) as f64 / pieces as f64 };
            let q = quad.integrate(
                |x, da, db| {
                    let t = if p0 == 0.0 { da } else { x };
                    let delta = if p1 == end { db } else { end - x };
                    slope_integrand(h, r, t, delta)
                },
                p0,
                p1,
            );
            if !q.converged {
                warn!("profile quadrature on [{p0}, {p1}] (H = {h}, r = {r}) stopped at error {:e}", q.error);
            }
            total += q.value;
        }
    }
    total
}

fn finite_neck(params: ProfileParams) -> Result<(f64, f64)> {
    let r = params.neck_radius;
    if !(r > 0.0) {
        return Err(CmcError::domain(format!(
            "H-nodoid quadrature needs a neck radius > 0, got {r} (use hcap_eval for caps)"
        )));
    }
    Ok((params.mean_curvature, r))
}

fn check_limit(s: f64) -> Result<()> {
    if s > S_LIMIT {
        return Err(CmcError::domain(format!(
            "profile argument {s} is beyond the representable range {S_LIMIT}"
        )));
    }
    Ok(())
}

/// H-nodoid height at distance `s ∈ [0, T_H]` from its neck.
///
/// Horocycle necks (`r = ∞`) are evaluated in closed form.
pub fn hnod_eval(params: ProfileParams, s: f64) -> Result<f64> {
    check_h(params.mean_curvature)?;
    if params.is_horo() {
        return horonod_eval(params.mean_curvature, s);
    }
    let (h, r) = finite_neck(params)?;
    let s = check_s(s, cutoff(h))?;
    check_limit(s)?;
    Ok(integrate(h, r, 0.0, s))
}

/// Heights at a nondecreasing sequence of arguments, integrating only between
/// consecutive samples.
pub fn hnod_cumulative(params: ProfileParams, s_values: &[f64]) -> Result<Vec<f64>> {
    check_h(params.mean_curvature)?;
    let end = cutoff(params.mean_curvature);
    let mut checked = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let s = check_s(s, end)?;
        if let Some(&prev) = checked.last() {
            if s < prev {
                return Err(CmcError::Input("profile samples must be nondecreasing".into()));
            }
        }
        checked.push(s);
    }
    if params.is_horo() {
        return checked.iter().map(|&s| horonod_eval(params.mean_curvature, s)).collect();
    }
    let (h, r) = finite_neck(params)?;
    if let Some(&last) = checked.last() {
        check_limit(last)?;
    }
    let mut out = Vec::with_capacity(checked.len());
    let (mut at, mut acc) = (0.0, 0.0);
    for s in checked {
        acc += integrate(h, r, at, s);
        at = s;
        out.push(acc);
    }
    Ok(out)
}

/// Height of any family member: caps (`r = 0`), finite necks and horocycle
/// necks.
pub fn profile_height(params: ProfileParams, s: f64) -> Result<f64> {
    if params.neck_radius == 0.0 {
        hcap_eval(params.mean_curvature, s)
    } else {
        hnod_eval(params, s)
    }
}

/// The catenoid `cat_r`, the minimal (`H = 0`) member.
pub fn cat_eval(r: f64, s: f64) -> Result<f64> {
    hnod_eval(ProfileParams::new(0.0, r)?, s)
}

/// `lim_{s→∞} cat_r(s)`; `π/2` for `r = ∞`.
pub fn cat_asymptote(r: f64) -> Result<f64> {
    let params = ProfileParams::new(0.0, r)?;
    if params.is_horo() {
        return horonod_max(0.0);
    }
    let (_, r) = finite_neck(params)?;
    const SPLIT: f64 = 4.0;
    let head = integrate(0.0, r, 0.0, SPLIT);
    // ∫_SPLIT^∞ f(t) dt with v = e^{-t}; f decays like e^{-t}, so f(-ln v)/v is
    // bounded as v → 0.
    let tail = TanhSinh::default().integrate(
        |v, _, _| {
            let t = -v.ln();
            if t > S_LIMIT {
                return 0.0;
            }
            slope_integrand(0.0, r, t, f64::INFINITY) / v
        },
        0.0,
        (-SPLIT).exp(),
    );
    Ok(head + tail.value)
}

/// `ρ_H(r)`, the positive zero of the H-nodoid profile, for `H > 0`, `r > 0`.
pub fn rho_zero(h: f64, r: f64) -> Result<f64> {
    check_h(h)?;
    if h == 0.0 {
        return Err(CmcError::domain("catenoids have no positive zero (H must be > 0)"));
    }
    let params = ProfileParams::new(h, r)?;
    let (h, r) = finite_neck(params)?;
    if params.is_horo() {
        return Err(CmcError::domain("rho_zero needs a finite neck radius"));
    }
    let end = cutoff(h);
    let xp = x_peak(h, r)?;
    let top = integrate(h, r, 0.0, xp);
    let value = |s: f64| top + integrate(h, r, xp, s);
    let hi = if end.is_finite() {
        end
    } else {
        let mut hi = 2.0 * xp + 1.0;
        while value(hi) >= 0.0 {
            hi *= 2.0;
            if hi > S_LIMIT {
                return Err(CmcError::RootNotBracketed {
                    a: xp,
                    b: hi,
                    fa: top,
                    fb: value(S_LIMIT),
                });
            }
        }
        hi
    };
    brent(
        value,
        xp,
        hi,
        BrentOptions {
            xtol: 1e-12,
            ftol: 1e-12,
            max_iter: 200,
        },
    )
}

/// Maximum height of the profile.
///
/// Finite necks with `H > 0` peak at `x_H(r)`; catenoids increase to a finite
/// asymptote, which is returned; horocycle necks use the closed form; caps
/// peak at their top, height `0`.
pub fn max_height(params: ProfileParams) -> Result<f64> {
    let h = params.mean_curvature;
    check_h(h)?;
    let r = params.neck_radius;
    if params.is_horo() {
        return horonod_max(h);
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    if h == 0.0 {
        return cat_asymptote(r);
    }
    let xp = x_peak(h, r)?;
    Ok(integrate(h, r, 0.0, xp))
}

/// The cap profile by direct singular quadrature instead of its closed form.
pub fn hcap_quadrature(h: f64, s: f64) -> Result<f64> {
    hcap_eval(h, 0.0)?;
    let end = cutoff(h);
    let s = check_s(s, end)?;
    check_limit(s)?;
    let q = TanhSinh::default().integrate(
        |x, _, db| {
            let delta = if s == end { db } else { end - x };
            slope_integrand(h, 0.0, x, delta)
        },
        0.0,
        s,
    );
    Ok(q.value)
}

/// The horonodoid profile by direct quadrature of its integrand.
pub fn horonod_quadrature(h: f64, s: f64) -> Result<f64> {
    check_h(h)?;
    let end = cutoff(h);
    let s = check_s(s, end)?;
    check_limit(s)?;
    let xp = (1.0 + 1.0 / (2.0 * h)).ln();
    let mut cuts = vec![0.0];
    if xp > 0.0 && xp < s {
        cuts.push(xp);
    }
    cuts.push(s);
    let quad = TanhSinh::default();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (p0, p1) = (w[0], w[1]);
        total += quad
            .integrate(
                |x, da, db| {
                    let t = if p0 == 0.0 { da } else { x };
                    let delta = if p1 == end { db } else { end - x };
                    slope_integrand(h, f64::INFINITY, t, delta)
                },
                p0,
                p1,
            )
            .value;
    }
    Ok(total)
}
