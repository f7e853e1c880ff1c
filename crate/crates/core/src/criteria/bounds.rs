//! Height bounds, the crossover distance and the supersolution radius.

use log::warn;

use super::{cone_threshold, CriteriaReport, Hypothesis, Theorem};
use crate::error::{CmcError, Result};
use crate::numerics::{brent, BrentOptions};
use crate::profiles::{cat_eval, check_h, h_slab, max_height, ProfileParams};

/// `h_H`: the tallest slab an outward CMC `H` surface inside a horocylinder
/// can cross.
pub fn nonexist_bound_horo(h: f64) -> Result<f64> {
    Ok(h_slab(h)?.h_max)
}

/// `2·max H-nod_{r*}`: the tallest slab an outward CMC `H` surface inside a
/// cylinder over a disk of radius `r*` can cross.
///
/// For `H = 0` the catenoid has no maximum and twice its asymptote is
/// returned instead.
pub fn nonexist_bound_cyl(h: f64, r_star: f64) -> Result<f64> {
    check_h(h)?;
    if !(r_star > 0.0) {
        return Err(CmcError::domain(format!("cylinder radius must be > 0, got {r_star}")));
    }
    if h == 0.0 {
        warn!("H = 0: using twice the catenoid asymptote; the cylinder bound is stated for H-nodoid maxima");
    }
    Ok(2.0 * max_height(ProfileParams::new(h, r_star)?)?)
}

/// Report whether a slab of height `slab` is compatible with the horocylinder
/// bound. A false verdict certifies non-existence.
pub fn report_nonexist_horo(h: f64, slab: f64) -> Result<CriteriaReport> {
    let bound = nonexist_bound_horo(h)?;
    Ok(CriteriaReport::new(
        Theorem::NonExistHoro,
        vec![Hypothesis::at_most("slab_height", slab, bound)],
    ))
}

/// Report whether a slab of height `slab` is compatible with the cylinder
/// bound for radius `r_star`.
pub fn report_nonexist_cyl(h: f64, r_star: f64, slab: f64) -> Result<CriteriaReport> {
    let bound = nonexist_bound_cyl(h, r_star)?;
    let mut hyp = Hypothesis::at_most("slab_height", slab, bound);
    if h == 0.0 {
        hyp = hyp.with_note("H = 0: bound uses the catenoid asymptote");
    }
    Ok(CriteriaReport::new(Theorem::NonExistCyl, vec![hyp]))
}

/// The distance `d₀` at which the catenoid and cone height thresholds
/// coincide; below it the catenoid threshold is larger.
pub fn crossover_distance(h: f64, r: f64) -> Result<f64> {
    check_h(h)?;
    if h == 0.0 {
        return Err(CmcError::domain("the cone threshold vanishes at H = 0; no crossover"));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(CmcError::domain(format!("r must be finite and positive, got {r}")));
    }
    if cone_threshold(h, r, 1.0).is_infinite() {
        return Err(CmcError::domain(format!(
            "coth^2(r) <= 4H^2 for H = {h}, r = {r}: the cone threshold is infinite"
        )));
    }
    let gap = |d: f64| cat_eval(r, d).map(|c| c - cone_threshold(h, r, d));
    let lo = 1e-6;
    let mut hi = 50.0;
    // the cone grows linearly while the catenoid stays below π/2
    while gap(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 1000.0 {
            return Err(CmcError::RootNotBracketed {
                a: lo,
                b: hi,
                fa: gap(lo)?,
                fb: gap(hi)?,
            });
        }
    }
    let mut failure = None;
    let root = brent(
        |d| match gap(d) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        BrentOptions {
            xtol: 1e-13,
            ftol: 1e-14,
            max_iter: 200,
        },
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(root),
    }
}

/// Smallest `L ≥ R` with `2cosh(L/2) ≥ 2cosh((L-d)/2) + h`: the radius of the
/// `1/2`-cap supersolution for `0 ≤ H ≤ 1/2`.
pub fn supersolution_radius(h_curv: f64, d: f64, h: f64, big_r: f64) -> Result<f64> {
    check_h(h_curv)?;
    if h_curv > 0.5 {
        return Err(CmcError::domain(format!(
            "the 1/2-cap supersolution applies to H <= 1/2, got {h_curv}"
        )));
    }
    for (name, v) in [("d", d), ("R", big_r)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CmcError::domain(format!("{name} must be finite and positive, got {v}")));
        }
    }
    if !(h >= 0.0 && h.is_finite()) {
        return Err(CmcError::domain(format!("h must be finite and >= 0, got {h}")));
    }
    // 2cosh(L/2) - 2cosh((L-d)/2) = 4 sinh(d/4) sinh((2L-d)/4), increasing in L
    let excess = |l: f64| 4.0 * (0.25 * d).sinh() * ((2.0 * l - d) / 4.0).sinh() - h;
    if excess(big_r) >= 0.0 {
        return Ok(big_r);
    }
    let mut hi = 2.0 * big_r.max(d);
    while excess(hi) < 0.0 {
        hi *= 2.0;
    }
    brent(
        excess,
        big_r,
        hi,
        BrentOptions {
            xtol: 1e-13,
            ftol: 0.0,
            max_iter: 200,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn slab_bounds() {
        assert!((nonexist_bound_horo(0.5).unwrap() - (PI - 2.0)).abs() < 1e-12);
        assert!(nonexist_bound_cyl(1.0, 1e-4).unwrap() < 1e-2);
        assert!(nonexist_bound_cyl(1.0, 1.0).unwrap() <= nonexist_bound_horo(1.0).unwrap());
    }

    #[test]
    fn crossover_is_a_root() {
        let d0 = crossover_distance(0.1, 1.0).unwrap();
        let cat = cat_eval(1.0, d0).unwrap();
        assert!((cat - cone_threshold(0.1, 1.0, d0)).abs() < 1e-8);
        assert!(cat_eval(1.0, 0.5 * d0).unwrap() > cone_threshold(0.1, 1.0, 0.5 * d0));
        assert!(cat_eval(1.0, 2.0 * d0).unwrap() < cone_threshold(0.1, 1.0, 2.0 * d0));
        assert!(crossover_distance(0.7, 1.0).is_err());
    }

    #[test]
    fn radius_meets_the_inequality() {
        assert_eq!(supersolution_radius(0.3, 1.0, 0.0, 2.0).unwrap(), 2.0);
        let l = supersolution_radius(0.3, 1.0, 1.0, 2.0).unwrap();
        let lhs = 2.0 * (0.5 * l).cosh();
        let rhs = 2.0 * (0.5 * (l - 1.0)).cosh() + 1.0;
        assert!(l == 2.0 || (lhs - rhs).abs() < 1e-9);
        assert!(l > 2.0);
    }
}
