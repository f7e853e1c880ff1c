//! Rotational solutions on concentric annuli via the conserved flux.
//!
//! A rotational graph `u(ρ)` over `ρ_in ≤ ρ ≤ ρ_out` solves the CMC equation
//! iff `sinh ρ·φ(ρ) + 2H·cosh ρ = c` for a constant `c`, where
//! `φ = u'/√(1+u'²)`. Admissible constants keep `|φ| ≤ 1`; they form the
//! interval `[c_lo, c_hi]` with `c_hi = sinh ρ_in + 2H cosh ρ_in` and
//! `c_lo = max(g(ρ_in), g(ρ_out))`, `g = 2H cosh - sinh`.

use serde::{Deserialize, Serialize};

use crate::error::{CmcError, Result};
use crate::numerics::{brent, BrentOptions, TanhSinh};
use crate::profiles::check_h;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialProblem {
    #[serde(rename = "H")]
    pub mean_curvature: f64,
    pub rho_in: f64,
    pub rho_out: f64,
    /// Height on the inner circle; the outer circle is at height 0.
    pub h: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialSample {
    pub rho: f64,
    pub u: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution {
    pub problem: RadialProblem,
    /// `c` in `sinh ρ·φ(ρ) = c - 2H·cosh ρ`.
    pub flux_c: f64,
    pub samples: Vec<RadialSample>,
    /// Height reached on the inner circle.
    pub achieved_h: f64,
}

/// Number of samples stored by [`solve_radial`].
pub const RADIAL_SAMPLES: usize = 257;

impl RadialProblem {
    fn validate(&self) -> Result<()> {
        check_h(self.mean_curvature)?;
        if !(self.rho_in > 0.0 && self.rho_out > self.rho_in && self.rho_out.is_finite()) {
            return Err(CmcError::Input(format!(
                "radii must satisfy 0 < rho_in < rho_out < inf, got {} and {}",
                self.rho_in, self.rho_out
            )));
        }
        if !self.h.is_finite() {
            return Err(CmcError::Input(format!("h must be finite, got {}", self.h)));
        }
        Ok(())
    }
}

/// The flux family over an annulus, parametrised by `τ ∈ [0, 1]` with
/// `c = c_lo + τ·(c_hi - c_lo)`.
#[derive(Debug, Clone, Copy)]
struct FluxFamily {
    h: f64,
    rho_in: f64,
    rho_out: f64,
    c_lo: f64,
    width: f64,
    /// `c_lo` is attained by `g` at the outer radius rather than the inner one.
    lo_at_outer: bool,
}

impl FluxFamily {
    fn new(h: f64, rho_in: f64, rho_out: f64) -> Option<FluxFamily> {
        let g = |rho: f64| 2.0 * h * rho.cosh() - rho.sinh();
        let (g_in, g_out) = (g(rho_in), g(rho_out));
        let lo_at_outer = g_out > g_in;
        let c_lo = g_in.max(g_out);
        // c_hi - c_lo without cancellation
        let width = if lo_at_outer {
            // (sinh ρ_in + sinh ρ_out) - 2H (cosh ρ_out - cosh ρ_in)
            let sum = 0.5 * (rho_in + rho_out);
            let half = 0.5 * (rho_out - rho_in);
            2.0 * sum.sinh() * (half.cosh() - 2.0 * h * half.sinh())
        } else {
            2.0 * rho_in.sinh()
        };
        if width < 0.0 {
            return None;
        }
        Some(FluxFamily {
            h,
            rho_in,
            rho_out,
            c_lo,
            width,
            lo_at_outer,
        })
    }

    fn flux(&self, tau: f64) -> f64 {
        self.c_lo + tau * self.width
    }

    /// `u'(ρ) = φ/√(1-φ²)` from the distances `a = ρ - ρ_in`, `b = ρ_out - ρ`.
    fn slope(&self, tau: f64, a: f64, b: f64) -> f64 {
        let h = self.h;
        // sinh ρ·(1 - φ) = [sinh ρ - sinh ρ_in + 2H(cosh ρ - cosh ρ_in)] + (1 - τ)·W
        let mid_in = self.rho_in + 0.5 * a;
        let minus = 2.0 * (0.5 * a).sinh() * (mid_in.cosh() + 2.0 * h * mid_in.sinh()) + (1.0 - tau) * self.width;
        // sinh ρ·(1 + φ) = [g(ρ_e) - g(ρ)] + τ·W where g(ρ_e) = c_lo
        let ge_minus_g = if self.lo_at_outer {
            let mid = self.rho_out - 0.5 * b;
            2.0 * (0.5 * b).sinh() * (2.0 * h * mid.sinh() - mid.cosh())
        } else {
            -2.0 * (0.5 * a).sinh() * (2.0 * h * mid_in.sinh() - mid_in.cosh())
        };
        let plus = ge_minus_g + tau * self.width;
        let numer = 0.5 * (plus - minus);
        numer / (minus.max(0.0) * plus.max(0.0)).sqrt()
    }

    fn phi(&self, tau: f64, rho: f64) -> f64 {
        ((self.flux(tau) - 2.0 * self.h * rho.cosh()) / rho.sinh()).clamp(-1.0, 1.0)
    }

    /// `∫_{ρ0}^{ρ1} u' dρ`.
    fn rise(&self, tau: f64, rho0: f64, rho1: f64) -> f64 {
        if rho0 >= rho1 {
            return 0.0;
        }
        let quad = TanhSinh::default();
        quad.integrate(
            |x, da, db| {
                let a = if rho0 == self.rho_in { da } else { x - self.rho_in };
                let b = if rho1 == self.rho_out { db } else { self.rho_out - x };
                self.slope(tau, a, b)
            },
            rho0,
            rho1,
        )
        .value
    }

    /// `u(ρ_in)` with `u(ρ_out) = 0`; decreasing in `τ`.
    fn inner_height(&self, tau: f64) -> f64 {
        -self.rise(tau, self.rho_in, self.rho_out)
    }
}

/// Range `[h_lo, h_hi]` of inner heights reached by rotational graphs over the
/// annulus, including the limiting graphs with vertical boundary slope.
/// `None` when no flux constant keeps the graph condition, which happens
/// exactly when `ρ_out - ρ_in > T_H`.
pub fn attainable_height_range(h: f64, rho_in: f64, rho_out: f64) -> Result<Option<(f64, f64)>> {
    RadialProblem {
        mean_curvature: h,
        rho_in,
        rho_out,
        h: 0.0,
    }
    .validate()?;
    Ok(FluxFamily::new(h, rho_in, rho_out).map(|f| (f.inner_height(1.0), f.inner_height(0.0))))
}

/// Solve the rotational problem with [`RADIAL_SAMPLES`] samples.
pub fn solve_radial(problem: &RadialProblem) -> Result<RadialSolution> {
    solve_radial_sampled(problem, RADIAL_SAMPLES)
}

pub fn solve_radial_sampled(problem: &RadialProblem, n_samples: usize) -> Result<RadialSolution> {
    problem.validate()?;
    if n_samples < 2 {
        return Err(CmcError::Input("at least two radial samples are needed".into()));
    }
    let p = *problem;
    let Some(family) = FluxFamily::new(p.mean_curvature, p.rho_in, p.rho_out) else {
        return Err(CmcError::NoRotationalGraph {
            h: p.h,
            h_min: f64::NAN,
            h_max: f64::NAN,
        });
    };
    let (h_lo, h_hi) = (family.inner_height(1.0), family.inner_height(0.0));
    if !(h_lo <= p.h && p.h <= h_hi) {
        return Err(CmcError::NoRotationalGraph {
            h: p.h,
            h_min: h_lo,
            h_max: h_hi,
        });
    }
    let tau = if p.h == h_lo {
        1.0
    } else if p.h == h_hi {
        0.0
    } else {
        brent(
            |t| family.inner_height(t) - p.h,
            0.0,
            1.0,
            BrentOptions {
                xtol: 1e-16,
                ftol: 1e-13,
                max_iter: 300,
            },
        )?
    };

    let rhos: Vec<f64> = (0..n_samples)
        .map(|k| match k {
            0 => p.rho_in,
            k if k + 1 == n_samples => p.rho_out,
            k => p.rho_in + (p.rho_out - p.rho_in) * k as f64 / (n_samples - 1) as f64,
        })
        .collect();
    let mut u = vec![0.0; n_samples];
    for k in (0..n_samples - 1).rev() {
        u[k] = u[k + 1] - family.rise(tau, rhos[k], rhos[k + 1]);
    }
    let samples = rhos
        .iter()
        .zip(&u)
        .map(|(&rho, &u)| RadialSample {
            rho,
            u,
            phi: family.phi(tau, rho),
        })
        .collect();
    Ok(RadialSolution {
        problem: p,
        flux_c: family.flux(tau),
        samples,
        achieved_h: u[0],
    })
}

impl RadialSolution {
    /// Height at radius `rho ∈ [ρ_in, ρ_out]`, by quadrature.
    pub fn height_at(&self, rho: f64) -> Result<f64> {
        let p = self.problem;
        if !(rho >= p.rho_in - 1e-12 && rho <= p.rho_out + 1e-12) {
            return Err(CmcError::domain(format!(
                "radius {rho} outside [{}, {}]",
                p.rho_in, p.rho_out
            )));
        }
        let rho = rho.clamp(p.rho_in, p.rho_out);
        let family = FluxFamily::new(p.mean_curvature, p.rho_in, p.rho_out)
            .expect("a solution exists, so the flux family is nonempty");
        let tau = if family.width > 0.0 {
            ((self.flux_c - family.c_lo) / family.width).clamp(0.0, 1.0)
        } else {
            0.0
        };
        Ok(-family.rise(tau, rho, p.rho_out))
    }

    /// `sinh ρ·φ + 2H cosh ρ` at each sample minus `flux_c`.
    pub fn flux_defects(&self) -> Vec<f64> {
        let hc = self.problem.mean_curvature;
        self.samples
            .iter()
            .map(|s| s.rho.sinh() * s.phi + 2.0 * hc * s.rho.cosh() - self.flux_c)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_data_minimal_is_flat() {
        let sol = solve_radial(&RadialProblem {
            mean_curvature: 0.0,
            rho_in: 1.0,
            rho_out: 2.0,
            h: 0.0,
        })
        .unwrap();
        assert!(sol.flux_c.abs() < 1e-12);
        assert!(sol.samples.iter().all(|s| s.u.abs() < 1e-12));
    }

    #[test]
    fn hits_the_requested_height() {
        for &(hc, h) in &[(0.0, 0.3), (0.3, 0.2), (0.6, 0.1), (0.3, 0.0), (1.0, 0.3)] {
            let sol = solve_radial(&RadialProblem {
                mean_curvature: hc,
                rho_in: 1.0,
                rho_out: 2.0,
                h,
            })
            .unwrap();
            assert!((sol.achieved_h - h).abs() < 1e-10, "{hc} {h}: {}", sol.achieved_h);
            assert!(sol.samples.last().unwrap().u == 0.0);
            assert!(sol.flux_defects().iter().all(|d| d.abs() < 1e-10));
            assert!((sol.height_at(1.5).unwrap() - sol.samples[128].u).abs() < 1e-12);
        }
    }

    #[test]
    fn range_is_empty_beyond_cutoff() {
        assert!(attainable_height_range(1.0, 1.0, 2.2).unwrap().is_none());
        // close to the cutoff both boundary slopes are nearly vertical and the
        // level solution is lost
        let (lo, hi) = attainable_height_range(1.0, 1.0, 2.0).unwrap().unwrap();
        assert!(lo > 0.09 && hi < 0.78);
        let (lo, hi) = attainable_height_range(1.0, 1.0, 1.5).unwrap().unwrap();
        assert!(lo < 0.0 && hi > 0.0);
        let (lo, hi) = attainable_height_range(0.0, 1.0, 2.0).unwrap().unwrap();
        assert!(hi < std::f64::consts::FRAC_PI_2 && lo > -std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn out_of_range_height_is_reported() {
        let err = solve_radial(&RadialProblem {
            mean_curvature: 0.0,
            rho_in: 1.0,
            rho_out: 2.0,
            h: 2.0,
        })
        .unwrap_err();
        assert!(matches!(err, CmcError::NoRotationalGraph { .. }));
    }
}
