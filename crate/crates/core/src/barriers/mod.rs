//! Sub- and supersolution fields built from rotational profiles.
//!
//! Every barrier is a function of one distance `s`: to an anchor circle
//! `C_a` of radius `r` (catenoid, cone and nodoid barriers, anchored inside
//! the inner curve) or to the centre of a large disk containing the domain
//! (cap barriers, anchored on the outer curve). They certify numerical
//! solutions through the comparison principle.

use serde::{Deserialize, Serialize};

use crate::criteria::supersolution_radius;
use crate::error::{CmcError, Result};
use crate::hyperbolic::{distance_to_circle, hyperbolic_distance, point_in_direction, AnnularDomain, DiskPoint, GeodesicCircle};
use crate::profiles::{cat_eval, hcap_eval, hnod_eval, slope_ratio, t_cutoff, x_peak, ProfileParams};
use crate::solver::FieldSolution;

/// Distances this far outside a barrier's domain are clamped onto it; they
/// come from polyline chords cutting slightly into the anchor circle.
const S_SLACK: f64 = 1e-6;
const RADIAL_SAMPLES: usize = 64;
const ANGULAR_SAMPLES: usize = 32;
/// Tolerance on the sign of the sampled residual.
const SIGN_TOL: f64 = 1e-6;
/// Largest distance sampled for barriers defined on unbounded ranges.
const MAX_EXTENT: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BarrierKind {
    /// `H-cap(s) - H-cap(T_H)`, `s` the distance to the centre, `H > 1/2`.
    CapSuper,
    /// `(1/2)-cap(s) - (1/2)-cap(L)`, a supersolution for `H ≤ 1/2`.
    HalfCapSuper,
    /// `-cat_r(s) + h`.
    CatenoidSub,
    /// `-(h/d)·s + h`.
    ConeSub,
    /// `H-nod_r(s) + h`.
    NodoidSuper,
    /// `min(0, h)`.
    ConstantSub,
}

impl BarrierKind {
    pub fn is_sub(self) -> bool {
        matches!(self, BarrierKind::CatenoidSub | BarrierKind::ConeSub | BarrierKind::ConstantSub)
    }

    /// Whether `s` is measured from the anchor's centre rather than its circle.
    fn measured_from_centre(self) -> bool {
        matches!(self, BarrierKind::CapSuper | BarrierKind::HalfCapSuper)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierSpec {
    pub kind: BarrierKind,
    /// `C_a` for circle-anchored barriers, the containing disk for caps;
    /// `None` only for the constant.
    pub anchor_circle: Option<GeodesicCircle>,
    #[serde(rename = "H")]
    pub mean_curvature: f64,
    pub h: f64,
    pub d: f64,
    /// Cap radius (`L` or `T_H`) for caps, slope `h/d` for cones, unused
    /// otherwise.
    pub extra: f64,
}

impl BarrierSpec {
    pub fn catenoid_sub(anchor: GeodesicCircle, mean_curvature: f64, h: f64, d: f64) -> Result<Self> {
        Self::circle_kind(BarrierKind::CatenoidSub, anchor, mean_curvature, h, d, 0.0)
    }

    pub fn cone_sub(anchor: GeodesicCircle, mean_curvature: f64, h: f64, d: f64) -> Result<Self> {
        Self::circle_kind(BarrierKind::ConeSub, anchor, mean_curvature, h, d, h / d)
    }

    pub fn nodoid_super(anchor: GeodesicCircle, mean_curvature: f64, h: f64, d: f64) -> Result<Self> {
        Self::circle_kind(BarrierKind::NodoidSuper, anchor, mean_curvature, h, d, 0.0)
    }

    /// Cap over the disk of radius `T_H` centred at `centre`, for `H > 1/2`.
    pub fn cap_super(centre: DiskPoint, mean_curvature: f64, h: f64, d: f64) -> Result<Self> {
        let t = t_cutoff(mean_curvature)?;
        let spec = BarrierSpec {
            kind: BarrierKind::CapSuper,
            anchor_circle: Some(GeodesicCircle::new(centre, t).map_err(|_| {
                CmcError::domain(format!("cap barriers need H > 1/2, got {mean_curvature}"))
            })?),
            mean_curvature,
            h,
            d,
            extra: t,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `1/2`-cap over the disk of radius `radius` centred at `centre`.
    pub fn half_cap_super(centre: DiskPoint, radius: f64, mean_curvature: f64, h: f64, d: f64) -> Result<Self> {
        let spec = BarrierSpec {
            kind: BarrierKind::HalfCapSuper,
            anchor_circle: Some(GeodesicCircle::new(centre, radius)?),
            mean_curvature,
            h,
            d,
            extra: radius,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn constant_sub(mean_curvature: f64, h: f64) -> Result<Self> {
        let spec = BarrierSpec {
            kind: BarrierKind::ConstantSub,
            anchor_circle: None,
            mean_curvature,
            h,
            d: 0.0,
            extra: 0.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn circle_kind(kind: BarrierKind, anchor: GeodesicCircle, mean_curvature: f64, h: f64, d: f64, extra: f64) -> Result<Self> {
        let spec = BarrierSpec {
            kind,
            anchor_circle: Some(anchor),
            mean_curvature,
            h,
            d,
            extra,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let hc = self.mean_curvature;
        if !(hc >= 0.0 && hc.is_finite()) {
            return Err(CmcError::domain(format!("H must be finite and >= 0, got {hc}")));
        }
        if !self.h.is_finite() {
            return Err(CmcError::domain(format!("h must be finite, got {}", self.h)));
        }
        if self.kind != BarrierKind::ConstantSub && self.anchor_circle.is_none() {
            return Err(CmcError::domain(format!("{:?} needs an anchor circle", self.kind)));
        }
        match self.kind {
            BarrierKind::ConeSub if !(self.d > 0.0 && self.d.is_finite()) => {
                Err(CmcError::domain(format!("cone barriers need 0 < d < inf, got {}", self.d)))
            }
            BarrierKind::CapSuper if hc <= 0.5 => Err(CmcError::domain(format!("cap barriers need H > 1/2, got {hc}"))),
            BarrierKind::HalfCapSuper if hc > 0.5 => {
                Err(CmcError::domain(format!("half-cap barriers need H <= 1/2, got {hc}")))
            }
            _ => Ok(()),
        }
    }

    fn anchor(&self) -> GeodesicCircle {
        self.anchor_circle.expect("validated spec has an anchor")
    }

    /// The distance the barrier profile is evaluated at.
    pub fn distance(&self, p: DiskPoint) -> Option<f64> {
        let c = self.anchor_circle?;
        Some(if self.kind.measured_from_centre() {
            hyperbolic_distance(p, c.center)
        } else {
            distance_to_circle(p, &c)
        })
    }

    /// Valid range of the profile argument.
    fn s_range(&self) -> (f64, f64) {
        match self.kind {
            BarrierKind::CapSuper => (0.0, self.extra),
            BarrierKind::NodoidSuper => (0.0, t_cutoff(self.mean_curvature).unwrap_or(f64::INFINITY)),
            _ => (0.0, f64::INFINITY),
        }
    }

    fn profile(&self, s: f64) -> Result<f64> {
        let (lo, hi) = self.s_range();
        if !(s >= lo - S_SLACK && s <= hi + S_SLACK) {
            let reason = match self.kind {
                BarrierKind::CapSuper | BarrierKind::HalfCapSuper => "point lies outside the cap's disk",
                BarrierKind::NodoidSuper if s > hi => "distance exceeds the nodoid's range T_H",
                _ => "point lies inside the anchor circle",
            };
            return Err(CmcError::BarrierDomain {
                s,
                reason: reason.into(),
            });
        }
        let s = s.clamp(lo, hi);
        let r = self.anchor().radius;
        let hc = self.mean_curvature;
        Ok(match self.kind {
            BarrierKind::CapSuper => hcap_eval(hc, s)? - hcap_eval(hc, self.extra)?,
            // 2cosh(L/2) - 2cosh(s/2)
            BarrierKind::HalfCapSuper => 4.0 * (0.25 * (self.extra - s)).sinh() * (0.25 * (self.extra + s)).sinh(),
            BarrierKind::CatenoidSub => self.h - cat_eval(r, s)?,
            BarrierKind::ConeSub => self.h - self.extra * s,
            BarrierKind::NodoidSuper => self.h + hnod_eval(ProfileParams::new(hc, r)?, s)?,
            BarrierKind::ConstantSub => unreachable!("handled by barrier_value"),
        })
    }

    /// `Q_H` of the barrier at profile argument `s`, from the one-dimensional
    /// form `φ' + φ·coth(ρ) + 2H` with `ρ` the distance to the anchor centre.
    fn residual_at(&self, s: f64) -> Result<f64> {
        let hc = self.mean_curvature;
        if self.kind == BarrierKind::ConstantSub {
            return Ok(2.0 * hc);
        }
        let (lo, hi) = self.s_range();
        let s = s.clamp(lo, hi);
        let r = self.anchor().radius;
        let rho = if self.kind.measured_from_centre() { s } else { r + s };
        let coth = 1.0 / rho.tanh();
        if self.kind == BarrierKind::ConeSub {
            let phi = -self.extra / self.extra.hypot(1.0);
            return Ok(phi * coth + 2.0 * hc);
        }
        // (sign, profile) with barrier slope ratio = sign · profile slope ratio
        let (sign, params, end) = match self.kind {
            BarrierKind::CapSuper => (1.0, ProfileParams::new(hc, 0.0)?, self.extra),
            BarrierKind::HalfCapSuper => (1.0, ProfileParams::new(0.5, 0.0)?, f64::INFINITY),
            BarrierKind::CatenoidSub => (-1.0, ProfileParams::new(0.0, r)?, f64::INFINITY),
            BarrierKind::NodoidSuper => (1.0, ProfileParams::new(hc, r)?, hi),
            _ => unreachable!(),
        };
        let step = 1e-5 * (s / 3.0).min((end - s) / 3.0).min(1.0);
        if !(step > 0.0) {
            return Err(CmcError::BarrierDomain {
                s,
                reason: "residual needs a point strictly inside the profile range".into(),
            });
        }
        let phi = |x: f64| slope_ratio(params, x).map(|v| sign * v);
        let dphi = (phi(s + step)? - phi(s - step)?) / (2.0 * step);
        Ok(dphi + phi(s)? * coth + 2.0 * hc)
    }
}

/// The barrier's height at `p`.
pub fn barrier_value(spec: &BarrierSpec, p: DiskPoint) -> Result<f64> {
    spec.validate()?;
    if spec.kind == BarrierKind::ConstantSub {
        return Ok(spec.h.min(0.0));
    }
    let s = spec.distance(p).expect("validated spec has an anchor");
    spec.profile(s)
}

/// Outcome of sampling `Q_H` of a barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignCheck {
    pub kind: BarrierKind,
    /// `Q_H ≥ -tol` at every sample.
    pub is_subsolution: bool,
    /// `Q_H ≤ tol` at every sample.
    pub is_supersolution: bool,
    /// The flag matching the barrier's role.
    pub holds: bool,
    pub residual_min: f64,
    pub residual_max: f64,
    /// For cones, `2H·tanh r - h/√(d²+h²)`; `None` for other kinds.
    pub closed_margin: Option<f64>,
}

/// Sample `Q_H` of the barrier on a polar grid around its anchor and compare
/// its sign with the barrier's role.
pub fn barrier_sign_check(spec: &BarrierSpec) -> Result<SignCheck> {
    spec.validate()?;
    let hc = spec.mean_curvature;
    let mut values = Vec::with_capacity(RADIAL_SAMPLES * ANGULAR_SAMPLES);
    if let Some(anchor) = spec.anchor_circle {
        let (lo, hi) = spec.s_range();
        let mut extent = match spec.kind {
            BarrierKind::CapSuper | BarrierKind::HalfCapSuper => spec.extra,
            BarrierKind::NodoidSuper => hi.min(2.0 * x_peak(hc, anchor.radius)?),
            _ => hi,
        };
        extent = extent.min(MAX_EXTENT.max(2.0 * spec.d));
        let r0 = if spec.kind.measured_from_centre() { 0.0 } else { anchor.radius };
        for i in 0..RADIAL_SAMPLES {
            let s_nominal = lo + (extent - lo) * (i as f64 + 0.5) / RADIAL_SAMPLES as f64;
            for j in 0..ANGULAR_SAMPLES {
                let theta = std::f64::consts::TAU * j as f64 / ANGULAR_SAMPLES as f64;
                let q = point_in_direction(anchor.center, theta.cos(), theta.sin(), r0 + s_nominal)?;
                let s = spec.distance(q).expect("anchored");
                values.push(spec.residual_at(s)?);
            }
        }
    } else {
        values.push(2.0 * hc);
    }
    let residual_min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let residual_max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let is_subsolution = residual_min >= -SIGN_TOL;
    let is_supersolution = residual_max <= SIGN_TOL;
    let closed_margin = (spec.kind == BarrierKind::ConeSub).then(|| {
        let r = spec.anchor().radius;
        2.0 * hc * r.tanh() - spec.h / spec.d.hypot(spec.h)
    });
    Ok(SignCheck {
        kind: spec.kind,
        is_subsolution,
        is_supersolution,
        holds: if spec.kind.is_sub() { is_subsolution } else { is_supersolution },
        residual_min,
        residual_max,
        closed_margin,
    })
}

/// Result of comparing a discrete solution with a pair of barriers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    /// `min (u - sub)` over grid nodes.
    pub sub_margin: f64,
    /// `min (super - u)` over grid nodes.
    pub super_margin: f64,
    pub worst_sub_node: usize,
    pub worst_super_node: usize,
    pub tolerance: f64,
    pub holds: bool,
}

/// Check `sub ≤ u ≤ super` at every node of the field. The tolerance is
/// `1e-6` times the height scale `max(1, max |u|)`.
pub fn comparison_check(field: &FieldSolution, sub: &BarrierSpec, sup: &BarrierSpec) -> Result<ComparisonReport> {
    if !sub.kind.is_sub() || sup.kind.is_sub() {
        return Err(CmcError::Input(format!(
            "expected a subsolution and a supersolution, got {:?} and {:?}",
            sub.kind, sup.kind
        )));
    }
    let mut report = ComparisonReport {
        sub_margin: f64::INFINITY,
        super_margin: f64::INFINITY,
        worst_sub_node: 0,
        worst_super_node: 0,
        tolerance: 1e-6 * field.u.iter().fold(1.0f64, |m, v| m.max(v.abs())),
        holds: false,
    };
    for (k, node) in field.grid.nodes().iter().enumerate() {
        let u = field.u[k];
        let below = u - barrier_value(sub, node.point)?;
        let above = barrier_value(sup, node.point)? - u;
        if below < report.sub_margin {
            report.sub_margin = below;
            report.worst_sub_node = k;
        }
        if above < report.super_margin {
            report.super_margin = above;
            report.worst_super_node = k;
        }
    }
    report.holds = report.sub_margin >= -report.tolerance && report.super_margin >= -report.tolerance;
    Ok(report)
}

/// The circle of radius `r` inside the inner curve, tangent to it at vertex `k`.
pub fn inner_anchor(domain: &AnnularDomain, k: usize) -> Result<GeodesicCircle> {
    check_vertex(domain.inner.len(), k)?;
    AnnularDomain::inward_tangent_circle(&domain.inner, k, domain.interior_radius)
}

/// The circle of radius `radius ≥ R` containing the outer curve, tangent to it
/// at vertex `k`.
pub fn outer_anchor(domain: &AnnularDomain, k: usize, radius: f64) -> Result<GeodesicCircle> {
    check_vertex(domain.outer.len(), k)?;
    if radius < domain.exterior_radius {
        return Err(CmcError::domain(format!(
            "containing circles need radius >= R = {}, got {radius}",
            domain.exterior_radius
        )));
    }
    AnnularDomain::inward_tangent_circle(&domain.outer, k, radius)
}

fn check_vertex(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(CmcError::Input(format!("vertex {k} out of range for a curve with {n} vertices")));
    }
    Ok(())
}

/// Lower barrier at vertex `k` of the inner curve for `h ≥ 0`: the lowered
/// catenoid while `h ≤ cat_r(d)`, the truncated cone beyond. For `h < 0` the
/// constant `h`.
pub fn inner_lower_barrier(domain: &AnnularDomain, mean_curvature: f64, h: f64, k: usize) -> Result<BarrierSpec> {
    if h < 0.0 {
        return BarrierSpec::constant_sub(mean_curvature, h);
    }
    let anchor = inner_anchor(domain, k)?;
    let d = domain.separation;
    if h <= cat_eval(anchor.radius, d)? {
        BarrierSpec::catenoid_sub(anchor, mean_curvature, h, d)
    } else {
        BarrierSpec::cone_sub(anchor, mean_curvature, h, d)
    }
}

/// Upper barrier at vertex `k` of the inner curve: the H-nodoid with neck `C_a`.
pub fn inner_upper_barrier(domain: &AnnularDomain, mean_curvature: f64, h: f64, k: usize) -> Result<BarrierSpec> {
    BarrierSpec::nodoid_super(inner_anchor(domain, k)?, mean_curvature, h, domain.separation)
}

/// Upper barrier at vertex `k` of the outer curve: the cap over a disk
/// containing the domain, of radius `T_H` for `H > 1/2` and of the radius
/// from [`supersolution_radius`] otherwise.
pub fn outer_upper_barrier(domain: &AnnularDomain, mean_curvature: f64, h: f64, k: usize) -> Result<BarrierSpec> {
    let d = domain.separation;
    if mean_curvature > 0.5 {
        let t = t_cutoff(mean_curvature)?;
        let anchor = outer_anchor(domain, k, t)?;
        BarrierSpec::cap_super(anchor.center, mean_curvature, h, d)
    } else {
        let l = supersolution_radius(mean_curvature, d, h.max(0.0), domain.exterior_radius)?;
        let anchor = outer_anchor(domain, k, l)?;
        BarrierSpec::half_cap_super(anchor.center, l, mean_curvature, h, d)
    }
}
