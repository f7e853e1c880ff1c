//! Annular domains bounded by an inner curve (alpha) and an outer curve (beta).

use serde::{Deserialize, Serialize};

use super::curve::check_nested;
use super::{curve_metrics, hyperbolic_distance, point_in_direction, CurvePolyline, DiskPoint, GeodesicCircle};
use crate::error::{CmcError, Result};

/// Vertices per circle produced by [`make_circle_domain`].
pub const CIRCLE_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnularDomain {
    /// beta
    pub outer: CurvePolyline,
    /// alpha
    pub inner: CurvePolyline,
    /// Interior circle condition radius `r` of the inner curve.
    pub interior_radius: f64,
    /// Exterior circle condition radius `R` of the outer curve.
    pub exterior_radius: f64,
    /// Distance `d` between the curves.
    pub separation: f64,
    /// `diam beta`.
    pub outer_diameter: f64,
    /// The exact circles when both curves sample geodesic circles
    /// (inner, outer).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circles: Option<(GeodesicCircle, GeodesicCircle)>,
}

/// Concentric or off-center pair of geodesic circles, sampled with
/// [`CIRCLE_SAMPLES`] vertices each.
pub fn make_circle_domain(center_in: DiskPoint, rho_in: f64, center_out: DiskPoint, rho_out: f64) -> Result<AnnularDomain> {
    make_circle_domain_sampled(center_in, rho_in, center_out, rho_out, CIRCLE_SAMPLES)
}

pub fn make_circle_domain_sampled(
    center_in: DiskPoint,
    rho_in: f64,
    center_out: DiskPoint,
    rho_out: f64,
    samples: usize,
) -> Result<AnnularDomain> {
    let inner = GeodesicCircle::new(center_in, rho_in)?;
    let outer = GeodesicCircle::new(center_out, rho_out)?;
    let offset = hyperbolic_distance(center_in, center_out);
    if offset + rho_in >= rho_out {
        return Err(CmcError::NotNested(format!(
            "inner circle (radius {rho_in}, offset {offset}) is not strictly inside the outer circle (radius {rho_out})"
        )));
    }
    Ok(AnnularDomain {
        outer: outer.sample(samples)?,
        inner: inner.sample(samples)?,
        interior_radius: rho_in,
        exterior_radius: rho_out,
        separation: rho_out - rho_in - offset,
        outer_diameter: 2.0 * rho_out,
        circles: Some((inner, outer)),
    })
}

impl AnnularDomain {
    /// Domain from general curves. `r`/`R` are the circle-condition radii; when
    /// absent they are computed for curves that sample geodesic circles and
    /// rejected otherwise. Returns the domain and any circle-condition warnings.
    pub fn from_curves(
        outer: CurvePolyline,
        inner: CurvePolyline,
        interior_radius: Option<f64>,
        exterior_radius: Option<f64>,
    ) -> Result<(AnnularDomain, Vec<String>)> {
        check_nested(&outer, &inner)?;
        let circles = match (fit_circle(&inner), fit_circle(&outer)) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        };
        let (r, big_r, d, diam) = match circles {
            Some((a, b)) => {
                let offset = hyperbolic_distance(a.center, b.center);
                (
                    interior_radius.unwrap_or(a.radius),
                    exterior_radius.unwrap_or(b.radius),
                    b.radius - a.radius - offset,
                    2.0 * b.radius,
                )
            }
            None => {
                let (Some(r), Some(big_r)) = (interior_radius, exterior_radius) else {
                    return Err(CmcError::Input(
                        "circle-condition radii r and R are required for curves that are not geodesic circles".into(),
                    ));
                };
                let m = curve_metrics(&outer, &inner)?;
                (r, big_r, m.separation, m.outer_diameter)
            }
        };
        for (name, v) in [("r", r), ("R", big_r)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CmcError::Input(format!("{name} must be positive, got {v}")));
            }
        }
        let domain = AnnularDomain {
            outer,
            inner,
            interior_radius: r,
            exterior_radius: big_r,
            separation: d,
            outer_diameter: diam,
            circles,
        };
        let warnings = domain.check_circle_conditions();
        Ok((domain, warnings))
    }

    /// Whether `2(r + d) < diam beta`.
    pub fn wide_outer_curve(&self) -> bool {
        2.0 * (self.interior_radius + self.separation) < self.outer_diameter
    }

    /// Spot check of the interior (alpha, radius r) and exterior (beta, radius R)
    /// circle conditions at up to 256 vertices of each curve.
    pub fn check_circle_conditions(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let tol = 1e-9;
        if let Some(k) = tangent_violation(&self.inner, self.interior_radius, false, tol) {
            warnings.push(format!(
                "interior circle condition of radius {} fails near inner vertex {k}",
                self.interior_radius
            ));
        }
        if let Some(k) = tangent_violation(&self.outer, self.exterior_radius, true, tol) {
            warnings.push(format!(
                "exterior circle condition of radius {} fails near outer vertex {k}",
                self.exterior_radius
            ));
        }
        warnings
    }

    /// The circle of radius `radius` tangent to the curve at vertex `k` on the
    /// side of the bounded region.
    pub fn inward_tangent_circle(curve: &CurvePolyline, k: usize, radius: f64) -> Result<GeodesicCircle> {
        let (nx, ny) = inward_normal(curve, k);
        let center = point_in_direction(curve.vertices()[k], nx, ny, radius)?;
        GeodesicCircle::new(center, radius)
    }
}

fn inward_normal(curve: &CurvePolyline, k: usize) -> (f64, f64) {
    let v = curve.vertices();
    let n = v.len();
    let (prev, here, next) = (v[(k + n - 1) % n], v[k], v[(k + 1) % n]);
    let (tx, ty) = (next.x() - prev.x(), next.y() - prev.y());
    let chord = if curve.signed_area2() > 0.0 { (-ty, tx) } else { (ty, -tx) };
    // The Euclidean circle through three consecutive vertices is exact for
    // samples of a geodesic circle; its radius direction is the normal.
    match circumcenter(prev, here, next) {
        Some((cx, cy)) => {
            let (nx, ny) = (cx - here.x(), cy - here.y());
            if nx * chord.0 + ny * chord.1 >= 0.0 {
                (nx, ny)
            } else {
                (-nx, -ny)
            }
        }
        None => chord,
    }
}

fn circumcenter(a: DiskPoint, b: DiskPoint, c: DiskPoint) -> Option<(f64, f64)> {
    let d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) + c.x() * (a.y() - b.y()));
    let scale = (b.x() - a.x()).hypot(b.y() - a.y()) * (c.x() - b.x()).hypot(c.y() - b.y());
    if d.abs() <= 1e-12 * scale {
        return None;
    }
    let (a2, b2, c2) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    let ux = (a2 * (b.y() - c.y()) + b2 * (c.y() - a.y()) + c2 * (a.y() - b.y())) / d;
    let uy = (a2 * (c.x() - b.x()) + b2 * (a.x() - c.x()) + c2 * (b.x() - a.x())) / d;
    Some((ux, uy))
}

/// First sampled vertex whose inward tangent circle is not inside (or, with
/// `containing`, does not contain) the curve.
fn tangent_violation(curve: &CurvePolyline, radius: f64, containing: bool, tol: f64) -> Option<usize> {
    let n = curve.len();
    let stride = n.div_ceil(256).max(1);
    let slack = tol * radius.max(1.0);
    for k in (0..n).step_by(stride) {
        let Ok(c) = AnnularDomain::inward_tangent_circle(curve, k, radius) else {
            return Some(k);
        };
        let bad = curve.vertices().iter().any(|&p| {
            let dist = hyperbolic_distance(p, c.center);
            if containing {
                dist > radius + slack
            } else {
                dist < radius - slack
            }
        });
        if bad {
            return Some(k);
        }
    }
    None
}

/// Geodesic circle through all vertices, if there is one.
fn fit_circle(curve: &CurvePolyline) -> Option<GeodesicCircle> {
    let v = curve.vertices();
    let n = v.len();
    let (a, b, c) = (v[0], v[n / 3], v[2 * n / 3]);
    let (ux, uy) = circumcenter(a, b, c)?;
    let rad = (a.x() - ux).hypot(a.y() - uy);
    let tol = 1e-10 * rad.max(1e-3);
    if v.iter().any(|p| ((p.x() - ux).hypot(p.y() - uy) - rad).abs() > tol) {
        return None;
    }
    GeodesicCircle::from_euclidean([ux, uy], rad).ok()
}

/// JSON domain file: `{"outer": curve, "inner": curve, "r": float|null, "R": float|null}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainFile {
    pub outer: CurvePolyline,
    pub inner: CurvePolyline,
    #[serde(default)]
    pub r: Option<f64>,
    #[serde(default, rename = "R")]
    pub big_r: Option<f64>,
}

impl DomainFile {
    pub fn parse(text: &str) -> Result<DomainFile> {
        serde_json::from_str(text).map_err(|e| CmcError::Parse(e.to_string()))
    }

    pub fn into_domain(self) -> Result<(AnnularDomain, Vec<String>)> {
        AnnularDomain::from_curves(self.outer, self.inner, self.r, self.big_r)
    }
}
