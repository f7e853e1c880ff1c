//! The hyperbolic plane in the Poincaré disk model.
//!
//! Points are Euclidean coordinates in the open unit disk with metric
//! `lambda^2 (dx^2 + dy^2)`, `lambda = 2 / (1 - |p|^2)`, of curvature -1.
//! Geodesic circles are Euclidean circles, horocycles are Euclidean circles
//! tangent to the boundary, and disk automorphisms are Möbius maps.

mod curve;
mod domain;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CmcError, Result};

pub use curve::{curve_metrics, CurveMetrics, CurvePolyline};
pub use domain::{make_circle_domain, make_circle_domain_sampled, AnnularDomain, DomainFile, CIRCLE_SAMPLES};

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct DiskPoint {
    x: f64,
    y: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        let n2 = x * x + y * y;
        if !n2.is_finite() || n2 >= 1.0 {
            return Err(CmcError::domain(format!(
                "point ({x}, {y}) is not inside the unit disk"
            )));
        }
        Ok(DiskPoint { x, y })
    }

    /// Point at hyperbolic distance `dist` from the origin in direction `angle`.
    pub fn polar(dist: f64, angle: f64) -> Result<Self> {
        let rho = (0.5 * dist).tanh();
        DiskPoint::new(rho * angle.cos(), rho * angle.sin())
    }

    pub(crate) fn from_complex(z: Complex64) -> Result<Self> {
        DiskPoint::new(z.re, z.im)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub(crate) fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

impl TryFrom<[f64; 2]> for DiskPoint {
    type Error = CmcError;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        DiskPoint::new(v[0], v[1])
    }
}

impl From<DiskPoint> for [f64; 2] {
    fn from(p: DiskPoint) -> Self {
        [p.x, p.y]
    }
}

/// `|p - q|^2 / ((1 - |p|^2)(1 - |q|^2))`, a monotone proxy for the distance:
/// `sinh^2(d/2)` equals this quantity.
pub(crate) fn distance_proxy(p: DiskPoint, q: DiskPoint) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    (dx * dx + dy * dy) / ((1.0 - p.norm_sqr()) * (1.0 - q.norm_sqr()))
}

pub(crate) fn proxy_to_distance(proxy: f64) -> f64 {
    2.0 * proxy.sqrt().asinh()
}

/// Hyperbolic distance `arccosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2)))`,
/// evaluated as `2 asinh(sqrt(..))` to stay accurate for nearby points.
pub fn hyperbolic_distance(p: DiskPoint, q: DiskPoint) -> f64 {
    proxy_to_distance(distance_proxy(p, q))
}

/// Conformal factor `2 / (1 - |p|^2)` of the disk metric.
pub fn conformal_factor(p: DiskPoint) -> f64 {
    2.0 / (1.0 - p.norm_sqr())
}

/// Disk automorphism sending `p` to the origin.
pub(crate) fn translate_to_origin(p: DiskPoint, z: Complex64) -> Complex64 {
    let a = p.to_complex();
    (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// Inverse of [`translate_to_origin`].
pub(crate) fn translate_from_origin(p: DiskPoint, w: Complex64) -> Complex64 {
    let a = p.to_complex();
    (w + a) / (Complex64::new(1.0, 0.0) + a.conj() * w)
}

/// Point at hyperbolic distance `dist` from `p` along the geodesic leaving `p`
/// with Euclidean direction `(dx, dy)`.
pub fn point_in_direction(p: DiskPoint, dx: f64, dy: f64, dist: f64) -> Result<DiskPoint> {
    let n = dx.hypot(dy);
    if n == 0.0 || !n.is_finite() {
        return Err(CmcError::domain("zero direction vector"));
    }
    // translating p to the origin has a positive real derivative at p, so the
    // direction is unchanged
    let w = Complex64::new(dx / n, dy / n) * (0.5 * dist).tanh();
    DiskPoint::from_complex(translate_from_origin(p, w))
}

/// Point at hyperbolic distance `dist` from `p` along the geodesic through `q`
/// (beyond `q` when `dist` exceeds their separation).
pub fn point_toward(p: DiskPoint, q: DiskPoint, dist: f64) -> Result<DiskPoint> {
    let w = translate_to_origin(p, q.to_complex());
    if w.norm() == 0.0 {
        return Err(CmcError::domain("coincident points define no geodesic"));
    }
    let z = w / w.norm() * (0.5 * dist).tanh();
    DiskPoint::from_complex(translate_from_origin(p, z))
}

/// Geodesic circle `C_a(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicCircle {
    pub center: DiskPoint,
    pub radius: f64,
}

impl GeodesicCircle {
    pub fn new(center: DiskPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(CmcError::domain(format!(
                "circle radius must be finite and positive, got {radius}"
            )));
        }
        Ok(GeodesicCircle { center, radius })
    }

    /// Point of the circle in Euclidean direction `angle` as seen from the center.
    pub fn point_at(&self, angle: f64) -> Result<DiskPoint> {
        point_in_direction(self.center, angle.cos(), angle.sin(), self.radius)
    }

    /// Closed polyline through `n` equally spaced points.
    pub fn sample(&self, n: usize) -> Result<CurvePolyline> {
        let pts = (0..n)
            .map(|k| self.point_at(std::f64::consts::TAU * k as f64 / n as f64))
            .collect::<Result<Vec<_>>>()?;
        CurvePolyline::new(pts, true)
    }

    /// Euclidean center and radius of the circle in the disk picture.
    pub fn euclidean(&self) -> ([f64; 2], f64) {
        let c = self.center;
        let cn = c.norm_sqr().sqrt();
        if cn == 0.0 {
            return ([0.0, 0.0], (0.5 * self.radius).tanh());
        }
        let (ux, uy) = (c.x / cn, c.y / cn);
        let s = 2.0 * cn.atanh();
        let a1 = (0.5 * (s - self.radius)).tanh();
        let a2 = (0.5 * (s + self.radius)).tanh();
        let m = 0.5 * (a1 + a2);
        ([m * ux, m * uy], 0.5 * (a2 - a1))
    }

    /// Inverse of [`GeodesicCircle::euclidean`].
    pub fn from_euclidean(center: [f64; 2], radius: f64) -> Result<Self> {
        let cn = center[0].hypot(center[1]);
        if cn + radius >= 1.0 {
            return Err(CmcError::domain("Euclidean circle leaves the disk"));
        }
        if cn == 0.0 {
            return GeodesicCircle::new(DiskPoint::ORIGIN, 2.0 * radius.atanh());
        }
        let (ux, uy) = (center[0] / cn, center[1] / cn);
        let h1 = 2.0 * (cn - radius).atanh();
        let h2 = 2.0 * (cn + radius).atanh();
        let c = (0.25 * (h1 + h2)).tanh();
        GeodesicCircle::new(DiskPoint::new(c * ux, c * uy)?, 0.5 * (h2 - h1))
    }
}

/// Signed distance `d(p, center) - radius`; negative inside the circle.
pub fn distance_to_circle(p: DiskPoint, c: &GeodesicCircle) -> f64 {
    hyperbolic_distance(p, c.center) - c.radius
}

/// Horocycle with ideal point `ideal_point`, at signed distance `offset` from
/// the horocycle through the origin (positive toward the ideal point).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Horocycle {
    ideal_point: [f64; 2],
    pub offset: f64,
}

impl Horocycle {
    pub fn new(ideal_point: [f64; 2], offset: f64) -> Result<Self> {
        let n = ideal_point[0].hypot(ideal_point[1]);
        if (n - 1.0).abs() > 1e-12 {
            return Err(CmcError::domain(format!(
                "ideal point must be a unit vector, |xi| = {n}"
            )));
        }
        if !offset.is_finite() {
            return Err(CmcError::domain("horocycle offset must be finite"));
        }
        Ok(Horocycle {
            ideal_point: [ideal_point[0] / n, ideal_point[1] / n],
            offset,
        })
    }

    pub fn ideal_point(&self) -> [f64; 2] {
        self.ideal_point
    }

    /// Busemann function of the ideal point, zero at the origin and decreasing
    /// toward the ideal point.
    pub fn busemann(&self, p: DiskPoint) -> f64 {
        let dx = self.ideal_point[0] - p.x;
        let dy = self.ideal_point[1] - p.y;
        ((dx * dx + dy * dy) / (1.0 - p.norm_sqr())).ln()
    }

    /// Point at signed distance `s` outside this horocycle, on the geodesic
    /// labelled `t` (the horizontal coordinate of the upper half-plane picture
    /// in which the ideal point sits at infinity and the origin at `i`).
    pub fn point(&self, t: f64, s: f64) -> Result<DiskPoint> {
        let y = (self.offset - s).exp();
        let w = Complex64::new(t, y);
        let i = Complex64::i();
        let z = (w - i) / (w + i);
        let xi = Complex64::new(self.ideal_point[0], self.ideal_point[1]);
        DiskPoint::from_complex(z * xi)
    }
}

/// Signed distance from `p` to the horocycle; positive outside the horodisk.
pub fn distance_to_horocycle(p: DiskPoint, h: &Horocycle) -> f64 {
    h.busemann(p) + h.offset
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> DiskPoint {
        DiskPoint::new(x, y).unwrap()
    }

    #[test]
    fn distance_basics() {
        assert_eq!(hyperbolic_distance(DiskPoint::ORIGIN, DiskPoint::ORIGIN), 0.0);
        let d = hyperbolic_distance(DiskPoint::ORIGIN, pt(0.5f64.tanh(), 0.0));
        assert!((d - 1.0).abs() < 1e-15);
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.8, 0.7).is_err());
    }

    #[test]
    fn conformal_factor_values() {
        assert_eq!(conformal_factor(DiskPoint::ORIGIN), 2.0);
        assert!((conformal_factor(pt(0.5, 0.0)) - 8.0 / 3.0).abs() < 1e-15);
        let mut prev = 0.0;
        for k in 0..100 {
            let l = conformal_factor(pt(k as f64 / 100.0, 0.0));
            assert!(l > prev);
            prev = l;
        }
    }

    #[test]
    fn circle_radial_additivity() {
        let c = GeodesicCircle::new(pt(0.2, -0.1), 0.7).unwrap();
        let p = point_in_direction(c.center, 0.3, 1.0, 0.7).unwrap();
        assert!(distance_to_circle(p, &c).abs() < 1e-12);
        let q = point_in_direction(c.center, 0.3, 1.0, 2.7).unwrap();
        assert!((distance_to_circle(q, &c) - 2.0).abs() < 1e-11);
    }

    #[test]
    fn euclidean_circle_roundtrip() {
        let c = GeodesicCircle::new(pt(-0.3, 0.25), 0.9).unwrap();
        let (ec, er) = c.euclidean();
        for k in 0..16 {
            let p = c.point_at(k as f64).unwrap();
            let e = (p.x() - ec[0]).hypot(p.y() - ec[1]);
            assert!((e - er).abs() < 1e-13);
        }
        let back = GeodesicCircle::from_euclidean(ec, er).unwrap();
        assert!(hyperbolic_distance(back.center, c.center) < 1e-12);
        assert!((back.radius - c.radius).abs() < 1e-12);
    }

    #[test]
    fn horocycle_parametrization() {
        let h = Horocycle::new([0.6, 0.8], 0.4).unwrap();
        for &t in &[-2.0, -0.3, 0.0, 1.5] {
            for &s in &[0.0, 0.25, 1.0, 3.0] {
                let p = h.point(t, s).unwrap();
                assert!((distance_to_horocycle(p, &h) - s).abs() < 1e-12);
            }
        }
        // the reference horocycle passes through the origin
        let h0 = Horocycle::new([1.0, 0.0], 0.0).unwrap();
        assert!(distance_to_horocycle(DiskPoint::ORIGIN, &h0).abs() < 1e-15);
        assert!(Horocycle::new([1.0, 0.1], 0.0).is_err());
    }

    #[test]
    fn horocycle_distance_additive_along_geodesic() {
        let h = Horocycle::new([0.0, 1.0], -0.2).unwrap();
        // the geodesic through the origin toward the ideal point is the y axis
        let a = pt(0.0, -0.3);
        let b = pt(0.0, -0.7);
        let gap = distance_to_horocycle(b, &h) - distance_to_horocycle(a, &h);
        assert!((gap - hyperbolic_distance(a, b)).abs() < 1e-12);
    }
}
