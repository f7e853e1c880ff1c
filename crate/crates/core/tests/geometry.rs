use cmc_core::hyperbolic::{point_toward, Horocycle};
use cmc_core::{conformal_factor, distance_to_circle, distance_to_horocycle, hyperbolic_distance, DiskPoint, GeodesicCircle};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = DiskPoint> {
    (0.0..0.95f64, 0.0..std::f64::consts::TAU)
        .prop_map(|(rad, ang)| DiskPoint::new(rad * ang.cos(), rad * ang.sin()).unwrap())
}

/// `z ↦ e^{iθ}(z - a)/(1 - ā z)`, written out on real pairs.
fn mobius(a: (f64, f64), theta: f64, p: DiskPoint) -> DiskPoint {
    let (zx, zy) = (p.x() - a.0, p.y() - a.1);
    // 1 - ā z
    let (dx, dy) = (1.0 - (a.0 * p.x() + a.1 * p.y()), -(a.0 * p.y() - a.1 * p.x()));
    let n = dx * dx + dy * dy;
    let (qx, qy) = ((zx * dx + zy * dy) / n, (zy * dx - zx * dy) / n);
    let (c, s) = (theta.cos(), theta.sin());
    DiskPoint::new(c * qx - s * qy, s * qx + c * qy).unwrap()
}

fn textbook_distance(p: DiskPoint, q: DiskPoint) -> f64 {
    let d2 = (p.x() - q.x()).powi(2) + (p.y() - q.y()).powi(2);
    (1.0 + 2.0 * d2 / ((1.0 - p.norm_sqr()) * (1.0 - q.norm_sqr()))).acosh()
}

proptest! {
    #[test]
    fn distance_is_symmetric_and_nonnegative(p in point(), q in point()) {
        let d = hyperbolic_distance(p, q);
        prop_assert!(d >= 0.0);
        prop_assert!((d - hyperbolic_distance(q, p)).abs() <= 1e-12 * d.max(1.0));
    }

    #[test]
    fn distance_matches_textbook_formula(p in point(), q in point()) {
        let (d, e) = (hyperbolic_distance(p, q), textbook_distance(p, q));
        prop_assert!((d - e).abs() <= 1e-9 * e.max(1.0), "{} vs {}", d, e);
    }

    #[test]
    fn triangle_inequality(p in point(), q in point(), w in point()) {
        let lhs = hyperbolic_distance(p, w);
        let rhs = hyperbolic_distance(p, q) + hyperbolic_distance(q, w);
        prop_assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn isometries_preserve_distance(p in point(), q in point(), a in point(), theta in 0.0..std::f64::consts::TAU) {
        let before = hyperbolic_distance(p, q);
        let after = hyperbolic_distance(mobius((a.x(), a.y()), theta, p), mobius((a.x(), a.y()), theta, q));
        // The map itself loses digits near the boundary; compare relative to the scale.
        prop_assert!((before - after).abs() <= 1e-7 * before.max(1.0), "{} vs {}", before, after);
    }

    #[test]
    fn moving_toward_a_point_travels_the_requested_distance(p in point(), q in point(), t in 0.0..1.0f64) {
        let d = hyperbolic_distance(p, q);
        prop_assume!(d > 1e-6 && d < 5.0);
        let m = point_toward(p, q, t * d).unwrap();
        prop_assert!((hyperbolic_distance(p, m) - t * d).abs() < 1e-8);
        prop_assert!((hyperbolic_distance(m, q) - (1.0 - t) * d).abs() < 1e-8);
    }

    #[test]
    fn circle_distance_vanishes_on_the_circle(c in point(), radius in 0.1..2.0f64, angle in 0.0..std::f64::consts::TAU) {
        prop_assume!(hyperbolic_distance(DiskPoint::ORIGIN, c) + radius < 5.0);
        let circle = GeodesicCircle::new(c, radius).unwrap();
        let on = circle.point_at(angle).unwrap();
        prop_assert!(distance_to_circle(on, &circle).abs() < 1e-9);
        prop_assert!((hyperbolic_distance(c, on) - radius).abs() < 1e-9);
    }
}

#[test]
fn conformal_factor_is_two_over_one_minus_norm() {
    for (x, y) in [(0.0, 0.0), (0.3, -0.4), (0.9, 0.0), (-0.5, 0.5)] {
        let p = DiskPoint::new(x, y).unwrap();
        let want = 2.0 / (1.0 - x * x - y * y);
        assert!((conformal_factor(p) - want).abs() < 1e-14 * want);
    }
}

#[test]
fn points_outside_the_disk_are_rejected() {
    assert!(DiskPoint::new(1.0, 0.0).is_err());
    assert!(DiskPoint::new(0.8, 0.8).is_err());
    assert!(DiskPoint::new(f64::NAN, 0.0).is_err());
}

#[test]
fn horocycle_coordinates_measure_signed_distance() {
    let hc = Horocycle::new([0.0, 1.0], 0.3).unwrap();
    for t in [-1.0, 0.0, 0.7] {
        for s in [-0.5, 0.0, 0.8] {
            let p = hc.point(t, s).unwrap();
            assert!((distance_to_horocycle(p, &hc) - s).abs() < 1e-9);
        }
    }
}
