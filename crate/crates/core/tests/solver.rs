use cmc_core::solver::{
    residual_field, solve_dirichlet, solve_disk, solve_disk_with, solve_radial, BoundaryCurve, NodeKind,
};
use cmc_core::{make_circle_domain, AnnularDomain, CurvePolyline, DiskPoint, RadialProblem, SolverConfig};

fn concentric() -> AnnularDomain {
    make_circle_domain(DiskPoint::ORIGIN, 1.0, DiskPoint::ORIGIN, 2.0).unwrap()
}

fn off_centre() -> AnnularDomain {
    make_circle_domain(DiskPoint::new(0.15, 0.1).unwrap(), 0.5, DiskPoint::ORIGIN, 1.8).unwrap()
}

/// An elliptical inner curve inside a circle of radius 1.5.
fn elliptical() -> AnnularDomain {
    let inner: Vec<DiskPoint> = (0..200)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 200.0;
            DiskPoint::new(-0.05 + 0.25 * t.cos(), 0.15 * t.sin()).unwrap()
        })
        .collect();
    let outer = make_circle_domain(DiskPoint::ORIGIN, 0.2, DiskPoint::ORIGIN, 1.5).unwrap().outer;
    let (domain, _) =
        AnnularDomain::from_curves(outer, CurvePolyline::new(inner, true).unwrap(), Some(0.05), Some(1.5)).unwrap();
    domain
}

fn wavy(p: DiskPoint, curve: BoundaryCurve) -> f64 {
    match curve {
        BoundaryCurve::Inner => 0.4 + 0.3 * (3.0 * p.y().atan2(p.x())).sin(),
        BoundaryCurve::Outer => -0.2 * p.x(),
    }
}

#[test]
fn minimal_graphs_obey_the_maximum_principle() {
    let config = SolverConfig::with_spacing(0.02);
    for domain in [concentric(), off_centre(), elliptical()] {
        let field = solve_dirichlet(&domain, 0.0, &wavy, &config, None).unwrap();
        assert!(field.converged);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (node, u) in field.grid.nodes().iter().zip(&field.u) {
            if let NodeKind::Boundary(_) = node.kind {
                lo = lo.min(*u);
                hi = hi.max(*u);
            }
        }
        assert!(field.min_height() >= lo - 1e-10 && field.max_height() <= hi + 1e-10);
    }
}

#[test]
fn solution_does_not_depend_on_the_initial_guess() {
    let domain = concentric();
    let config = SolverConfig::with_spacing(0.02);
    let a = solve_disk_with(&domain, 0.4, 0.15, &config, None).unwrap();
    // Matches the data on both circles, with a wobble in between.
    let guess = |p: DiskPoint| {
        let rho = cmc_core::hyperbolic_distance(DiskPoint::ORIGIN, p).clamp(1.0, 2.0);
        0.15 * (2.0 - rho) + 0.5 * (rho - 1.0) * (2.0 - rho) * (3.0 * p.y().atan2(p.x())).cos()
    };
    let b = solve_disk_with(&domain, 0.4, 0.15, &config, Some(&guess)).unwrap();
    assert!(a.converged && b.converged);
    let gap = a.u.iter().zip(&b.u).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(gap <= 1e-7, "solutions from two guesses differ by {gap:e}");
}

#[test]
fn residual_detects_perturbations() {
    let mut field = solve_disk(&concentric(), 0.3, 0.2, 0.02).unwrap();
    let base = residual_field(&field, 0.3).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let node = field
        .grid
        .nodes()
        .iter()
        .position(|n| n.kind == NodeKind::Interior)
        .unwrap();
    field.u[node] += 1e-3;
    let bumped = residual_field(&field, 0.3).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(bumped >= 10.0 * base, "{bumped:e} vs {base:e}");
}

#[test]
fn minimal_graphs_are_odd_in_the_data() {
    let domain = off_centre();
    let config = SolverConfig::with_spacing(0.02);
    let up = solve_dirichlet(&domain, 0.0, &wavy, &config, None).unwrap();
    let negated = |p: DiskPoint, c: BoundaryCurve| -wavy(p, c);
    let down = solve_dirichlet(&domain, 0.0, &negated, &config, None).unwrap();
    let gap = up.u.iter().zip(&down.u).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max);
    assert!(gap < 1e-7, "u(data) + u(-data) reaches {gap:e}");
}

#[test]
fn radial_solution_conserves_flux_and_meets_the_data() {
    for (hc, h) in [(0.0, 0.3), (0.3, -0.2), (0.6, 0.1), (1.0, 0.3)] {
        let sol = solve_radial(&RadialProblem {
            mean_curvature: hc,
            rho_in: 1.0,
            rho_out: 2.0,
            h,
        })
        .unwrap();
        assert!(sol.flux_defects().iter().all(|d| d.abs() < 1e-10));
        assert!((sol.achieved_h - h).abs() < 1e-10);
        assert!(sol.height_at(2.0).unwrap().abs() < 1e-12);
    }
}

#[test]
fn unreachable_radial_heights_are_reported() {
    let err = solve_radial(&RadialProblem {
        mean_curvature: 1.0,
        rho_in: 1.0,
        rho_out: 2.0,
        h: 2.0,
    });
    assert!(matches!(err, Err(cmc_core::CmcError::NoRotationalGraph { .. })));
}

#[test]
fn tiny_newton_budget_returns_an_unconverged_field() {
    let config = SolverConfig {
        max_newton: 1,
        ..SolverConfig::with_spacing(0.02)
    };
    let field = solve_disk_with(&concentric(), 0.6, 0.1, &config, None).unwrap();
    assert!(!field.converged);
    assert!(solve_disk(&concentric(), 0.6, 0.1, 0.02).unwrap().converged);
}
