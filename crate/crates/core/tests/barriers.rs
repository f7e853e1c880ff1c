use cmc_core::barriers::{
    barrier_sign_check, barrier_value, comparison_check, inner_lower_barrier, inner_upper_barrier, outer_upper_barrier,
};
use cmc_core::profiles::{cat_eval, hnod_eval};
use cmc_core::solver::solve_disk;
use cmc_core::{make_circle_domain, BarrierKind, BarrierSpec, DiskPoint, GeodesicCircle, ProfileParams};

fn anchor() -> GeodesicCircle {
    GeodesicCircle::new(DiskPoint::new(0.1, -0.05).unwrap(), 0.8).unwrap()
}

#[test]
fn barrier_roles_match_their_sign() {
    let specs = [
        BarrierSpec::catenoid_sub(anchor(), 0.3, 0.2, 1.0).unwrap(),
        BarrierSpec::cone_sub(anchor(), 1.0, 2.0, 0.5).unwrap(),
        BarrierSpec::nodoid_super(anchor(), 0.3, 0.2, 1.0).unwrap(),
        BarrierSpec::cap_super(DiskPoint::ORIGIN, 0.8, 0.1, 0.5).unwrap(),
        BarrierSpec::half_cap_super(DiskPoint::ORIGIN, 2.5, 0.3, 0.1, 0.5).unwrap(),
        BarrierSpec::constant_sub(0.3, -0.4).unwrap(),
    ];
    for spec in &specs {
        let check = barrier_sign_check(spec).unwrap();
        assert!(check.holds, "{:?}: residual range [{}, {}]", spec.kind, check.residual_min, check.residual_max);
    }
}

#[test]
fn cone_margin_agrees_with_sampling() {
    // 2H tanh r < h/√(d²+h²): the cone is too steep to be a subsolution.
    let steep = BarrierSpec::cone_sub(anchor(), 0.2, 5.0, 0.2).unwrap();
    let check = barrier_sign_check(&steep).unwrap();
    assert!(check.closed_margin.unwrap() < 0.0);
    assert!(!check.holds);
}

#[test]
fn barrier_values_follow_their_profiles() {
    let c = anchor();
    let on_neck = c.point_at(0.3).unwrap();
    let cat = BarrierSpec::catenoid_sub(c, 0.3, 0.2, 1.0).unwrap();
    assert!((barrier_value(&cat, on_neck).unwrap() - 0.2).abs() < 1e-9);
    let nod = BarrierSpec::nodoid_super(c, 0.3, 0.2, 1.0).unwrap();
    assert!((barrier_value(&nod, on_neck).unwrap() - 0.2).abs() < 1e-9);

    let out = cmc_core::hyperbolic::point_in_direction(c.center, 1.0, 0.0, c.radius + 0.7).unwrap();
    let want_cat = 0.2 - cat_eval(0.8, 0.7).unwrap();
    assert!((barrier_value(&cat, out).unwrap() - want_cat).abs() < 1e-8);
    let want_nod = 0.2 + hnod_eval(ProfileParams::new(0.3, 0.8).unwrap(), 0.7).unwrap();
    assert!((barrier_value(&nod, out).unwrap() - want_nod).abs() < 1e-8);
    assert_eq!(BarrierSpec::constant_sub(0.3, -0.4).unwrap().kind, BarrierKind::ConstantSub);
}

#[test]
fn solutions_sit_between_barriers_and_shifted_fields_do_not() {
    let domain = make_circle_domain(DiskPoint::new(0.05, 0.03).unwrap(), 0.9, DiskPoint::ORIGIN, 1.5).unwrap();
    let (hc, h) = (0.7, 0.05);
    let input = cmc_core::ExistenceInput::from_domain(&domain, hc, h);
    assert!(cmc_core::criteria::check_exist_above(&input).unwrap().verdict);
    let mut field = solve_disk(&domain, hc, h, 0.02).unwrap();
    let lower = inner_lower_barrier(&domain, hc, h, 0).unwrap();
    let upper = outer_upper_barrier(&domain, hc, h, 0).unwrap();
    let inner_upper = inner_upper_barrier(&domain, hc, h, 0).unwrap();
    for sup in [&upper, &inner_upper] {
        let rep = comparison_check(&field, &lower, sup).unwrap();
        assert!(rep.holds, "margins {} / {}", rep.sub_margin, rep.super_margin);
    }

    field.u.iter_mut().for_each(|u| *u += 5.0);
    let rep = comparison_check(&field, &lower, &upper).unwrap();
    assert!(!rep.holds);
    assert!(rep.super_margin < -1.0 && rep.sub_margin > 0.0);
}

#[test]
fn comparison_needs_a_sub_and_a_super() {
    let domain = make_circle_domain(DiskPoint::ORIGIN, 1.0, DiskPoint::ORIGIN, 2.0).unwrap();
    let field = solve_disk(&domain, 0.0, 0.0, 0.04).unwrap();
    let sub = BarrierSpec::constant_sub(0.0, 0.0).unwrap();
    assert!(comparison_check(&field, &sub, &sub).is_err());
}
