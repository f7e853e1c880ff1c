use cmc_core::criteria::{
    check_exist_above, check_exist_below, crossover_distance, cone_threshold, nonexist_bound_cyl, report_nonexist_horo,
};
use cmc_core::profiles::cat_eval;
use cmc_core::{CriteriaReport, ExistenceInput, Theorem};
use proptest::prelude::*;

fn input() -> impl Strategy<Value = ExistenceInput> {
    (0.0..2.0f64, 0.1..3.0f64, 0.3..3.0f64, 0.05..2.0f64, 0.0..3.0f64, 0.0..2.0f64).prop_map(
        |(mean_curvature, r, big_r, d, extra, h)| ExistenceInput {
            mean_curvature,
            r,
            big_r,
            d,
            diam_beta: 2.0 * r + d + extra,
            h,
        },
    )
}

fn consistent(rep: &CriteriaReport) -> bool {
    rep.verdict == rep.hypotheses.iter().all(|h| h.satisfied)
        && rep.hypotheses.iter().all(|h| h.satisfied == (h.actual <= h.required))
}

proptest! {
    #[test]
    fn reports_are_internally_consistent(i in input()) {
        let above = check_exist_above(&i).unwrap();
        let below = check_exist_below(&ExistenceInput { h: -i.h, ..i }).unwrap();
        prop_assert!(consistent(&above) && consistent(&below));
        prop_assert_eq!(above.theorem, Theorem::ExistAbove);
        prop_assert_eq!(below.theorem, Theorem::ExistBelow);
    }

    #[test]
    fn lowering_the_inner_curve_keeps_existence(i in input(), shrink in 0.0..1.0f64) {
        if check_exist_above(&i).unwrap().verdict {
            let lower = ExistenceInput { h: shrink * i.h, ..i };
            prop_assert!(check_exist_above(&lower).unwrap().verdict);
        }
        let deep = ExistenceInput { h: -i.h, ..i };
        if check_exist_below(&deep).unwrap().verdict {
            let shallower = ExistenceInput { h: -shrink * i.h, ..i };
            prop_assert!(check_exist_below(&shallower).unwrap().verdict);
        }
    }

    #[test]
    fn reports_survive_json(i in input()) {
        let rep = check_exist_above(&i).unwrap();
        let back: CriteriaReport = serde_json::from_str(&rep.to_json()).unwrap();
        prop_assert_eq!(back, rep);
    }

    #[test]
    fn catenoid_wins_below_the_crossover(h in 0.05..1.5f64, r in 0.1..3.0f64, frac in 0.05..0.95f64) {
        prop_assume!(1.0 / r.tanh() > 2.0 * h);
        let d0 = crossover_distance(h, r).unwrap();
        let d = frac * d0;
        prop_assert!(cat_eval(r, d).unwrap() >= cone_threshold(h, r, d) - 1e-12);
    }
}

#[test]
fn wrong_sign_heights_are_rejected() {
    let i = ExistenceInput {
        mean_curvature: 0.3,
        r: 1.0,
        big_r: 2.0,
        d: 1.0,
        diam_beta: 4.0,
        h: 0.1,
    };
    assert!(check_exist_below(&i).is_err());
    assert!(check_exist_above(&ExistenceInput { h: -0.1, ..i }).is_err());
    assert!(check_exist_above(&ExistenceInput { d: 5.0, ..i }).is_err());
}

#[test]
fn horocylinder_bound_decides_slabs() {
    let bound = std::f64::consts::PI - 2.0;
    assert!(report_nonexist_horo(0.5, bound - 1e-6).unwrap().verdict);
    assert!(!report_nonexist_horo(0.5, bound + 1e-6).unwrap().verdict);
    assert!(nonexist_bound_cyl(1.0, 0.5).unwrap() > nonexist_bound_cyl(1.0, 0.1).unwrap());
}
