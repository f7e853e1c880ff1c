//! Existence and non-existence tests for CMC graphs spanning two curves in
//! parallel slices.
//!
//! Every hypothesis is of the form `actual ≤ required` and is reported with
//! its margin `required - actual`, so a positive margin means satisfied.
//! Hypotheses that cannot hold carry `required = -∞`; vacuous ones carry
//! `required = +∞`.

mod bounds;

use serde::{Deserialize, Serialize};

use crate::error::{CmcError, Result};
use crate::profiles::{cat_eval, hcap_eval, hnod_eval, t_cutoff, x_peak, ProfileParams};

pub use bounds::{crossover_distance, nonexist_bound_cyl, nonexist_bound_horo, report_nonexist_cyl, report_nonexist_horo, supersolution_radius};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// Existence with the inner curve above the outer one (`h ≥ 0`).
    ExistAbove,
    /// Existence with the inner curve below the outer one (`h ≤ 0`).
    ExistBelow,
    /// Height bound for surfaces in a horocylinder.
    NonExistHoro,
    /// Height bound for surfaces in a cylinder over a disk.
    NonExistCyl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    #[serde(with = "crate::serde_float")]
    pub required: f64,
    #[serde(with = "crate::serde_float")]
    pub actual: f64,
    pub satisfied: bool,
    #[serde(with = "crate::serde_float")]
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Hypothesis {
    /// The hypothesis `actual ≤ required`.
    pub fn at_most(name: &str, actual: f64, required: f64) -> Self {
        Hypothesis {
            name: name.to_string(),
            required,
            actual,
            satisfied: actual <= required,
            margin: required - actual,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub theorem: Theorem,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: bool,
    /// Diagnostics that do not affect the verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CriteriaReport {
    pub fn new(theorem: Theorem, hypotheses: Vec<Hypothesis>) -> Self {
        let verdict = hypotheses.iter().all(|h| h.satisfied);
        CriteriaReport {
            theorem,
            hypotheses,
            verdict,
            notes: Vec::new(),
        }
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// Scalars describing the boundary data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExistenceInput {
    /// Mean curvature `H ≥ 0`.
    #[serde(rename = "H")]
    pub mean_curvature: f64,
    /// Interior circle radius of the inner curve.
    pub r: f64,
    /// Exterior circle radius of the outer curve.
    #[serde(rename = "R")]
    pub big_r: f64,
    /// Distance between the curves.
    pub d: f64,
    pub diam_beta: f64,
    /// Height of the inner curve; the outer curve is at height 0.
    pub h: f64,
}

impl ExistenceInput {
    pub fn from_domain(domain: &crate::hyperbolic::AnnularDomain, mean_curvature: f64, h: f64) -> Self {
        ExistenceInput {
            mean_curvature,
            r: domain.interior_radius,
            big_r: domain.exterior_radius,
            d: domain.separation,
            diam_beta: domain.outer_diameter,
            h,
        }
    }

    fn validate(&self) -> Result<()> {
        crate::profiles::t_cutoff(self.mean_curvature)?;
        for (name, v) in [("r", self.r), ("R", self.big_r), ("d", self.d), ("diam_beta", self.diam_beta)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CmcError::Input(format!("{name} must be finite and positive, got {v}")));
            }
        }
        if !self.h.is_finite() {
            return Err(CmcError::Input(format!("h must be finite, got {}", self.h)));
        }
        if self.d > self.diam_beta {
            return Err(CmcError::Input(format!(
                "d = {} exceeds diam beta = {}",
                self.d, self.diam_beta
            )));
        }
        Ok(())
    }
}

/// The cone subsolution threshold `2Hd/√(coth²r - 4H²)`, infinite when the
/// radicand is not positive.
pub fn cone_threshold(h: f64, r: f64, d: f64) -> f64 {
    let coth = 1.0 / r.tanh();
    // coth²r - 4H² = (coth r - 2H)(coth r + 2H)
    let rad = (coth - 2.0 * h) * (coth + 2.0 * h);
    if rad <= 0.0 {
        f64::INFINITY
    } else {
        2.0 * h * d / rad.sqrt()
    }
}

/// The cap threshold `(4H/k)·arctan(√((1 - 4H²tanh²((T_H-d)/2))/k²))`,
/// `k = √(4H²-1)`, for `H > 1/2` and `0 ≤ d ≤ T_H`.
pub fn cap_threshold(h: f64, d: f64) -> Result<f64> {
    let t = t_cutoff(h)?;
    if !t.is_finite() {
        return Err(CmcError::domain(format!("the cap threshold needs H > 1/2, got {h}")));
    }
    if !(0.0..=t).contains(&d) {
        return Err(CmcError::domain(format!("the cap threshold needs 0 <= d <= T_H = {t}, got {d}")));
    }
    let s = t - d;
    let k = ((2.0 * h - 1.0) * (2.0 * h + 1.0)).sqrt();
    // 1 - 2H·tanh(s/2) = sinh((T-s)/2) / (sinh(T/2)·cosh(s/2))
    let one_minus_g = (0.5 * d).sinh() / ((0.5 * t).sinh() * (0.5 * s).cosh());
    let one_plus_g = 1.0 + 2.0 * h * (0.5 * s).tanh();
    Ok(4.0 * h / k * (one_minus_g * one_plus_g).sqrt().atan2(k))
}

/// Conditions for a solution with the inner curve at height `h ≥ 0`.
pub fn check_exist_above(input: &ExistenceInput) -> Result<CriteriaReport> {
    input.validate()?;
    if input.h < 0.0 {
        return Err(CmcError::WrongTheorem(format!(
            "h = {} < 0; use check_exist_below",
            input.h
        )));
    }
    let h_curv = input.mean_curvature;
    let mut hyps = Vec::new();
    let mut notes = Vec::new();

    // diam β ≤ d + 2·arccosh(cosh r + sinh r/(2H)), and arccosh(...) = r + x_H(r)
    let diam = if h_curv == 0.0 {
        Hypothesis::at_most("diameter", input.diam_beta, f64::INFINITY).with_note("vacuous at H = 0")
    } else {
        let bound = input.d + 2.0 * (input.r + x_peak(h_curv, input.r)?);
        Hypothesis::at_most("diameter", input.diam_beta, bound)
    };
    hyps.push(diam);

    let cat = cat_eval(input.r, input.d)?;
    let cone = cone_threshold(h_curv, input.r, input.d);
    let mut sub = Hypothesis::at_most("height_subsolution", input.h, cat.max(cone));
    if cone.is_infinite() {
        sub = sub.with_note("coth^2(r) <= 4H^2: the cone subsolution allows any height");
    }
    hyps.push(sub);

    let t = t_cutoff(h_curv)?;
    if t.is_finite() {
        hyps.push(Hypothesis::at_most("outer_radius_cap", input.big_r, t));
        if input.d <= t {
            let cap = cap_threshold(h_curv, input.d)?;
            let from_heights = hcap_eval(h_curv, t - input.d)? - hcap_eval(h_curv, t)?;
            let gap = (cap - from_heights).abs();
            if gap > 1e-12 * cap.abs().max(1.0) {
                notes.push(format!(
                    "cap threshold {cap} differs from the difference of cap heights {from_heights} by {gap:e}"
                ));
            }
            hyps.push(Hypothesis::at_most("height_cap", input.h, cap));
        } else {
            hyps.push(
                Hypothesis::at_most("height_cap", input.h, f64::NEG_INFINITY)
                    .with_note(format!("unsatisfiable: d = {} exceeds T_H = {t}", input.d)),
            );
        }
    }
    let mut report = CriteriaReport::new(Theorem::ExistAbove, hyps);
    report.notes = notes;
    Ok(report)
}

/// Conditions for a solution with the inner curve at height `h ≤ 0`.
pub fn check_exist_below(input: &ExistenceInput) -> Result<CriteriaReport> {
    input.validate()?;
    if input.h > 0.0 {
        return Err(CmcError::WrongTheorem(format!(
            "h = {} > 0; use check_exist_above",
            input.h
        )));
    }
    let h_curv = input.mean_curvature;
    let t = t_cutoff(h_curv)?;
    let spread = input.diam_beta - (2.0 * input.r + input.d);
    let mut hyps = vec![
        Hypothesis::at_most("diameter_spread", spread, t),
        Hypothesis::at_most("outer_radius_cap", input.big_r, t),
    ];

    let params = ProfileParams::new(h_curv, input.r)?;
    let mut threshold = f64::INFINITY;
    let mut undefined = Vec::new();
    for (label, s) in [("d", input.d), ("diam_beta - (2r + d)", spread)] {
        if s < 0.0 || s > t {
            undefined.push(format!("H-nod_r({label} = {s}) is undefined outside [0, T_H = {t}]"));
            threshold = f64::NEG_INFINITY;
        } else {
            threshold = threshold.min(hnod_eval(params, s)?);
        }
    }
    let mut depth = Hypothesis::at_most("depth_nodoid", -input.h, threshold);
    if !undefined.is_empty() {
        depth = depth.with_note(format!("unsatisfiable: {}", undefined.join("; ")));
    }
    hyps.push(depth);
    Ok(CriteriaReport::new(Theorem::ExistBelow, hyps))
}
