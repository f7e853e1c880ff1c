//! Newton solver for the Dirichlet problem of the prescribed mean curvature
//! equation on a lattice in the disk model.
//!
//! In the conformal metric `λ²|dz|²` the operator reads
//! `λ² Q_H(u) = div_e(λ Du / √(λ² + |Du|²)) + 2Hλ²`
//! with flat divergence and gradient. The flux is discretised on lattice arms
//! (normal part from the two arm ends, tangential part averaged from the
//! central differences at both ends) and the divergence by the
//! Shortley–Weller weights `2 / (len + len_opposite)`.

use log::{debug, info, warn};

use super::config::SolverConfig;
use super::grid::{BoundaryCurve, DiskGrid, NodeKind, EAST, NORTH, SOUTH, WEST};
use super::sparse::{bicgstab, Csr};
use crate::error::{CmcError, Result};
use crate::hyperbolic::{conformal_factor, hyperbolic_distance, AnnularDomain, CurvePolyline, DiskPoint};

const MAX_HALVINGS: usize = 25;
const ARMIJO: f64 = 1e-4;
const BLOWUP: f64 = 10.0;
const DISTANCE_SAMPLES: usize = 512;

#[derive(Debug, Clone)]
pub struct FieldSolution {
    pub grid: DiskGrid,
    /// Height at every grid node; boundary nodes carry the Dirichlet data.
    pub u: Vec<f64>,
    /// `max |div_e(...) + 2Hλ²|` over interior nodes.
    pub residual_inf: f64,
    /// Threshold `tol · λ_max` the residual was driven below.
    pub tolerance: f64,
    pub newton_iters: usize,
    pub converged: bool,
    pub mean_curvature: f64,
}

impl FieldSolution {
    /// Largest `|Du| · spacing` over all arms, the flat gradient measured in
    /// lattice units.
    pub fn gradient_ratio(&self) -> f64 {
        let st = Stencil::new(&self.grid);
        let h = self.grid.spacing();
        st.faces
            .iter()
            .flatten()
            .map(|f| {
                let (dn, dt) = f.derivatives(&self.u);
                dn.hypot(dt) * h
            })
            .fold(0.0, f64::max)
    }

    pub fn max_height(&self) -> f64 {
        self.u.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_height(&self) -> f64 {
        self.u.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// One arm of the flux stencil around an unknown.
#[derive(Debug, Clone)]
struct Face {
    centre: usize,
    target: usize,
    len: f64,
    weight: f64,
    lambda: f64,
    /// Linear combination of node values giving the tangential derivative.
    tangential: Vec<(usize, f64)>,
}

impl Face {
    fn derivatives(&self, u: &[f64]) -> (f64, f64) {
        let dn = (u[self.target] - u[self.centre]) / self.len;
        let dt = self.tangential.iter().map(|&(k, c)| c * u[k]).sum();
        (dn, dt)
    }

    /// `λ Dn / √(λ² + Dn² + Dt²)` and its partial derivatives.
    fn flux(&self, u: &[f64]) -> (f64, f64, f64) {
        let (dn, dt) = self.derivatives(u);
        let l = self.lambda;
        let q = l * l + dn * dn + dt * dt;
        let root = q.sqrt();
        let q32 = q * root;
        (l * dn / root, l * (l * l + dt * dt) / q32, -l * dn * dt / q32)
    }
}

struct Stencil {
    faces: Vec<[Face; 4]>,
    source: Vec<f64>,
}

/// Central difference along the axis through `plus`/`minus` arms at unknown `k`.
fn central(grid: &DiskGrid, k: usize, plus: usize, minus: usize) -> [(usize, f64); 3] {
    let arms = grid.arms(k);
    let (hp, hm) = (arms[plus].len, arms[minus].len);
    let node = grid.interior_node(k);
    [
        (arms[plus].target, hm / (hp * (hp + hm))),
        (arms[minus].target, -hp / (hm * (hp + hm))),
        (node, (hp - hm) / (hp * hm)),
    ]
}

impl Stencil {
    fn new(grid: &DiskGrid) -> Stencil {
        let nodes = grid.nodes();
        let mut faces = Vec::with_capacity(grid.interior_count());
        let mut source = Vec::with_capacity(grid.interior_count());
        for k in 0..grid.interior_count() {
            let centre = grid.interior_node(k);
            let p = nodes[centre].point;
            let lam = conformal_factor(p);
            source.push(lam * lam);
            let arms = grid.arms(k);
            let face = |dir: usize| {
                let arm = arms[dir];
                let opposite = arms[(dir + 2) % 4].len;
                let (plus, minus) = if dir == EAST || dir == WEST { (NORTH, SOUTH) } else { (EAST, WEST) };
                let mut tangential: Vec<(usize, f64)> = central(grid, k, plus, minus).to_vec();
                if let Some(t) = grid.unknown(arm.target) {
                    tangential.extend(central(grid, t, plus, minus));
                    tangential.iter_mut().for_each(|e| e.1 *= 0.5);
                } else if let Some(o) = grid.unknown(arms[(dir + 2) % 4].target) {
                    // extrapolate from the opposite neighbour to the arm midpoint
                    let theta = 0.5 * arm.len / opposite;
                    tangential.iter_mut().for_each(|e| e.1 *= 1.0 + theta);
                    tangential.extend(central(grid, o, plus, minus).map(|(k, c)| (k, -theta * c)));
                }
                let q = nodes[arm.target].point;
                let mid = DiskPoint::new(0.5 * (p.x() + q.x()), 0.5 * (p.y() + q.y())).expect("midpoint of disk points");
                Face {
                    centre,
                    target: arm.target,
                    len: arm.len,
                    weight: 2.0 / (arm.len + opposite),
                    lambda: conformal_factor(mid),
                    tangential,
                }
            };
            faces.push([face(EAST), face(NORTH), face(WEST), face(SOUTH)]);
        }
        Stencil { faces, source }
    }

    fn residual(&self, u: &[f64], h_curv: f64, out: &mut [f64]) {
        for (k, faces) in self.faces.iter().enumerate() {
            let div: f64 = faces.iter().map(|f| f.weight * f.flux(u).0).sum();
            out[k] = div + 2.0 * h_curv * self.source[k];
        }
    }

    fn jacobian(&self, grid: &DiskGrid, u: &[f64]) -> Csr {
        let mut trip = Vec::with_capacity(self.faces.len() * 28);
        for (k, faces) in self.faces.iter().enumerate() {
            for f in faces {
                let (_, gn, gt) = f.flux(u);
                let cn = f.weight * gn / f.len;
                trip.push((k, k, -cn));
                if let Some(t) = grid.unknown(f.target) {
                    trip.push((k, t, cn));
                }
                for &(node, c) in &f.tangential {
                    if let Some(col) = grid.unknown(node) {
                        trip.push((k, col, f.weight * gt * c));
                    }
                }
            }
        }
        Csr::from_triplets(self.faces.len(), trip)
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Solve with data `h` on the inner curve and `0` on the outer one at the
/// given spacing. Fails on non-convergence.
pub fn solve_disk(domain: &AnnularDomain, mean_curvature: f64, h: f64, spacing: f64) -> Result<FieldSolution> {
    let field = solve_disk_with(domain, mean_curvature, h, &SolverConfig::with_spacing(spacing), None)?;
    if field.converged {
        Ok(field)
    } else {
        Err(CmcError::NonConvergence {
            iterations: field.newton_iters,
            residual: field.residual_inf,
            reason: format!("Newton limit of {} iterations reached", field.newton_iters),
        })
    }
}

/// Solve with a full configuration and an optional initial guess. A run that
/// exhausts its iteration budget is returned with `converged == false`;
/// stagnation of the line search is an error.
pub fn solve_disk_with(
    domain: &AnnularDomain,
    mean_curvature: f64,
    h: f64,
    config: &SolverConfig,
    initial: Option<&dyn Fn(DiskPoint) -> f64>,
) -> Result<FieldSolution> {
    let data = move |_: DiskPoint, curve: BoundaryCurve| match curve {
        BoundaryCurve::Inner => h,
        BoundaryCurve::Outer => 0.0,
    };
    solve_dirichlet(domain, mean_curvature, &data, config, initial)
}

/// General Dirichlet data on the two curves.
pub fn solve_dirichlet(
    domain: &AnnularDomain,
    mean_curvature: f64,
    data: &dyn Fn(DiskPoint, BoundaryCurve) -> f64,
    config: &SolverConfig,
    initial: Option<&dyn Fn(DiskPoint) -> f64>,
) -> Result<FieldSolution> {
    config.validate()?;
    if !mean_curvature.is_finite() || mean_curvature < 0.0 {
        return Err(CmcError::Input(format!("mean curvature must be finite and non-negative, got {mean_curvature}")));
    }
    let lambda_boundary = domain
        .outer
        .vertices()
        .iter()
        .map(|&p| conformal_factor(p))
        .fold(0.0, f64::max);
    let needed = domain.separation / lambda_boundary / 4.0;
    if config.spacing > needed {
        return Err(CmcError::Input(format!(
            "spacing {} does not resolve the annulus gap; use at most {needed:.3e}",
            config.spacing
        )));
    }
    let grid = DiskGrid::build(domain, config.spacing)?;
    let stencil = Stencil::new(&grid);
    let lambda_max = grid.nodes().iter().map(|n| conformal_factor(n.point)).fold(0.0, f64::max);
    let tolerance = config.tol * lambda_max;

    let mut u = vec![0.0; grid.node_count()];
    let guess = Interpolant::new(domain, data);
    for (k, node) in grid.nodes().iter().enumerate() {
        u[k] = match node.kind {
            NodeKind::Boundary(curve) => data(node.point, curve),
            NodeKind::Interior => match initial {
                Some(f) => f(node.point),
                None => guess.eval(node.point),
            },
        };
    }

    let n = grid.interior_count();
    let mut res = vec![0.0; n];
    let mut trial_res = vec![0.0; n];
    let mut trial = u.clone();
    let mut step = vec![0.0; n];
    stencil.residual(&u, mean_curvature, &mut res);
    let mut iters = 0;
    while norm_inf(&res) > tolerance && iters < config.max_newton {
        iters += 1;
        let jac = stencil.jacobian(&grid, &u);
        let rhs: Vec<f64> = res.iter().map(|r| -r).collect();
        step.iter_mut().for_each(|s| *s = 0.0);
        let lin = bicgstab(&jac, &rhs, &mut step, 1e-10, 4 * n + 100);
        if !lin.converged {
            debug!(
                "linear solve stopped after {} iterations at relative residual {:.2e}",
                lin.iterations, lin.relative_residual
            );
        }
        let r0 = norm2(&res);
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            trial.copy_from_slice(&u);
            for k in 0..n {
                trial[grid.interior_node(k)] += alpha * step[k];
            }
            stencil.residual(&trial, mean_curvature, &mut trial_res);
            if norm2(&trial_res) <= (1.0 - ARMIJO * alpha) * r0 {
                accepted = true;
                break;
            }
            alpha *= config.damping;
        }
        if !accepted {
            return Err(CmcError::NonConvergence {
                iterations: iters,
                residual: norm_inf(&res),
                reason: format!("line search rejected {MAX_HALVINGS} step reductions"),
            });
        }
        std::mem::swap(&mut u, &mut trial);
        std::mem::swap(&mut res, &mut trial_res);
        debug!("newton {iters}: step {alpha}, residual {:.3e}", norm_inf(&res));
    }
    let residual_inf = norm_inf(&res);
    let converged = residual_inf <= tolerance;
    let field = FieldSolution {
        grid,
        u,
        residual_inf,
        tolerance,
        newton_iters: iters,
        converged,
        mean_curvature,
    };
    if !converged {
        warn!("disk solve stopped after {iters} iterations at residual {residual_inf:.3e}");
        return Ok(field);
    }
    let ratio = field.gradient_ratio();
    if ratio > BLOWUP {
        return Err(CmcError::NeedsRefinement {
            ratio,
            suggested: config.spacing * BLOWUP / ratio / 2.0,
        });
    }
    info!("disk solve converged in {iters} iterations, residual {residual_inf:.3e}");
    Ok(field)
}

/// `Q_H(u)` at every node: the discrete operator divided by `λ²` at interior
/// nodes, zero at boundary nodes.
pub fn residual_field(field: &FieldSolution, mean_curvature: f64) -> Vec<f64> {
    let stencil = Stencil::new(&field.grid);
    let mut res = vec![0.0; field.grid.interior_count()];
    stencil.residual(&field.u, mean_curvature, &mut res);
    let mut out = vec![0.0; field.grid.node_count()];
    for (k, r) in res.iter().enumerate() {
        out[field.grid.interior_node(k)] = r / stencil.source[k];
    }
    out
}

/// Blend of the boundary data weighted by hyperbolic distance to each curve.
/// Distances are found on a subsample of the vertices and then refined on
/// the segments around the nearest one, so that lattice points close to a
/// curve get a guess consistent with their short arms.
struct Interpolant<'a> {
    inner: &'a CurvePolyline,
    outer: &'a CurvePolyline,
    data: &'a dyn Fn(DiskPoint, BoundaryCurve) -> f64,
}

fn nearest_on(curve: &CurvePolyline, p: DiskPoint) -> (f64, DiskPoint) {
    let verts = curve.vertices();
    let stride = verts.len().div_ceil(DISTANCE_SAMPLES).max(1);
    let (start, _) = verts
        .iter()
        .enumerate()
        .step_by(stride)
        .map(|(k, &q)| (k, hyperbolic_distance(p, q)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty curve");
    let segs = curve.segment_count();
    let mut best = (hyperbolic_distance(p, verts[start]), verts[start]);
    if segs == 0 {
        return best;
    }
    for off in -(stride as i64) - 1..=stride as i64 {
        let k = start as i64 + off;
        let k = if curve.is_closed() {
            k.rem_euclid(segs as i64) as usize
        } else if k < 0 || k >= segs as i64 {
            continue;
        } else {
            k as usize
        };
        let (a, b) = curve.segment(k);
        let (ex, ey) = (b.x() - a.x(), b.y() - a.y());
        let len2 = ex * ex + ey * ey;
        let t = if len2 > 0.0 {
            (((p.x() - a.x()) * ex + (p.y() - a.y()) * ey) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let q = DiskPoint::new(a.x() + t * ex, a.y() + t * ey).expect("segment point lies in the disk");
        let d = hyperbolic_distance(p, q);
        if d < best.0 {
            best = (d, q);
        }
    }
    best
}

impl<'a> Interpolant<'a> {
    fn new(domain: &'a AnnularDomain, data: &'a dyn Fn(DiskPoint, BoundaryCurve) -> f64) -> Self {
        Interpolant {
            inner: &domain.inner,
            outer: &domain.outer,
            data,
        }
    }

    fn eval(&self, p: DiskPoint) -> f64 {
        let (da, qa) = nearest_on(self.inner, p);
        let (db, qb) = nearest_on(self.outer, p);
        let (ua, ub) = ((self.data)(qa, BoundaryCurve::Inner), (self.data)(qb, BoundaryCurve::Outer));
        if da + db == 0.0 {
            return 0.5 * (ua + ub);
        }
        (ua * db + ub * da) / (da + db)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::make_circle_domain;

    fn annulus() -> AnnularDomain {
        make_circle_domain(DiskPoint::ORIGIN, 1.0, DiskPoint::ORIGIN, 2.0).unwrap()
    }

    #[test]
    fn zero_data_minimal_is_zero() {
        let f = solve_disk(&annulus(), 0.0, 0.0, 0.04).unwrap();
        assert_eq!(f.newton_iters, 0);
        assert!(f.u.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn constant_field_residual_is_2h() {
        let mut f = solve_disk(&annulus(), 0.0, 0.0, 0.04).unwrap();
        f.u.iter_mut().for_each(|v| *v = 0.7);
        let r = residual_field(&f, 0.3);
        for (k, node) in f.grid.nodes().iter().enumerate() {
            let expect = if node.kind == NodeKind::Interior { 0.6 } else { 0.0 };
            assert!((r[k] - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn converged_field_meets_tolerance() {
        let f = solve_disk(&annulus(), 0.3, 0.2, 0.02).unwrap();
        assert!(f.converged && f.residual_inf <= f.tolerance);
        let r = residual_field(&f, 0.3);
        assert!(r.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn coarse_spacing_is_rejected() {
        assert!(matches!(solve_disk(&annulus(), 0.0, 0.1, 0.2), Err(CmcError::Input(_))));
    }
}
