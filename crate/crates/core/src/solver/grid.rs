//! Cartesian lattices in the disk model cut by the domain curves.
//!
//! Lattice points inside the annulus are unknowns. Each has four arms along
//! the lattice directions; an arm ends at the neighbouring lattice point or,
//! if a curve crosses the lattice segment first, at a boundary node placed
//! exactly on the crossing (Shortley–Weller). Lattice points within a tiny
//! fraction of the spacing of a curve are turned into boundary nodes
//! themselves so that no arm is degenerately short.

use std::collections::HashMap;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{CmcError, Result};
use crate::hyperbolic::{AnnularDomain, CurvePolyline, DiskPoint};

/// Lattice points closer than this fraction of the spacing to a curve become
/// boundary nodes.
const SNAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryCurve {
    /// alpha
    Inner,
    /// beta
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Interior,
    Boundary(BoundaryCurve),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridNode {
    pub point: DiskPoint,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Arm {
    pub target: usize,
    pub len: f64,
}

/// Arm directions, counterclockwise from east.
pub(crate) const EAST: usize = 0;
pub(crate) const NORTH: usize = 1;
pub(crate) const WEST: usize = 2;
pub(crate) const SOUTH: usize = 3;
const STEP: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

#[derive(Debug, Clone)]
pub struct DiskGrid {
    spacing: f64,
    nodes: Vec<GridNode>,
    unknown_of: Vec<Option<usize>>,
    interior: Vec<usize>,
    arms: Vec<[Arm; 4]>,
    lattice: Vec<(i64, i64)>,
    lattice_nodes: HashMap<(i64, i64), usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum State {
    Exterior,
    Interior,
    Snapped(BoundaryCurve),
}

struct Crossings {
    /// Sorted crossing coordinates along each lattice line.
    lines: Vec<Vec<(f64, BoundaryCurve)>>,
    first: i64,
}

impl Crossings {
    fn line(&self, k: i64) -> &[(f64, BoundaryCurve)] {
        let idx = k - self.first;
        if idx < 0 || idx as usize >= self.lines.len() {
            &[]
        } else {
            &self.lines[idx as usize]
        }
    }
}

fn segments(domain: &AnnularDomain) -> Vec<(DiskPoint, DiskPoint, BoundaryCurve)> {
    let mut out = Vec::new();
    for (curve, tag) in [(&domain.inner, BoundaryCurve::Inner), (&domain.outer, BoundaryCurve::Outer)] {
        for k in 0..curve.segment_count() {
            let (p, q) = curve.segment(k);
            out.push((p, q, tag));
        }
    }
    out
}

/// Crossings of the curves with the lines `coord = k·h`, where `coord` is y
/// (rows) or x (columns). Half-open in the line coordinate so that a vertex
/// on a line is counted once.
fn crossings(segs: &[(DiskPoint, DiskPoint, BoundaryCurve)], h: f64, first: i64, last: i64, rows: bool) -> Crossings {
    let mut lines = vec![Vec::new(); (last - first + 1) as usize];
    let split = |p: DiskPoint| if rows { (p.y(), p.x()) } else { (p.x(), p.y()) };
    for &(p, q, tag) in segs {
        let (pa, pb) = split(p);
        let (qa, qb) = split(q);
        let (lo, hi) = (pa.min(qa), pa.max(qa));
        let k0 = (lo / h).ceil() as i64;
        let k1 = (hi / h).ceil() as i64 - 1;
        for k in k0.max(first)..=k1.min(last) {
            let c = k as f64 * h;
            if !(lo <= c && c < hi) {
                continue;
            }
            let t = (c - pa) / (qa - pa);
            lines[(k - first) as usize].push((pb + t * (qb - pb), tag));
        }
    }
    for line in &mut lines {
        line.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    Crossings { lines, first }
}

impl DiskGrid {
    pub fn build(domain: &AnnularDomain, spacing: f64) -> Result<DiskGrid> {
        if !(spacing > 0.0 && spacing < 1.0) {
            return Err(CmcError::Input(format!("spacing must lie in (0, 1), got {spacing}")));
        }
        let h = spacing;
        let [xmin, ymin, xmax, ymax] = domain.outer.bounding_box();
        let (i0, i1) = ((xmin / h).floor() as i64 - 1, (xmax / h).ceil() as i64 + 1);
        let (j0, j1) = ((ymin / h).floor() as i64 - 1, (ymax / h).ceil() as i64 + 1);
        let cells = (i1 - i0 + 1) as f64 * (j1 - j0 + 1) as f64;
        if cells > 5e7 {
            return Err(CmcError::Input(format!("spacing {spacing} gives a lattice of {cells:e} points")));
        }
        let segs = segments(domain);
        let rows = crossings(&segs, h, j0, j1, true);
        let cols = crossings(&segs, h, i0, i1, false);

        let width = (i1 - i0 + 1) as usize;
        let mut state = vec![State::Exterior; width * (j1 - j0 + 1) as usize];
        let at = |i: i64, j: i64| (j - j0) as usize * width + (i - i0) as usize;
        for j in j0..=j1 {
            let row = rows.line(j);
            for i in i0..=i1 {
                let x = i as f64 * h;
                let (mut outer, mut inner) = (false, false);
                let mut nearest = (f64::INFINITY, BoundaryCurve::Outer);
                for &(xc, tag) in row {
                    if xc < x {
                        match tag {
                            BoundaryCurve::Outer => outer = !outer,
                            BoundaryCurve::Inner => inner = !inner,
                        }
                    }
                    if (xc - x).abs() < nearest.0 {
                        nearest = ((xc - x).abs(), tag);
                    }
                }
                let y = j as f64 * h;
                for &(yc, tag) in cols.line(i) {
                    if (yc - y).abs() < nearest.0 {
                        nearest = ((yc - y).abs(), tag);
                    }
                }
                state[at(i, j)] = if nearest.0 < SNAP * h {
                    State::Snapped(nearest.1)
                } else if outer && !inner {
                    State::Interior
                } else {
                    State::Exterior
                };
            }
        }
        let state_of = |i: i64, j: i64| {
            if i < i0 || i > i1 || j < j0 || j > j1 {
                State::Exterior
            } else {
                state[at(i, j)]
            }
        };

        let mut grid = DiskGrid {
            spacing,
            nodes: Vec::new(),
            unknown_of: Vec::new(),
            interior: Vec::new(),
            arms: Vec::new(),
            lattice: Vec::new(),
            lattice_nodes: HashMap::new(),
        };
        for j in j0..=j1 {
            for i in i0..=i1 {
                if state[at(i, j)] == State::Interior {
                    let node = grid.push(lattice_point(i, j, h)?, NodeKind::Interior);
                    grid.lattice_nodes.insert((i, j), node);
                    grid.unknown_of[node] = Some(grid.interior.len());
                    grid.interior.push(node);
                    grid.lattice.push((i, j));
                }
            }
        }

        let lattice_boundary = |grid: &mut DiskGrid, i: i64, j: i64, tag: BoundaryCurve| -> Result<usize> {
            if let Some(&n) = grid.lattice_nodes.get(&(i, j)) {
                return Ok(n);
            }
            let n = grid.push(lattice_point(i, j, h)?, NodeKind::Boundary(tag));
            grid.lattice_nodes.insert((i, j), n);
            Ok(n)
        };

        for k in 0..grid.interior.len() {
            let (i, j) = grid.lattice[k];
            let mut arms = [Arm { target: 0, len: 0.0 }; 4];
            for (dir, arm) in arms.iter_mut().enumerate() {
                let (di, dj) = STEP[dir];
                let (ni, nj) = (i + di, j + dj);
                let horizontal = dj == 0;
                let line = if horizontal { rows.line(j) } else { cols.line(i) };
                let here = if horizontal { i } else { j } as f64 * h;
                let forward = di + dj > 0;
                // crossings in [here, here + h) going forward, [here - h, here) going back
                let hit = if forward {
                    line.iter().find(|&&(c, _)| c >= here && c < here + h)
                } else {
                    line.iter().rev().find(|&&(c, _)| c < here && c >= here - h)
                };
                let neighbour = state_of(ni, nj);
                *arm = match hit {
                    Some(&(c, tag)) => {
                        let dist = (c - here).abs();
                        if matches!(neighbour, State::Snapped(_)) && h - dist < SNAP * h {
                            let State::Snapped(t) = neighbour else { unreachable!() };
                            Arm { target: lattice_boundary(&mut grid, ni, nj, t)?, len: h }
                        } else {
                            let p = if horizontal {
                                DiskPoint::new(c, j as f64 * h)?
                            } else {
                                DiskPoint::new(i as f64 * h, c)?
                            };
                            Arm { target: grid.push(p, NodeKind::Boundary(tag)), len: dist }
                        }
                    }
                    None => match neighbour {
                        State::Interior => Arm { target: grid.lattice_nodes[&(ni, nj)], len: h },
                        State::Snapped(t) => Arm { target: lattice_boundary(&mut grid, ni, nj, t)?, len: h },
                        State::Exterior => {
                            // only reachable through round-off disagreement between
                            // row and column crossings
                            debug!("lattice point ({ni}, {nj}) has no separating crossing; treating it as boundary");
                            let tag = nearest_curve(domain, lattice_point(ni, nj, h)?);
                            Arm { target: lattice_boundary(&mut grid, ni, nj, tag)?, len: h }
                        }
                    },
                };
            }
            grid.arms.push(arms);
        }
        if grid.interior.is_empty() {
            return Err(CmcError::Input(format!("spacing {spacing} leaves no lattice point inside the domain")));
        }
        Ok(grid)
    }

    fn push(&mut self, point: DiskPoint, kind: NodeKind) -> usize {
        self.nodes.push(GridNode { point, kind });
        self.unknown_of.push(None);
        self.nodes.len() - 1
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn nodes(&self) -> &[GridNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn interior_count(&self) -> usize {
        self.interior.len()
    }

    /// Unknown index of a node, `None` for boundary nodes.
    pub fn unknown(&self, node: usize) -> Option<usize> {
        self.unknown_of[node]
    }

    pub(crate) fn interior_node(&self, unknown: usize) -> usize {
        self.interior[unknown]
    }

    pub(crate) fn arms(&self, unknown: usize) -> &[Arm; 4] {
        &self.arms[unknown]
    }

    /// Triangulation of the covered region: every lattice cell touching an
    /// unknown is cut along the boundary nodes on its edges and fanned.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut cells: Vec<(i64, i64)> = self
            .lattice
            .iter()
            .flat_map(|&(i, j)| [(i - 1, j - 1), (i, j - 1), (i - 1, j), (i, j)])
            .collect();
        cells.sort_unstable();
        cells.dedup();
        let mut tris = Vec::new();
        for (ci, cj) in cells {
            let corners = [(ci, cj), (ci + 1, cj), (ci + 1, cj + 1), (ci, cj + 1)];
            let mut poly: Vec<usize> = Vec::with_capacity(8);
            let push = |v: usize, poly: &mut Vec<usize>| {
                if poly.last() != Some(&v) {
                    poly.push(v);
                }
            };
            for dir in 0..4 {
                let a = corners[dir];
                let b = corners[(dir + 1) % 4];
                let node_a = self.lattice_nodes.get(&a).copied();
                let node_b = self.lattice_nodes.get(&b).copied();
                if let Some(na) = node_a {
                    push(na, &mut poly);
                    if let Some(u) = self.unknown_of[na] {
                        let t = self.arms[u][dir].target;
                        if Some(t) != node_b {
                            push(t, &mut poly);
                        }
                    }
                }
                if let Some(nb) = node_b {
                    if let Some(u) = self.unknown_of[nb] {
                        let t = self.arms[u][(dir + 2) % 4].target;
                        if Some(t) != node_a {
                            push(t, &mut poly);
                        }
                    }
                }
            }
            if poly.len() > 1 && poly.first() == poly.last() {
                poly.pop();
            }
            for k in 1..poly.len().saturating_sub(1) {
                let tri = [poly[0], poly[k], poly[k + 1]];
                if self.area2(tri).abs() > 2e-14 {
                    tris.push(tri);
                }
            }
        }
        tris
    }

    fn area2(&self, t: [usize; 3]) -> f64 {
        let [a, b, c] = t.map(|k| self.nodes[k].point);
        (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y())
    }
}

fn lattice_point(i: i64, j: i64, h: f64) -> Result<DiskPoint> {
    DiskPoint::new(i as f64 * h, j as f64 * h)
}

fn nearest_curve(domain: &AnnularDomain, p: DiskPoint) -> BoundaryCurve {
    let dist = |c: &CurvePolyline| {
        c.vertices()
            .iter()
            .map(|v| (v.x() - p.x()).hypot(v.y() - p.y()))
            .fold(f64::INFINITY, f64::min)
    };
    if dist(&domain.inner) <= dist(&domain.outer) {
        BoundaryCurve::Inner
    } else {
        BoundaryCurve::Outer
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{hyperbolic_distance, make_circle_domain};

    #[test]
    fn arms_end_on_the_curves() {
        let dom = make_circle_domain(DiskPoint::ORIGIN, 1.0, DiskPoint::ORIGIN, 2.0).unwrap();
        let grid = DiskGrid::build(&dom, 0.05).unwrap();
        for u in 0..grid.interior_count() {
            for arm in grid.arms(u) {
                assert!(arm.len > 0.0 && arm.len <= 0.05 + 1e-15);
                let node = grid.nodes()[arm.target];
                if let NodeKind::Boundary(tag) = node.kind {
                    let rho = hyperbolic_distance(DiskPoint::ORIGIN, node.point);
                    let expect = if tag == BoundaryCurve::Inner { 1.0 } else { 2.0 };
                    assert!((rho - expect).abs() < 1e-5, "{rho} vs {expect}");
                }
            }
        }
        for node in grid.nodes() {
            if node.kind == NodeKind::Interior {
                let rho = hyperbolic_distance(DiskPoint::ORIGIN, node.point);
                assert!(rho > 1.0 && rho < 2.0);
            }
        }
    }

    #[test]
    fn triangulation_covers_the_annulus() {
        let dom = make_circle_domain(DiskPoint::ORIGIN, 1.0, DiskPoint::ORIGIN, 2.0).unwrap();
        let grid = DiskGrid::build(&dom, 0.02).unwrap();
        let tris = grid.triangles();
        let area: f64 = tris.iter().map(|&t| 0.5 * grid.area2(t)).sum();
        let (ri, ro) = (0.5f64.tanh(), 1f64.tanh());
        let exact = std::f64::consts::PI * (ro * ro - ri * ri);
        assert!((area - exact).abs() < 1e-3 * exact, "{area} vs {exact}");
        assert!(tris.iter().all(|&t| grid.area2(t) > 0.0));
        let mut used = vec![false; grid.node_count()];
        tris.iter().flatten().for_each(|&v| used[v] = true);
        assert!(used.iter().all(|&u| u));
    }
}
