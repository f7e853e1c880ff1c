//! Closed polylines in the disk and the separation/diameter metrics between them.

use serde::{Deserialize, Serialize};

use super::{distance_proxy, proxy_to_distance, DiskPoint};
use crate::error::{CmcError, Result};
use crate::numerics::{golden_section_max, golden_section_min};

/// Vertices joined by Euclidean chords of the disk picture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolyline", into = "RawPolyline")]
pub struct CurvePolyline {
    vertices: Vec<DiskPoint>,
    closed: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawPolyline {
    Flagged { points: Vec<DiskPoint>, closed: bool },
    Bare(Vec<DiskPoint>),
}

impl TryFrom<RawPolyline> for CurvePolyline {
    type Error = CmcError;

    fn try_from(raw: RawPolyline) -> Result<Self> {
        match raw {
            RawPolyline::Flagged { points, closed } => CurvePolyline::new(points, closed),
            RawPolyline::Bare(points) => CurvePolyline::new(points, true),
        }
    }
}

impl From<CurvePolyline> for RawPolyline {
    fn from(c: CurvePolyline) -> Self {
        RawPolyline::Flagged {
            points: c.vertices,
            closed: c.closed,
        }
    }
}

impl CurvePolyline {
    pub fn new(vertices: Vec<DiskPoint>, closed: bool) -> Result<Self> {
        if closed && vertices.len() < 3 {
            return Err(CmcError::Input(format!(
                "a closed curve needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.len() < 2 {
            return Err(CmcError::Input("a curve needs at least 2 vertices".into()));
        }
        let n = vertices.len();
        let pairs = if closed { n } else { n - 1 };
        for k in 0..pairs {
            if vertices[k] == vertices[(k + 1) % n] {
                return Err(CmcError::Input(format!("consecutive vertices {k} and {} coincide", (k + 1) % n)));
            }
        }
        Ok(CurvePolyline { vertices, closed })
    }

    pub fn vertices(&self) -> &[DiskPoint] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    /// Endpoints of segment `k`.
    pub fn segment(&self, k: usize) -> (DiskPoint, DiskPoint) {
        let n = self.vertices.len();
        (self.vertices[k % n], self.vertices[(k + 1) % n])
    }

    /// Twice the signed Euclidean area; positive for counter-clockwise curves.
    pub fn signed_area2(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|k| {
                let (a, b) = (self.vertices[k], self.vertices[(k + 1) % n]);
                a.x() * b.y() - b.x() * a.y()
            })
            .sum()
    }

    /// Even-odd containment test in the disk picture.
    pub fn contains(&self, p: DiskPoint) -> bool {
        let mut inside = false;
        for k in 0..self.segment_count() {
            let (a, b) = self.segment(k);
            if (a.y() <= p.y()) != (b.y() <= p.y()) {
                let x = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
                if x > p.x() {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Euclidean bounding box `[xmin, ymin, xmax, ymax]`.
    pub fn bounding_box(&self) -> [f64; 4] {
        self.vertices.iter().fold(
            [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY],
            |b, p| [b[0].min(p.x()), b[1].min(p.y()), b[2].max(p.x()), b[3].max(p.y())],
        )
    }

    fn lerp(&self, k: usize, t: f64) -> DiskPoint {
        let (a, b) = self.segment(k);
        // chords of the disk stay inside it
        DiskPoint {
            x: a.x() + t * (b.x() - a.x()),
            y: a.y() + t * (b.y() - a.y()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveMetrics {
    /// Hyperbolic distance between the curves.
    pub separation: f64,
    /// Hyperbolic diameter of the outer curve.
    pub outer_diameter: f64,
}

/// Separation between `outer` and `inner` and the diameter of `outer`.
///
/// Vertex pairs are scanned exhaustively when small and coarse-to-fine
/// otherwise; the best pairs are then refined over their adjacent segments by
/// nested golden-section search.
pub fn curve_metrics(outer: &CurvePolyline, inner: &CurvePolyline) -> Result<CurveMetrics> {
    if !outer.is_closed() || !inner.is_closed() {
        return Err(CmcError::Input("domain curves must be closed".into()));
    }
    check_nested(outer, inner)?;
    let sep = extremal_distance(outer, inner, Extremum::Min);
    let diam = extremal_distance(outer, outer, Extremum::Max);
    Ok(CurveMetrics {
        separation: proxy_to_distance(sep),
        outer_diameter: proxy_to_distance(diam),
    })
}

pub(crate) fn check_nested(outer: &CurvePolyline, inner: &CurvePolyline) -> Result<()> {
    if let Some((i, j)) = first_crossing(outer, inner) {
        return Err(CmcError::NotNested(format!(
            "outer segment {i} crosses inner segment {j}"
        )));
    }
    if !outer.contains(inner.vertices()[0]) {
        return Err(CmcError::NotNested(
            "inner curve lies outside the outer curve".into(),
        ));
    }
    if inner.contains(outer.vertices()[0]) {
        return Err(CmcError::NotNested("outer curve lies inside the inner curve".into()));
    }
    Ok(())
}

fn segments_intersect(p1: DiskPoint, p2: DiskPoint, q1: DiskPoint, q2: DiskPoint) -> bool {
    fn orient(a: DiskPoint, b: DiskPoint, c: DiskPoint) -> f64 {
        (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x())
    }
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: DiskPoint, b: DiskPoint, c: DiskPoint, o: f64| {
        o == 0.0
            && c.x() >= a.x().min(b.x())
            && c.x() <= a.x().max(b.x())
            && c.y() >= a.y().min(b.y())
            && c.y() <= a.y().max(b.y())
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// First intersecting segment pair, found by bucketing segments on x.
fn first_crossing(a: &CurvePolyline, b: &CurvePolyline) -> Option<(usize, usize)> {
    let nseg = a.segment_count() + b.segment_count();
    let buckets = ((nseg as f64).sqrt().ceil() as usize).max(1);
    let width = 2.0 / buckets as f64;
    let bucket_of = |x: f64| (((x + 1.0) / width).floor().max(0.0) as usize).min(buckets - 1);

    let mut table: Vec<Vec<usize>> = vec![Vec::new(); buckets];
    for k in 0..a.segment_count() {
        let (p, q) = a.segment(k);
        for slot in table.iter_mut().take(bucket_of(p.x().max(q.x())) + 1).skip(bucket_of(p.x().min(q.x()))) {
            slot.push(k);
        }
    }
    for j in 0..b.segment_count() {
        let (p, q) = b.segment(j);
        let (ylo, yhi) = (p.y().min(q.y()), p.y().max(q.y()));
        for slot in table.iter().take(bucket_of(p.x().max(q.x())) + 1).skip(bucket_of(p.x().min(q.x()))) {
            for &k in slot {
                let (r, s) = a.segment(k);
                if r.y().max(s.y()) < ylo || r.y().min(s.y()) > yhi {
                    continue;
                }
                if segments_intersect(r, s, p, q) {
                    return Some((k, j));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Extremum {
    Min,
    Max,
}

impl Extremum {
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Extremum::Min => a < b,
            Extremum::Max => a > b,
        }
    }
}

const EXHAUSTIVE_PAIRS: usize = 4_000_000;
const COARSE_VERTICES: usize = 512;
const CANDIDATES: usize = 6;

/// Extremal distance proxy between two closed polylines (or within one).
fn extremal_distance(a: &CurvePolyline, b: &CurvePolyline, ext: Extremum) -> f64 {
    let (na, nb) = (a.len(), b.len());
    let candidates: Vec<(usize, usize)> = if na * nb <= EXHAUSTIVE_PAIRS {
        best_pairs(a, b, 1, 1, ext)
            .into_iter()
            .map(|(i, j, _)| (i, j))
            .collect()
    } else {
        let sa = na.div_ceil(COARSE_VERTICES).max(1);
        let sb = nb.div_ceil(COARSE_VERTICES).max(1);
        let coarse = best_pairs(a, b, sa, sb, ext);
        coarse
            .into_iter()
            .map(|(i, j, _)| {
                // local full-resolution window around each coarse candidate
                let mut best = (i, j, distance_proxy(a.vertices[i], b.vertices[j]));
                for di in -(2 * sa as isize)..=(2 * sa as isize) {
                    let ii = (i as isize + di).rem_euclid(na as isize) as usize;
                    for dj in -(2 * sb as isize)..=(2 * sb as isize) {
                        let jj = (j as isize + dj).rem_euclid(nb as isize) as usize;
                        let v = distance_proxy(a.vertices[ii], b.vertices[jj]);
                        if ext.better(v, best.2) {
                            best = (ii, jj, v);
                        }
                    }
                }
                (best.0, best.1)
            })
            .collect()
    };

    let mut best = match ext {
        Extremum::Min => f64::INFINITY,
        Extremum::Max => f64::NEG_INFINITY,
    };
    for (i, j) in candidates {
        let v = refine_pair(a, b, i, j, ext);
        if ext.better(v, best) {
            best = v;
        }
    }
    best
}

/// Best `CANDIDATES` vertex pairs on strided subsamples, spread over distinct
/// neighbourhoods.
fn best_pairs(a: &CurvePolyline, b: &CurvePolyline, sa: usize, sb: usize, ext: Extremum) -> Vec<(usize, usize, f64)> {
    let mut top: Vec<(usize, usize, f64)> = Vec::with_capacity(CANDIDATES + 1);
    for i in (0..a.len()).step_by(sa) {
        for j in (0..b.len()).step_by(sb) {
            let v = distance_proxy(a.vertices[i], b.vertices[j]);
            if top.len() == CANDIDATES && !ext.better(v, top[CANDIDATES - 1].2) {
                continue;
            }
            // keep candidates in distinct neighbourhoods
            if let Some(pos) = top
                .iter()
                .position(|&(ti, tj, _)| cyclic_gap(ti, i, a.len()) <= 2 * sa && cyclic_gap(tj, j, b.len()) <= 2 * sb)
            {
                if ext.better(v, top[pos].2) {
                    top.remove(pos);
                } else {
                    continue;
                }
            }
            let at = top.iter().position(|t| ext.better(v, t.2)).unwrap_or(top.len());
            top.insert(at, (i, j, v));
            top.truncate(CANDIDATES);
        }
    }
    top
}

fn cyclic_gap(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// Refine a vertex pair over the segments adjacent to each vertex.
fn refine_pair(a: &CurvePolyline, b: &CurvePolyline, i: usize, j: usize, ext: Extremum) -> f64 {
    let (na, nb) = (a.len(), b.len());
    let segs_a = [(i + na - 1) % na, i];
    let segs_b = [(j + nb - 1) % nb, j];
    let mut best = distance_proxy(a.vertices[i], b.vertices[j]);
    for &ka in &segs_a {
        for &kb in &segs_b {
            let inner = |t1: f64| {
                let p = a.lerp(ka, t1);
                let f = |t2: f64| distance_proxy(p, b.lerp(kb, t2));
                match ext {
                    Extremum::Min => golden_section_min(f, 0.0, 1.0, 1e-12).1,
                    Extremum::Max => golden_section_max(f, 0.0, 1.0, 1e-12).1,
                }
            };
            let v = match ext {
                Extremum::Min => golden_section_min(inner, 0.0, 1.0, 1e-12).1,
                Extremum::Max => golden_section_max(inner, 0.0, 1.0, 1e-12).1,
            };
            if ext.better(v, best) {
                best = v;
            }
        }
    }
    best
}
