//! Surface meshes and file writers.
//!
//! Meshes use raw Poincaré disk coordinates for `x, y` and the height for `z`.
//! This is not an isometric picture of H²×R: horizontal distances shrink
//! toward the unit circle.

mod write;

use serde::{Deserialize, Serialize};

use crate::error::{CmcError, Result};
use crate::hyperbolic::{point_in_direction, DiskPoint, Horocycle};
use crate::profiles::{profile_height, ProfileParams};
use crate::solver::FieldSolution;

pub use write::{
    field_table, format_float, profile_csv_table, radial_table, write_csv, write_field_dump, write_obj, FieldHeader, Table,
};

/// Triangles with smaller area are dropped.
const MIN_AREA: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl SurfaceMesh {
    fn push_face(&mut self, f: [usize; 3]) {
        if triangle_area(self.vertices[f[0]], self.vertices[f[1]], self.vertices[f[2]]) >= MIN_AREA {
            self.faces.push(f);
        }
    }
}

fn triangle_area(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let n = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt()
}

/// Rotation axis of a rotational surface: a point for finite necks and caps,
/// a horocycle (the neck itself) for horonodoids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshAxis {
    Centre(DiskPoint),
    Horocycle(Horocycle),
}

/// Sample a rotational surface on `n_radial` rings `s ∈ [0, s_max]`,
/// `s_max = min(T_H, s_cap)`, with `n_angular` points per ring. With
/// `reflect` the mirror image below the slice is added, glued along the
/// `s = 0` ring.
pub fn mesh_rotational(
    params: ProfileParams,
    axis: MeshAxis,
    n_radial: usize,
    n_angular: usize,
    reflect: bool,
    s_cap: Option<f64>,
) -> Result<SurfaceMesh> {
    if n_radial < 2 || n_angular < 3 {
        return Err(CmcError::Input(format!(
            "mesh resolution must be at least 2 x 3, got {n_radial} x {n_angular}"
        )));
    }
    let mut s_max = params.domain_end();
    if let Some(cap) = s_cap {
        if !(cap > 0.0) {
            return Err(CmcError::Input(format!("radial cap must be positive, got {cap}")));
        }
        s_max = s_max.min(cap);
    }
    if !s_max.is_finite() {
        return Err(CmcError::Input(
            "the profile is defined on [0, inf); give a radial cap".into(),
        ));
    }
    let r = params.neck_radius;
    match (axis, params.is_horo()) {
        (MeshAxis::Horocycle(_), false) | (MeshAxis::Centre(_), true) => {
            return Err(CmcError::Input(
                "horocycle axes go with r = inf and centre axes with finite r".into(),
            ))
        }
        _ => {}
    }
    let ring_s: Vec<f64> = (0..n_radial)
        .map(|k| if k + 1 == n_radial { s_max } else { s_max * k as f64 / (n_radial - 1) as f64 })
        .collect();
    let heights = ring_s
        .iter()
        .map(|&s| profile_height(params, s))
        .collect::<Result<Vec<f64>>>()?;

    // A cap's first ring is its centre, a single vertex.
    let pole = r == 0.0;
    let closed = !params.is_horo();
    let ring_point = |s: f64, j: usize| -> Result<DiskPoint> {
        match axis {
            MeshAxis::Centre(c) => {
                let theta = std::f64::consts::TAU * j as f64 / n_angular as f64;
                point_in_direction(c, theta.cos(), theta.sin(), r + s)
            }
            MeshAxis::Horocycle(hc) => {
                let half = hc.offset.exp();
                let t = -half + 2.0 * half * j as f64 / (n_angular - 1) as f64;
                hc.point(t, s)
            }
        }
    };

    let mut mesh = SurfaceMesh::default();
    // ring index -> first vertex, with the pole stored once
    let mut ring_start = Vec::with_capacity(2 * n_radial);
    for (k, (&s, &z)) in ring_s.iter().zip(&heights).enumerate() {
        ring_start.push(mesh.vertices.len());
        if pole && k == 0 {
            let MeshAxis::Centre(c) = axis else { unreachable!() };
            mesh.vertices.push([c.x(), c.y(), z]);
            continue;
        }
        for j in 0..n_angular {
            let p = ring_point(s, j)?;
            mesh.vertices.push([p.x(), p.y(), z]);
        }
    }
    let mut mirror_start = ring_start.clone();
    if reflect {
        for k in 1..n_radial {
            mirror_start[k] = mesh.vertices.len();
            let start = ring_start[k];
            for j in 0..n_angular {
                let [x, y, z] = mesh.vertices[start + j];
                mesh.vertices.push([x, y, -z]);
            }
        }
    }

    let sheets: &[(&[usize], bool)] = if reflect {
        &[(&ring_start, false), (&mirror_start, true)]
    } else {
        &[(&ring_start, false)]
    };
    let spans = if closed { n_angular } else { n_angular - 1 };
    for &(starts, flip) in sheets {
        for k in 0..n_radial - 1 {
            for j in 0..spans {
                let jn = (j + 1) % n_angular;
                let (b0, b1) = (starts[k + 1] + j, starts[k + 1] + jn);
                let tris: Vec<[usize; 3]> = if pole && k == 0 {
                    vec![[starts[0], b0, b1]]
                } else {
                    let (a0, a1) = (starts[k] + j, starts[k] + jn);
                    vec![[a0, b0, b1], [a0, b1, a1]]
                };
                for [a, b, c] in tris {
                    mesh.push_face(if flip { [a, c, b] } else { [a, b, c] });
                }
            }
        }
    }
    Ok(mesh)
}

/// Triangulated graph of a converged field: one vertex per grid node.
pub fn mesh_graph(field: &FieldSolution) -> Result<SurfaceMesh> {
    if !field.converged {
        return Err(CmcError::Input(format!(
            "refusing to mesh an unconverged field (residual {:.3e} after {} iterations)",
            field.residual_inf, field.newton_iters
        )));
    }
    let mut mesh = SurfaceMesh {
        vertices: field
            .grid
            .nodes()
            .iter()
            .zip(&field.u)
            .map(|(n, &u)| [n.point.x(), n.point.y(), u])
            .collect(),
        faces: Vec::new(),
    };
    for f in field.grid.triangles() {
        mesh.push_face(f);
    }
    Ok(mesh)
}
