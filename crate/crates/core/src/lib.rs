//! Numerical toolkit for constant mean curvature graphs in H²×R.
//!
//! The crate is organised in layers:
//!
//! * [`hyperbolic`]: Poincaré disk geometry, curves and annular domains.
//! * [`profiles`]: rotational profiles (H-nodoids, catenoids, caps,
//!   horonodoids) and the quantities derived from them.
//! * [`criteria`]: existence and non-existence tests with numeric margins.
//! * [`barriers`]: sub- and supersolution fields used to certify solutions.
//! * [`solver`]: the radial solver and the finite-difference Newton solver.
//! * [`export`]: meshes, OBJ/CSV writers and solution dumps.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod barriers;
pub mod criteria;
pub mod error;
pub mod export;
pub mod hyperbolic;
pub mod numerics;
pub mod profiles;
pub mod solver;
mod serde_float;

pub use error::{CmcError, Result};
pub use hyperbolic::{
    conformal_factor, curve_metrics, distance_to_circle, distance_to_horocycle, hyperbolic_distance,
    make_circle_domain, AnnularDomain, CurveMetrics, CurvePolyline, DiskPoint, GeodesicCircle, Horocycle,
};
pub use profiles::{ProfileParams, ProfileRow};
pub use criteria::{CriteriaReport, ExistenceInput, Hypothesis, Theorem};
pub use barriers::{BarrierKind, BarrierSpec, ComparisonReport, SignCheck};
pub use solver::{DiskGrid, FieldSolution, RadialProblem, RadialSolution, SolverConfig};
pub use export::{MeshAxis, SurfaceMesh, Table};
