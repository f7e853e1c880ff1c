//! Numerical solution of the Dirichlet problem: a one-dimensional shooting
//! solver for rotational data and a lattice Newton solver for general
//! annular domains.

mod config;
mod disk;
mod grid;
mod radial;
mod sparse;

pub use config::SolverConfig;
pub use disk::{residual_field, solve_dirichlet, solve_disk, solve_disk_with, FieldSolution};
pub use grid::{BoundaryCurve, DiskGrid, GridNode, NodeKind};
pub use radial::{attainable_height_range, solve_radial, solve_radial_sampled, RadialProblem, RadialSample, RadialSolution};
