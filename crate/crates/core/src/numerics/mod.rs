//! Scalar numerical kernels shared by the profile, criteria and solver layers.

mod quadrature;
mod roots;

pub use quadrature::{Quadrature, TanhSinh};
pub use roots::{brent, golden_section_max, golden_section_min, BrentOptions};
