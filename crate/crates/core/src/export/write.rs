//! Deterministic text writers: CSV tables, Wavefront OBJ, solution dumps.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::SurfaceMesh;
use crate::error::{CmcError, Result};
use crate::profiles::ProfileRow;
use crate::solver::{FieldSolution, RadialSolution};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A numeric table with a fixed set of named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(CmcError::Input(format!(
                "row has {} columns, table has {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_to(&self, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

impl SurfaceMesh {
    /// `v x y z` lines followed by 1-based `f i j k` lines.
    pub fn write_obj_to(&self, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        for v in &self.vertices {
            writeln!(out, "v {} {} {}", format_float(v[0]), format_float(v[1]), format_float(v[2]))?;
        }
        for f in &self.faces {
            writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
        }
        Ok(())
    }
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| CmcError::io(path, e))?;
    let mut out = BufWriter::new(file);
    body(&mut out)
        .and_then(|_| out.flush())
        .map_err(|e| CmcError::io(path, e))
}

pub fn write_obj(mesh: &SurfaceMesh, path: &Path) -> Result<()> {
    write_file(path, |out| mesh.write_obj_to(out))
}

pub fn write_csv(table: &Table, path: &Path) -> Result<()> {
    write_file(path, |out| table.write_to(out))
}

/// Columns `s, height, phi, flux_residual`.
pub fn profile_csv_table(rows: &[ProfileRow]) -> Table {
    Table {
        header: ["s", "height", "phi", "flux_residual"].map(String::from).to_vec(),
        rows: rows.iter().map(|r| vec![r.s, r.height, r.phi, r.flux_residual]).collect(),
    }
}

/// Columns `rho, u, phi`.
pub fn radial_table(sol: &RadialSolution) -> Table {
    Table {
        header: ["rho", "u", "phi"].map(String::from).to_vec(),
        rows: sol.samples.iter().map(|s| vec![s.rho, s.u, s.phi]).collect(),
    }
}

/// Columns `x, y, u`, one row per grid node.
pub fn field_table(field: &FieldSolution) -> Table {
    Table {
        header: ["x", "y", "u"].map(String::from).to_vec(),
        rows: field
            .grid
            .nodes()
            .iter()
            .zip(&field.u)
            .map(|(n, &u)| vec![n.point.x(), n.point.y(), u])
            .collect(),
    }
}

/// Sidecar of a solution dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub residual_inf: f64,
    pub iters: usize,
    pub converged: bool,
}

impl From<&FieldSolution> for FieldHeader {
    fn from(f: &FieldSolution) -> Self {
        FieldHeader {
            residual_inf: f.residual_inf,
            iters: f.newton_iters,
            converged: f.converged,
        }
    }
}

/// Write the `x, y, u` CSV to `path` and the header JSON next to it (same
/// stem, `.json` extension). Returns the header path.
pub fn write_field_dump(field: &FieldSolution, path: &Path) -> Result<PathBuf> {
    write_csv(&field_table(field), path)?;
    let header_path = path.with_extension("json");
    let json = serde_json::to_string_pretty(&FieldHeader::from(field)).map_err(|e| CmcError::Parse(e.to_string()))?;
    write_file(&header_path, |out| writeln!(out, "{json}"))?;
    Ok(header_path)
}
