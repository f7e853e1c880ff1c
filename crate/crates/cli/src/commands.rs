use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use cmc_core::criteria::{check_exist_above, check_exist_below, cone_threshold, crossover_distance, nonexist_bound_cyl, nonexist_bound_horo, report_nonexist_cyl, report_nonexist_horo};
use cmc_core::export::{field_table, mesh_graph, mesh_rotational, profile_csv_table, radial_table, write_field_dump, FieldHeader, MeshAxis, SurfaceMesh, Table};
use cmc_core::hyperbolic::{make_circle_domain, DomainFile};
use cmc_core::profiles::{cat_eval, profile_height, profile_table, slope_ratio, t_cutoff, x_peak, ProfileParams};
use cmc_core::solver::{solve_disk_with, solve_radial_sampled, RadialProblem, SolverConfig};
use cmc_core::{AnnularDomain, CmcError, DiskPoint, ExistenceInput, Horocycle, Result};
use log::warn;
use serde_json::{json, Value};

use crate::args::*;

/// What a command reports back to `main` on success.
pub enum Outcome {
    Done,
    /// A criteria report came out false.
    VerdictFalse,
    /// The solver stopped without converging; its output was still written.
    Unconverged,
}

fn emit(out: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let mut buf = Vec::new();
            body(&mut buf).map_err(|e| CmcError::Io {
                path: path.into(),
                source: e,
            })?;
            fs::write(path, buf).map_err(|e| CmcError::Io {
                path: path.into(),
                source: e,
            })
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock).map_err(|e| CmcError::Io {
                path: PathBuf::from("<stdout>"),
                source: e,
            })
        }
    }
}

fn emit_json(out: Option<&Path>, value: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CmcError::Parse(e.to_string()))?;
    emit(out, |w| writeln!(w, "{text}"))
}

/// JSON number, or `"inf"`/`"-inf"`/`"nan"` for non-finite values.
fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("nan")
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn format_or(output: &Output, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = output.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CmcError::Input(format!("format {f:?} is not available for this command")))
    }
}

fn load_domain_file(path: &Path, r: Option<f64>, big_r: Option<f64>) -> Result<AnnularDomain> {
    let text = fs::read_to_string(path).map_err(|e| CmcError::Io {
        path: path.into(),
        source: e,
    })?;
    let mut file = DomainFile::parse(&text)?;
    file.r = r.or(file.r);
    file.big_r = big_r.or(file.big_r);
    let (domain, warnings) = file.into_domain()?;
    for w in warnings {
        warn!("{w}");
    }
    Ok(domain)
}

fn domain_from(args: &DomainArgs) -> Result<AnnularDomain> {
    match (&args.domain, args.rho_in, args.rho_out) {
        (Some(path), None, None) => load_domain_file(path, None, None),
        (None, Some(a), Some(b)) => make_circle_domain(DiskPoint::ORIGIN, a, DiskPoint::ORIGIN, b),
        _ => Err(CmcError::Input("give either --domain or both --rho-in and --rho-out".into())),
    }
}

fn solver_config(args: &SolverArgs) -> Result<SolverConfig> {
    let mut cfg = match &args.config {
        Some(path) => SolverConfig::load(path)?,
        None => SolverConfig::default(),
    };
    if let Some(s) = args.spacing {
        cfg.spacing = s;
    }
    if let Some(t) = args.tol {
        cfg.tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn profile(args: &ProfileArgs) -> Result<Outcome> {
    let params = ProfileParams::new(args.mean_curvature, args.r)?;
    let out = args.output.out.as_deref();
    if let Some(s) = args.s {
        let value = json!({
            "params": params,
            "s": s,
            "height": num(profile_height(params, s)?),
            "phi": num(slope_ratio(params, s)?),
        });
        emit_json(out, &value)?;
        return Ok(Outcome::Done);
    }
    let rows = profile_table(params, args.n, args.s_max)?;
    match format_or(&args.output, Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Csv => emit(out, |w| profile_csv_table(&rows).write_to(w))?,
        _ => emit_json(out, &rows)?,
    }
    Ok(Outcome::Done)
}

pub fn criteria(args: &CriteriaArgs) -> Result<Outcome> {
    let (hc, h) = (args.mean_curvature, args.h);
    let report = match args.theorem {
        TheoremChoice::Horo => report_nonexist_horo(hc, h)?,
        TheoremChoice::Cyl => {
            let r = args
                .r
                .ok_or_else(|| CmcError::Input("--theorem cyl needs the cylinder radius --r".into()))?;
            report_nonexist_cyl(hc, r, h)?
        }
        TheoremChoice::Exist => {
            let input = match &args.domain {
                Some(path) => ExistenceInput::from_domain(&load_domain_file(path, args.r, args.big_r)?, hc, h),
                None => {
                    let need = |v: Option<f64>, flag: &str| {
                        v.ok_or_else(|| CmcError::Input(format!("{flag} is required without --domain")))
                    };
                    ExistenceInput {
                        mean_curvature: hc,
                        r: need(args.r, "--r")?,
                        big_r: need(args.big_r, "--R")?,
                        d: need(args.d, "--d")?,
                        diam_beta: need(args.diam_beta, "--diam-beta")?,
                        h,
                    }
                }
            };
            if h >= 0.0 {
                check_exist_above(&input)?
            } else {
                check_exist_below(&input)?
            }
        }
    };
    emit(args.out.as_deref(), |w| writeln!(w, "{}", report.to_json()))?;
    Ok(if report.verdict { Outcome::Done } else { Outcome::VerdictFalse })
}

pub fn solve_radial(args: &RadialArgs) -> Result<Outcome> {
    let problem = RadialProblem {
        mean_curvature: args.mean_curvature,
        rho_in: args.rho_in,
        rho_out: args.rho_out,
        h: args.h,
    };
    let sol = solve_radial_sampled(&problem, args.samples)?;
    let out = args.output.out.as_deref();
    match format_or(&args.output, Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Csv => emit(out, |w| radial_table(&sol).write_to(w))?,
        _ => emit_json(out, &sol)?,
    }
    Ok(Outcome::Done)
}

pub fn solve_disk(args: &DiskArgs) -> Result<Outcome> {
    let domain = domain_from(&args.domain)?;
    let cfg = solver_config(&args.solver)?;
    let field = solve_disk_with(&domain, args.mean_curvature, args.h, &cfg, None)?;
    let header = FieldHeader::from(&field);
    match &args.out {
        Some(path) => {
            write_field_dump(&field, path)?;
            emit_json(None, &header)?;
        }
        None => emit(None, |w| field_table(&field).write_to(w))?,
    }
    Ok(if field.converged { Outcome::Done } else { Outcome::Unconverged })
}

pub fn bounds(args: &BoundsArgs) -> Result<Outcome> {
    let hc = args.mean_curvature;
    let mut value = json!({
        "H": hc,
        "T_H": num(t_cutoff(hc)?),
        "horocylinder_bound": num(nonexist_bound_horo(hc)?),
    });
    if let Some(r) = args.r {
        value["r"] = num(r);
        value["cylinder_bound"] = num(nonexist_bound_cyl(hc, r)?);
        if r.is_finite() {
            value["x_peak"] = num(x_peak(hc, r)?);
            // No crossover when H = 0 or when the cone threshold is infinite (coth r <= 2H).
            value["crossover_distance"] = if hc > 0.0 && 1.0 / r.tanh() > 2.0 * hc {
                num(crossover_distance(hc, r)?)
            } else {
                Value::Null
            };
            if let Some(d) = args.d {
                value["d"] = num(d);
                value["catenoid_threshold"] = num(cat_eval(r, d)?);
                value["cone_threshold"] = num(cone_threshold(hc, r, d));
            }
        }
    }
    emit_json(args.out.as_deref(), &value)?;
    Ok(Outcome::Done)
}

fn emit_mesh(mesh: &SurfaceMesh, output: &Output) -> Result<()> {
    let out = output.out.as_deref();
    match format_or(output, Format::Obj, &[Format::Obj, Format::Csv, Format::Json])? {
        Format::Obj => emit(out, |w| mesh.write_obj_to(w)),
        Format::Csv => {
            let table = Table {
                header: ["x", "y", "z"].map(String::from).to_vec(),
                rows: mesh.vertices.iter().map(|v| v.to_vec()).collect(),
            };
            emit(out, |w| table.write_to(w))
        }
        Format::Json => emit_json(out, mesh),
    }
}

pub fn mesh(args: &MeshArgs) -> Result<Outcome> {
    match args.kind {
        MeshKind::Rotational => {
            let r = args
                .r
                .ok_or_else(|| CmcError::Input("rotational meshes need the neck radius --r".into()))?;
            let params = ProfileParams::new(args.mean_curvature, r)?;
            let axis = if params.is_horo() {
                MeshAxis::Horocycle(Horocycle::new([1.0, 0.0], 0.0)?)
            } else {
                MeshAxis::Centre(DiskPoint::ORIGIN)
            };
            let mesh = mesh_rotational(params, axis, args.n_radial, args.n_angular, args.reflect, args.s_max)?;
            emit_mesh(&mesh, &args.output)?;
            Ok(Outcome::Done)
        }
        MeshKind::Graph => {
            let h = args
                .h
                .ok_or_else(|| CmcError::Input("graph meshes need the inner height --h".into()))?;
            let domain = domain_from(&args.domain)?;
            let cfg = solver_config(&args.solver)?;
            let field = solve_disk_with(&domain, args.mean_curvature, h, &cfg, None)?;
            if !field.converged {
                warn!("solver did not converge; no mesh written");
                return Ok(Outcome::Unconverged);
            }
            emit_mesh(&mesh_graph(&field)?, &args.output)?;
            Ok(Outcome::Done)
        }
    }
}
