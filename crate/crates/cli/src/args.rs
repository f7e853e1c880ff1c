use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Constant mean curvature graphs over annuli in H²×R: profiles, existence
/// criteria, solvers and meshes.
#[derive(Debug, Parser)]
#[command(name = "cmc", version)]
pub struct Cli {
    /// Log more (repeat for debug output).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate or tabulate a rotational profile (cap, nodoid, catenoid, horonodoid).
    #[command(allow_negative_numbers = true)]
    Profile(ProfileArgs),
    /// Existence and non-existence reports with numeric margins.
    #[command(allow_negative_numbers = true)]
    Criteria(CriteriaArgs),
    /// Rotational solution over a concentric annulus.
    #[command(allow_negative_numbers = true)]
    SolveRadial(RadialArgs),
    /// Finite-difference solution over a general annulus.
    #[command(allow_negative_numbers = true)]
    SolveDisk(DiskArgs),
    /// Height bounds and the catenoid/cone crossover distance.
    #[command(allow_negative_numbers = true)]
    Bounds(BoundsArgs),
    /// Rotational or graph surface meshes.
    #[command(allow_negative_numbers = true)]
    Mesh(MeshArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Obj,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Mean curvature.
    #[arg(long = "H")]
    pub mean_curvature: f64,
    /// Neck radius: 0 for the cap, `inf` for the horonodoid.
    #[arg(long)]
    pub r: f64,
    /// Evaluate at this distance only.
    #[arg(long)]
    pub s: Option<f64>,
    /// Rows of the table.
    #[arg(long, default_value_t = 101)]
    pub n: usize,
    /// Upper end of the table (defaults to T_H).
    #[arg(long)]
    pub s_max: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremChoice {
    /// Existence; the sign of h selects the inner-above or inner-below test.
    Exist,
    /// Slab bound inside a horocylinder.
    Horo,
    /// Slab bound inside a cylinder of radius --r.
    Cyl,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    /// JSON domain file with "outer", "inner" and optional "r", "R".
    #[arg(long)]
    pub domain: Option<PathBuf>,
    /// Inner radius of a concentric annulus centred at the origin.
    #[arg(long)]
    pub rho_in: Option<f64>,
    /// Outer radius of a concentric annulus centred at the origin.
    #[arg(long)]
    pub rho_out: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CriteriaArgs {
    #[arg(long, value_enum, default_value = "exist")]
    pub theorem: TheoremChoice,
    /// Mean curvature H >= 0.
    #[arg(long = "H")]
    pub mean_curvature: f64,
    /// Height of the inner curve, or the slab height for the bounds.
    #[arg(long)]
    pub h: f64,
    #[arg(long)]
    pub domain: Option<PathBuf>,
    /// Interior circle radius (cylinder radius for --theorem cyl).
    #[arg(long)]
    pub r: Option<f64>,
    /// Exterior circle radius.
    #[arg(long = "R")]
    pub big_r: Option<f64>,
    /// Distance between the curves.
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub diam_beta: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RadialArgs {
    /// Mean curvature H >= 0.
    #[arg(long = "H")]
    pub mean_curvature: f64,
    /// Height of the inner curve; the outer curve sits at height 0.
    #[arg(long)]
    pub h: f64,
    /// Radius of the inner circle, centred at the origin.
    #[arg(long)]
    pub rho_in: f64,
    /// Radius of the outer circle.
    #[arg(long)]
    pub rho_out: f64,
    /// Number of equally spaced radii in the output table.
    #[arg(long, default_value_t = 257)]
    pub samples: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Lattice spacing in the disk model.
    #[arg(long)]
    pub spacing: Option<f64>,
    /// Residual tolerance relative to the largest conformal factor.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Solver configuration (JSON, or TOML by extension); flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiskArgs {
    /// Mean curvature H >= 0.
    #[arg(long = "H")]
    pub mean_curvature: f64,
    /// Height of the inner curve; the outer curve sits at height 0.
    #[arg(long)]
    pub h: f64,
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// CSV dump of (x, y, u); a JSON header is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Mean curvature H >= 0.
    #[arg(long = "H")]
    pub mean_curvature: f64,
    /// Neck or cylinder radius for the radius-dependent quantities.
    #[arg(long)]
    pub r: Option<f64>,
    /// Distance for the cone threshold.
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeshKind {
    Rotational,
    Graph,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[arg(long, value_enum, default_value = "rotational")]
    pub kind: MeshKind,
    /// Mean curvature H >= 0.
    #[arg(long = "H")]
    pub mean_curvature: f64,
    /// Neck radius of a rotational mesh.
    #[arg(long)]
    pub r: Option<f64>,
    /// Inner height of a graph mesh.
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long, default_value_t = 32)]
    pub n_radial: usize,
    #[arg(long, default_value_t = 64)]
    pub n_angular: usize,
    /// Add the mirror image below the slice.
    #[arg(long)]
    pub reflect: bool,
    /// Radial extent of a rotational mesh (capped at T_H).
    #[arg(long)]
    pub s_max: Option<f64>,
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: Output,
}
