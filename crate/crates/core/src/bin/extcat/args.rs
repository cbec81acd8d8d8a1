use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use extcat::catenary::CatenaryType;
use extcat::io::ProjectionMode;

#[derive(Debug, Parser)]
#[command(name = "extcat", version, about = "Extrinsic catenaries and minimal surfaces of revolution in hyperbolic space")]
pub struct Cli {
    /// TOML file with [solve], [revolve], [check] and [relax] sections.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Omit the version/timestamp comment line from output files.
    #[arg(long, global = true)]
    pub no_banner: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a catenary and write it as CSV.
    Solve(SolveArgs),
    /// Rotate a catenary into a surface and write an OBJ mesh.
    Revolve(RevolveArgs),
    /// Run the invariant suites and print a pass/fail table.
    Check(CheckArgs),
    /// Relax a discrete hanging chain with fixed endpoints and length.
    Relax(RelaxArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TypeArg {
    Elliptic,
    Hyperbolic,
    Parabolic,
}

impl From<TypeArg> for CatenaryType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::Elliptic => CatenaryType::Elliptic,
            TypeArg::Hyperbolic => CatenaryType::Hyperbolic,
            TypeArg::Parabolic => CatenaryType::Parabolic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProjectionArg {
    Ambient,
    Poincare,
}

impl From<ProjectionArg> for ProjectionMode {
    fn from(p: ProjectionArg) -> Self {
        match p {
            ProjectionArg::Ambient => ProjectionMode::Ambient,
            ProjectionArg::Poincare => ProjectionMode::PoincareBall,
        }
    }
}

/// Parameters of a catenary integration, shared by `solve` and `revolve`.
#[derive(Debug, Clone, Default, Args)]
pub struct CurveArgs {
    /// Catenary family [default: elliptic].
    #[arg(long = "type", value_enum)]
    pub ctype: Option<TypeArg>,
    /// Curvature radius of the hyperbolic plane [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// Additive multiplier in the weight [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Starting u coordinate [default: r].
    #[arg(long, allow_hyphen_values = true)]
    pub u0: Option<f64>,
    /// Starting v coordinate [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    /// Launch angle from d_u in radians [default: pi/6].
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: Option<f64>,
    /// Arc length to integrate [default: 4r].
    #[arg(long, allow_hyphen_values = true)]
    pub smax: Option<f64>,
    /// RK4 arc-length step [default: 1e-3 r].
    #[arg(long, allow_hyphen_values = true)]
    pub step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Output CSV path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RevolveArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Read the generating curve from a CSV written by `solve`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Number of rotation angles, ends included [default: 40].
    #[arg(long)]
    pub ntheta: Option<usize>,
    /// First rotation angle [default: 0, or -1 for hyperbolic and parabolic].
    #[arg(long, allow_hyphen_values = true)]
    pub theta_min: Option<f64>,
    /// Last rotation angle [default: 2 pi, or 1 for hyperbolic and parabolic].
    #[arg(long, allow_hyphen_values = true)]
    pub theta_max: Option<f64>,
    /// Number of curve samples used as mesh rows.
    #[arg(long)]
    pub rows: Option<usize>,
    /// Vertex coordinates written to the OBJ [default: ambient].
    #[arg(long, value_enum)]
    pub projection: Option<ProjectionArg>,
    /// Output OBJ path; the mean-curvature sidecar goes next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Seed for the random test curves [default: 20240607].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Restrict to these check families (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Random curves per randomized check.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RelaxArgs {
    /// Catenary family [default: elliptic].
    #[arg(long = "type", value_enum)]
    pub ctype: Option<TypeArg>,
    /// Curvature radius of the hyperbolic plane [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// First endpoint as `u,v`.
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<String>,
    /// Last endpoint as `u,v`.
    #[arg(long, allow_hyphen_values = true)]
    pub end: Option<String>,
    /// Number of links N.
    #[arg(long)]
    pub segments: Option<usize>,
    /// Relative excess of the chain length over the endpoint distance.
    #[arg(long, allow_hyphen_values = true)]
    pub slack: Option<f64>,
    /// Iteration cap [default: 200000].
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Stop when the projected gradient norm falls below this [default: 1e-8].
    #[arg(long, allow_hyphen_values = true)]
    pub grad_tol: Option<f64>,
    /// Initial projected-gradient step [default: 1e-2].
    #[arg(long, allow_hyphen_values = true)]
    pub step: Option<f64>,
    /// Additive multiplier in the weight [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Output chain CSV path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output JSON report path (defaults to the chain path with `.json`).
    #[arg(long)]
    pub report: Option<PathBuf>,
}
