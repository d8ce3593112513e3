use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "boxdim", version, about = "Box dimension of spiral trajectories of planar vector fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Finest scale; chosen automatically when omitted.
    #[arg(long, global = true)]
    pub eps_min: Option<f64>,
    /// Coarsest scale; defaults to `eps_min * 2^((scales-1)/2)`.
    #[arg(long, global = true)]
    pub eps_max: Option<f64>,
    /// Number of scales in the regression.
    #[arg(long, global = true)]
    pub scales: Option<usize>,
    /// Seed for the randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON file with defaults for the global flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Run a canned scenario instead of a subcommand.
    #[arg(long, value_enum)]
    pub paper_case: Option<PaperCase>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperCase {
    /// `r = phi^(-1/4)` and its inversion.
    Fig1,
    /// The same spiral on the Riemann sphere of radius 1/2.
    Fig2,
    /// The same spiral on the Poincare sphere of radius 1.
    Fig3,
    /// Inverted Hopf sweep, k = 1.
    Hopf,
    /// Inverted Hopf-Takens sweep, l = 2, a1 = -2.
    Takens,
    /// Inverted Lienard system with a3 != 0.
    Lienard,
    /// Inverted damped oscillator, alpha = 2, beta = 1.
    Damped,
    /// The a-string a_k = k^2.
    String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a comparison spiral and its transforms to CSV.
    Spiral(SpiralArgs),
    /// Integrate a system and write the trajectory.
    Integrate(IntegrateArgs),
    /// Estimate a box dimension.
    Dim(DimArgs),
    /// Classify every arc over a parameter grid.
    Sweep(SweepArgs),
    /// Gap string and dimension of a sequence tending to infinity.
    String(StringArgs),
    /// Evaluate a closed-form dimension or content formula.
    Oracle(OracleArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// `r = c phi^(-alpha)`.
    Focus,
    /// `r = c phi^alpha`.
    FocusOut,
    /// `r = c exp(-a0 phi)`.
    Exponential,
    /// `r = a +- c phi^(-1/(m-1))`.
    Cycle,
    /// `r = a +- c exp(-beta phi)`.
    ExpCycle,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideArg {
    Inside,
    Outside,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Focus)]
    pub kind: ModelKind,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a0: Option<f64>,
    /// Limit-cycle radius.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub multiplicity: Option<u32>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = SideArg::Inside)]
    pub side: SideArg,
    #[arg(long, default_value_t = 1.0)]
    pub phi_start: f64,
    #[arg(long, default_value_t = 1.0)]
    pub coefficient: f64,
}

#[derive(Args, Debug, Clone)]
pub struct SpiralArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// End angle; defaults to the nucleus at `eps_min`.
    #[arg(long)]
    pub phi_max: Option<f64>,
    /// Also write the image under inversion.
    #[arg(long)]
    pub invert: bool,
    /// Also write the projection to the Riemann sphere of this radius.
    #[arg(long, value_name = "R")]
    pub riemann: Option<f64>,
    /// Also write the projection to the Poincare sphere of this radius.
    #[arg(long, value_name = "R")]
    pub poincare: Option<f64>,
    /// Also write the orthogonal disc projection of each sphere curve.
    #[arg(long)]
    pub disc: bool,
    /// File stem.
    #[arg(long, default_value = "spiral")]
    pub name: String,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("start").args(["rho0", "x0"])))]
pub struct IntegrateArgs {
    /// System spec as JSON, or `@path` to a JSON file.
    #[arg(long)]
    pub system: String,
    /// Initial radius on the positive x-axis.
    #[arg(long)]
    pub rho0: Option<f64>,
    /// Initial point `x,y`; forces the Cartesian solver.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, default_value_t = 200.0)]
    pub revolutions: f64,
    /// Angle step of the polar solver.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long)]
    pub backward: bool,
    #[arg(long, default_value = "trajectory")]
    pub name: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetArg {
    Focus,
    Cycle,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodArg {
    Sausage,
    Box,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("input").required(true).args(["curve", "system", "model", "sequence", "string_alpha"])))]
pub struct DimArgs {
    /// Curve CSV (with optional JSON sidecar).
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// System spec as JSON, or `@path`.
    #[arg(long)]
    pub system: Option<String>,
    /// Estimate the comparison spiral given by the model flags.
    #[arg(long)]
    pub model: bool,
    /// One-column CSV of a sequence tending to infinity.
    #[arg(long)]
    pub sequence: Option<PathBuf>,
    /// The point set `{k^alpha}`.
    #[arg(long)]
    pub string_alpha: Option<f64>,
    #[command(flatten)]
    pub model_args: ModelArgs,
    /// Arc of a system: focus, or a limit cycle.
    #[arg(long, value_enum, default_value_t = TargetArg::Focus)]
    pub target: TargetArg,
    /// Cycle index, by increasing radius.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    /// Start radius (focus) or offset from the cycle.
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long, default_value_t = 2e5)]
    pub max_phi: f64,
    /// Treat the curve as unbounded and estimate through inversion.
    #[arg(long)]
    pub unbounded: bool,
    #[arg(long, value_enum, default_value_t = MethodArg::Sausage)]
    pub method: MethodArg,
    /// Prefix length for sequences.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    /// Known exact value to report the gap against (curve input).
    #[arg(long)]
    pub oracle: Option<f64>,
    /// Repeat the estimate with the origin moved by a seeded random vector of this length.
    #[arg(long)]
    pub shift: Option<f64>,
    /// Write the analyzed arc as CSV.
    #[arg(long)]
    pub save_curve: bool,
    /// Write the sausage profile as CSV (curve, model and sequence input).
    #[arg(long)]
    pub save_profile: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    HopfInverted,
    TakensInverted,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("values").required(true).args(["grid", "from"])))]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Hopf order.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Hopf-Takens degree.
    #[arg(long, default_value_t = 2)]
    pub l: u32,
    /// Hopf-Takens coefficients `a0,...,a(l-1)`; the swept one is ignored.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<f64>,
    /// Index of the swept Hopf-Takens coefficient.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    /// Explicit grid, comma separated; empty gives an empty report.
    #[arg(long, allow_hyphen_values = true, num_args = 0..=1, default_missing_value = "")]
    pub grid: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["to", "steps"])]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long, default_value_t = 2e5)]
    pub max_phi: f64,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("seq").required(true).args(["alpha", "ratio", "sequence"])))]
pub struct StringArgs {
    /// `a_k = k^alpha`.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// `a_k = ratio^k`.
    #[arg(long)]
    pub ratio: Option<f64>,
    /// One-column CSV.
    #[arg(long)]
    pub sequence: Option<PathBuf>,
    /// Prefix length for generated sequences.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    /// Also estimate the point set `{a_k}` geometrically.
    #[arg(long)]
    pub geometric: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    /// Formula name; `--list` prints them.
    #[arg(required_unless_present = "list")]
    pub formula: Option<String>,
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub d1: Option<f64>,
}
