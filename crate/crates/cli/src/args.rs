use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use wrightlens::grid::{DEFAULT_ANGLES, DEFAULT_MAX_RADIUS, DEFAULT_RADII};

use crate::complex::parse_complex;

#[derive(Parser, Debug)]
#[command(
    name = "wrightlens",
    version,
    about = "Wright-function operator, coefficient bounds, class membership and radii"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate W_{α,β}(z) = Σ_{n≥1} z^n / (Γ(αn + β) n!)
    #[command(allow_negative_numbers = true)]
    Wright(WrightCmd),
    /// Tabulate φ_n = 1/(Γ(αn + β) n!)
    #[command(allow_negative_numbers = true)]
    PhiTable(PhiTableCmd),
    /// Coefficient bounds A_n, recursion against closed product
    #[command(allow_negative_numbers = true)]
    Bounds(BoundsCmd),
    /// Radius of starlikeness or convexity of order ρ
    #[command(allow_negative_numbers = true)]
    Radius(RadiusCmd),
    /// Test a coefficient file for membership in the class
    #[command(allow_negative_numbers = true)]
    Member(MemberCmd),
    /// Build a class member from a Schwarz polynomial
    #[command(allow_negative_numbers = true)]
    Generate(GenerateCmd),
    /// Residuals of the coefficient identities on a generated pair (f, τ)
    #[command(allow_negative_numbers = true)]
    VerifyIdentities(VerifyCmd),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct WrightArgs {
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ClassArgs {
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 2.0)]
    pub gamma: f64,
    /// Accept 0 < γ ≤ 1
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GridArgs {
    /// Number of sample circles (log spaced)
    #[arg(long, default_value_t = DEFAULT_RADII)]
    pub radii: usize,
    /// Number of sample angles per circle
    #[arg(long, default_value_t = DEFAULT_ANGLES)]
    pub angles: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_RADIUS)]
    pub max_radius: f64,
}

#[derive(Args, Debug)]
pub struct WrightCmd {
    #[command(flatten)]
    pub wright: WrightArgs,
    /// Argument in the form a+bi
    #[arg(long, value_parser = parse_complex)]
    pub z: Complex64,
}

#[derive(Args, Debug)]
pub struct PhiTableCmd {
    #[command(flatten)]
    pub wright: WrightArgs,
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
}

#[derive(Args, Debug)]
pub struct BoundsCmd {
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub wright: WrightArgs,
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindArg {
    Star,
    Convex,
}

#[derive(Args, Debug)]
pub struct RadiusCmd {
    pub kind: KindArg,
    /// Order ρ in [0, 1)
    #[arg(long, default_value_t = 0.0)]
    pub rho: f64,
    /// Single unit weight at this index
    #[arg(long, conflicts_with = "weights")]
    pub extremal_n: Option<usize>,
    /// Weight file with header `n,weight`
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Sweep ρ = i/steps, i = 0 … steps − 1
    #[arg(long)]
    pub curve: bool,
    #[arg(long, default_value_t = 50, requires = "curve")]
    pub steps: usize,
    /// Write the curve CSV here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Fail with exit code 4 when doubling n_max moves the radius
    #[arg(long)]
    pub strict: bool,
}

#[derive(Args, Debug)]
pub struct MemberCmd {
    /// Coefficient file with header `n,re,im`
    #[arg(long)]
    pub coeffs: PathBuf,
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub wright: WrightArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Also scan the convolution test over this many points η on the unit circle
    #[arg(long)]
    pub scan_eta: Option<usize>,
    /// Write the sampled Re τ grid here
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenerateCmd {
    /// Coefficients c_1,c_2,… of w(z) = Σ c_k z^k, each a+bi
    #[arg(long, allow_hyphen_values = true)]
    pub schwarz: String,
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub wright: WrightArgs,
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
    /// Write the generated coefficient file here
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyCmd {
    /// Schwarz coefficients c_1,c_2,…; random (seeded by WRIGHTLENS_SEED) when absent
    #[arg(long, allow_hyphen_values = true)]
    pub schwarz: Option<String>,
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub wright: WrightArgs,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
}
