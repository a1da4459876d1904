use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "intgeo", version, about = "Exact kinematic formulas and their numerical checks")]
pub struct Cli {
    /// Output format; inferred from the --out extension when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file. Defaults to stdout, or to a file in $INTGEO_OUT_DIR.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for Monte Carlo runs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for Monte Carlo runs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// File of `key = value` lines supplying any flag not given here.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Only log warnings and errors.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Latex => "tex",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rotation group tables on R^n.
    So {
        #[command(subcommand)]
        op: SoOp,
    },
    /// Unitary group tables on C^n.
    Un {
        #[command(subcommand)]
        op: UnOp,
    },
    /// Real and complex space forms.
    Spaceform {
        #[command(subcommand)]
        op: SpaceformOp,
    },
    /// Monte Carlo estimates against exact predictions.
    Mc {
        #[command(subcommand)]
        op: McOp,
    },
    /// Run the self-check suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SoBasisArg {
    T,
    Mu,
    Psi,
    NijenhuisPrime,
    Nijenhuis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Standard,
    Unit,
}

#[derive(Debug, Subcommand)]
pub enum SoOp {
    /// k(φ) for every basis element.
    Kinematic {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_enum, default_value = "mu")]
        basis: SoBasisArg,
        #[arg(long, value_enum, default_value = "standard")]
        normalization: NormalizationArg,
    },
    /// a(φ) for every basis element, rotations with probability measure.
    Additive {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_enum, default_value = "mu")]
        basis: SoBasisArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UnBasisArg {
    Monomial,
    Tasaki,
    Hermitian,
}

#[derive(Debug, Subcommand)]
pub enum UnOp {
    /// k(φ) for every basis element.
    Kinematic {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_enum, default_value = "tasaki")]
        basis: UnBasisArg,
    },
    /// The blocks T^n_k of k(χ), k ≤ n.
    TasakiMatrices {
        #[arg(long)]
        dim: u32,
    },
    /// Bidegree (k, l) of k(μ_d), d = k + l - 2n, in Klain coordinates.
    Firstorder {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        deg_a: u32,
        #[arg(long)]
        deg_b: u32,
        /// The bidegree of a(μ_{k+l}) instead.
        #[arg(long)]
        additive: bool,
    },
    /// The unitary check suite up to the given dimension.
    Verify {
        #[arg(long)]
        dim: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexCheck {
    Bfs,
    Conjecture,
    Chapoton,
}

#[derive(Debug, Subcommand)]
pub enum SpaceformOp {
    /// k(τ_l) on the real space form of curvature λ.
    Real {
        #[arg(long)]
        dim: u32,
        /// Evaluate at this curvature, a rational such as 1 or -1/4.
        #[arg(long, allow_hyphen_values = true)]
        lambda_eval: Option<String>,
    },
    /// Checks on the complex space forms.
    Complex {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_enum, default_value = "bfs")]
        check: ComplexCheck,
    },
}

#[derive(Debug, Args)]
pub struct McCommon {
    #[arg(long)]
    pub dim: usize,
    /// JSON file with one body or a list of bodies.
    #[arg(long)]
    pub bodies: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
}

#[derive(Debug, Subcommand)]
pub enum McOp {
    /// Measure of motions bringing the two bodies into contact.
    Kinematic(McCommon),
    /// μ_k from random affine flats.
    Crofton {
        #[command(flatten)]
        common: McCommon,
        #[arg(long)]
        k: usize,
    },
    /// μ_{n-1} of a box or ball from random projections.
    Cauchy(McCommon),
    /// Volume of the parallel body at distance r.
    Steiner {
        #[command(flatten)]
        common: McCommon,
        #[arg(long)]
        radius: f64,
    },
    /// Mean volume of A + gB over rotations, n = 2, 3.
    Additive(McCommon),
    /// The twelve default cases.
    Suite {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    So,
    Un,
    Spaceform,
    Mc,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Every suite.
    #[arg(long)]
    pub all: bool,
    /// Suites to run; may be repeated.
    #[arg(long, value_enum)]
    pub suite: Vec<SuiteName>,
    /// Cap on the dimensions the suites go up to.
    #[arg(long)]
    pub max_dim: Option<u32>,
    /// Samples per Monte Carlo case.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
}
