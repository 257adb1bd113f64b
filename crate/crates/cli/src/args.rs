use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "symbell",
    version,
    about = "Permutation-invariant Bell operators, Dicke states and their spectra"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Directory for cached spectral reports.
    #[arg(long, global = true, env = "SYMBELL_CACHE")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Dicke state |m,n>.
    Dicke(DickeArgs),
    /// Build an operator and print its terms.
    Op(OpArgs),
    /// Expectation value of an operator in a state.
    Expect(ExpectArgs),
    /// Dense or iterative spectrum of an operator.
    Spectrum(SpectrumCmd),
    /// Exact Dicke eigenvector check of B_n for 3 <= n <= n-max.
    VerifyTheorem(VerifyArgs),
    /// Largest |eigenvalue| of B_n against the alternating-sum formula.
    Conjecture(ConjectureArgs),
    /// Local deterministic bound of an operator's Bell polynomial.
    Bound(BoundArgs),
    /// Parse bracket notation and compile it.
    Parse(ParseArgs),
    /// Extremal eigenvalues of B_n with their Dicke eigenstates.
    Table(TableArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OpFamily {
    DickeBell,
    WBell,
    Mermin3,
    Mabk4,
    Pi,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OperatorArgs {
    #[arg(long, value_enum)]
    pub op: OpFamily,
    /// Party count (dicke-bell).
    #[arg(long)]
    pub n: Option<usize>,
    /// Coefficient groups, e.g. "[0 0; 0 0 0; 1 0 -1 0]" (pi).
    #[arg(long)]
    pub notation: Option<String>,
    /// Observable for setting 1: x|y|z|bloch:a,b,c.
    #[arg(long, default_value = "x")]
    pub m1: String,
    /// Observable for setting 2.
    #[arg(long, default_value = "y")]
    pub m2: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DickeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// List every nonzero amplitude.
    #[arg(long)]
    pub amplitudes: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OpArgs {
    #[command(flatten)]
    pub operator: OperatorArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExpectArgs {
    #[command(flatten)]
    pub operator: OperatorArgs,
    /// dicke:m,n | w:n | ghz:n[,k] (phase k*pi/4) | basis:0101
    #[arg(long)]
    pub state: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMethodArg {
    Dense,
    Iter,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverArg {
    Lanczos,
    Power,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = SpectrumMethodArg::Dense)]
    pub method: SpectrumMethodArg,
    #[arg(long, value_enum, default_value_t = SolverArg::Lanczos)]
    pub solver: SolverArg,
    /// Eigenvalue tolerance (dense: absolute, default 1e-8; iter: relative, default 1e-10).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Matrix-vector product budget (iter).
    #[arg(long, default_value_t = 20_000)]
    pub max_iter: usize,
    /// Dense size guard in qubits (at most 14).
    #[arg(long, default_value_t = 12)]
    pub max_qubits: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumCmd {
    #[command(flatten)]
    pub operator: OperatorArgs,
    #[command(flatten)]
    pub spectrum: SpectrumArgs,
    /// Include the full eigenvalue list (dense).
    #[arg(long)]
    pub eigenvalues: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=14))]
    pub n_max: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConjectureArgs {
    /// Single party count.
    #[arg(long, conflicts_with = "n_max")]
    pub n: Option<usize>,
    /// Every party count from 3 to n-max.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[command(flatten)]
    pub spectrum: SpectrumArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMethodArg {
    Brute,
    Symmetric,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BoundArgs {
    #[command(flatten)]
    pub operator: OperatorArgs,
    #[arg(long, value_enum, default_value_t = BoundMethodArg::Symmetric)]
    pub method: BoundMethodArg,
    /// Largest assignment count brute force may enumerate.
    #[arg(long, default_value_t = symbell_core::bound::DEFAULT_BRUTE_GUARD)]
    pub guard: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ParseArgs {
    #[arg(long)]
    pub notation: String,
    #[arg(long, default_value = "x")]
    pub m1: String,
    #[arg(long, default_value = "y")]
    pub m2: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TableArgs {
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(3..=12))]
    pub n_max: u64,
}
