//! Command-line front end: non-interacting spectra, symmetry tables, weak-coupling and
//! near-unitary splittings, and exact diagonalization in one symmetry sector.

pub mod commands;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "fewbody", version, about = "Symmetry-classified spectra of few identical particles in 1D traps")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Worker threads for the library's parallel loops.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Irrep shapes and dimensions, standard and semistandard tableaux.
    Tableaux(TableauxArgs),
    /// Non-interacting levels: energy, degeneracy, irrep content and flags.
    Spectrum(SpectrumArgs),
    /// Spin-space decomposition and physical state counts.
    Spin(SpinArgs),
    /// First-order splitting at weak coupling or near the unitary limit.
    Splitting(SplittingArgs),
    /// Unitary-limit snippet levels, optionally with tunneling amplitudes.
    Unitary(UnitaryArgs),
    /// Exact diagonalization inside one symmetry sector.
    Exactdiag(ExactArgs),
    /// Irrep-dimension catalogs of the minimal symmetry groups.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TrapChoice {
    Harmonic,
    SquareWell,
    Table,
}

#[derive(Args, Debug)]
pub struct TrapArgs {
    #[arg(long, value_enum, default_value = "harmonic")]
    pub trap: TrapChoice,
    /// `n energy [parity]` lines, for `--trap table`.
    #[arg(long, required_if_eq("trap", "table"))]
    pub trap_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TruncArgs {
    /// Keep compositions with total excitation at most this.
    #[arg(long, conflicts_with = "emax")]
    pub xmax: Option<usize>,
    /// Keep compositions with total energy at most this (trap units).
    #[arg(long)]
    pub emax: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InteractionChoice {
    Contact,
    Kernel,
}

#[derive(Args, Debug)]
pub struct InteractionArgs {
    #[arg(long, value_enum, default_value = "contact")]
    pub interaction: InteractionChoice,
    /// `r value` lines of an even kernel, for `--interaction kernel`.
    #[arg(long, required_if_eq("interaction", "kernel"))]
    pub kernel_file: Option<PathBuf>,
    /// Interaction strength.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub g: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatsChoice {
    Boson,
    Fermion,
}

#[derive(Args, Debug)]
pub struct TableauxArgs {
    #[arg(long)]
    pub n: usize,
    /// List the standard tableaux of this shape, e.g. `3,1` or `21^2`.
    #[arg(long)]
    pub shape: Option<String>,
    /// List semistandard tableaux of `--shape` with this content, e.g. `1,2,1`.
    #[arg(long, requires = "shape")]
    pub content: Option<String>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub trap: TrapArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub trunc: TruncArgs,
}

#[derive(Args, Debug)]
pub struct SpinArgs {
    #[arg(long)]
    pub n: usize,
    /// Number of internal states per particle.
    #[arg(long)]
    pub j: usize,
    #[arg(long, value_enum, default_value = "fermion")]
    pub stats: StatsChoice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SplitMode {
    Weak,
    NearUnitary,
}

#[derive(Args, Debug)]
pub struct SplittingArgs {
    #[arg(long, value_enum)]
    pub mode: SplitMode,
    #[command(flatten)]
    pub trap: TrapArgs,
    #[command(flatten)]
    pub interaction: InteractionArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub trunc: TruncArgs,
    /// Weak mode: one composition such as `0,0,1,2` instead of whole levels.
    #[arg(long)]
    pub composition: Option<String>,
    /// Weak mode: level diagram over `g` as `from:to:steps`.
    #[arg(long)]
    pub sweep_g: Option<String>,
    /// Near-unitary mode: index of the unitary level, 0 for the ground level.
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    /// Near-unitary mode, N=4: outer amplitude.
    #[arg(long, requires = "u", conflicts_with = "amps")]
    pub t: Option<f64>,
    /// Near-unitary mode, N=4: inner amplitude.
    #[arg(long, requires = "t")]
    pub u: Option<f64>,
    /// Near-unitary mode: all amplitudes `a_1,..,a_(N-1)`.
    #[arg(long)]
    pub amps: Option<String>,
    /// Near-unitary mode, N=4: level diagram over t/u as `from:to:steps`.
    #[arg(long, conflicts_with_all = ["t", "u", "amps"])]
    pub sweep_ratio: Option<String>,
}

#[derive(Args, Debug)]
pub struct UnitaryArgs {
    #[command(flatten)]
    pub trap: TrapArgs,
    #[arg(long)]
    pub n: usize,
    /// Number of levels.
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    /// Also compute the tunneling amplitudes of every level.
    #[arg(long)]
    pub amplitudes: bool,
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    #[command(flatten)]
    pub trap: TrapArgs,
    #[command(flatten)]
    pub interaction: InteractionArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub trunc: TruncArgs,
    /// Spatial irrep, e.g. `31`.
    #[arg(long, conflicts_with = "stats")]
    pub irrep: Option<String>,
    #[arg(long, value_enum)]
    pub stats: Option<StatsChoice>,
    /// Internal states per particle, with `--stats`.
    #[arg(long, default_value_t = 1, requires = "stats")]
    pub j: usize,
    /// Spin irrep, with `--stats` and `--j` above 1, e.g. `2^2`.
    #[arg(long, requires = "stats")]
    pub spin: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CatalogKind {
    Asymmetric,
    Symmetric,
    Harmonic,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub trap: CatalogKind,
}
