use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "kuramotoq", version, about = "Synchronization thresholds of classical and quantum Kuramoto rotors")]
pub struct Cli {
    /// JSON or TOML file with any of the settings below; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "KURAMOTOQ_THREADS")]
    pub threads: Option<usize>,

    /// Write CSV here instead of stdout; companion metadata files go alongside.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical coupling of the massless classical model with noise D.
    ClassicalJc {
        #[command(flatten)]
        dist: DistArgs,
        /// Noise strength D; 0 selects the noiseless closed form.
        #[arg(long)]
        noise: Option<f64>,
    },
    /// Critical coupling of the overdamped quantum model.
    QuantumJc {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        quantum: QuantumArgs,
        #[arg(long)]
        temp: Option<f64>,
    },
    /// Quantum and classical thresholds along a temperature grid.
    SweepTemperature {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        quantum: QuantumArgs,
        #[command(flatten)]
        temps: TempGridArgs,
    },
    /// Quantum threshold for a family of Gaussian widths.
    SweepSigma {
        #[command(flatten)]
        quantum: QuantumArgs,
        #[command(flatten)]
        temps: TempGridArgs,
        /// Comma-separated ascending widths.
        #[arg(long, value_delimiter = ',')]
        sigmas: Option<Vec<f64>>,
    },
    /// Critical temperature as a function of the coupling.
    PhaseDiagram {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        quantum: QuantumArgs,
        #[command(flatten)]
        couplings: CouplingGridArgs,
    },
    /// Stationary order parameter of a simulated rotor ensemble.
    Simulate {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        sim: SimArgs,
        /// One or more couplings, comma separated.
        #[arg(long, value_delimiter = ',')]
        coupling: Option<Vec<f64>>,
        #[arg(long)]
        noise: Option<f64>,
        /// Dump the order-parameter history of the first realization instead.
        #[arg(long)]
        trajectory: bool,
        /// Record every this many steps in trajectory mode.
        #[arg(long)]
        stride: Option<usize>,
    },
    /// Empirical critical coupling from finite-size crossings.
    EstimateJc {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long)]
        noise: Option<f64>,
        /// Ascending system sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[command(flatten)]
        couplings: CouplingGridArgs,
    },
    /// Barrier height of the two-rotor washboard potential.
    Barrier {
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        coupling: Option<f64>,
    },
    /// Run the oracle cross-checks and report PASS/FAIL for each.
    Verify {
        /// Only the fast checks.
        #[arg(long)]
        quick: bool,
        /// Scale the imaginary action, to confirm that the checks can fail.
        #[arg(long, hide = true)]
        perturb_action: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    Gaussian,
    Lorentzian,
    Tabulated,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DistArgs {
    #[arg(long, value_enum)]
    pub dist: Option<DistKind>,
    /// Gaussian standard deviation.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Lorentzian half width.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Two-column CSV (omega, density) for a tabulated distribution.
    #[arg(long, value_name = "FILE")]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrefactorArg {
    AsPrinted,
    ExactSine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    MasslessStep,
    FiniteDamping,
}

#[derive(Debug, Clone, Default, Args)]
pub struct QuantumArgs {
    /// Overdamped ratio mγ/ħ (default 7).
    #[arg(long)]
    pub mu: Option<f64>,
    /// Bath cutoff over γ (default 50·max(1, mu)).
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long, value_enum)]
    pub prefactor: Option<PrefactorArg>,
    #[arg(long, value_enum)]
    pub profile: Option<ProfileArg>,
    /// Relative tolerance of the one-dimensional integrals.
    #[arg(long)]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TempGridArgs {
    /// Explicit comma-separated ascending temperatures.
    #[arg(long, value_delimiter = ',')]
    pub temps: Option<Vec<f64>>,
    #[arg(long)]
    pub temp_min: Option<f64>,
    #[arg(long)]
    pub temp_max: Option<f64>,
    /// Points of the logarithmic grid between temp-min and temp-max.
    #[arg(long)]
    pub temp_points: Option<usize>,
    /// Leave temperature 0 off the generated grid.
    #[arg(long)]
    pub no_zero: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CouplingGridArgs {
    /// Explicit comma-separated ascending couplings.
    #[arg(long, value_delimiter = ',')]
    pub couplings: Option<Vec<f64>>,
    #[arg(long)]
    pub j_min: Option<f64>,
    #[arg(long)]
    pub j_max: Option<f64>,
    #[arg(long)]
    pub j_points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimModelArg {
    Massless,
    Massive,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SimArgs {
    #[arg(long, value_enum)]
    pub model: Option<SimModelArg>,
    /// Rotor mass, massive model only.
    #[arg(long)]
    pub mass: Option<f64>,
    /// Damping rate, massive model only.
    #[arg(long)]
    pub damping: Option<f64>,
    /// Number of rotors.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub t_burn: Option<f64>,
    #[arg(long)]
    pub t_avg: Option<f64>,
    /// Independent disorder and noise realizations.
    #[arg(long)]
    pub realizations: Option<usize>,
}
