use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "diffseq",
    version,
    about = "Difference sequences, derivative estimates and certified Diophantine branch scans"
)]
pub struct Cli {
    /// Starting precision of interval computations, in bits.
    #[arg(long, global = true, default_value_t = 64)]
    pub precision_bits: u32,

    /// Precision cap; refinement stops here and reports Undecided.
    #[arg(long, global = true, env = "DIFFSEQ_MAX_BITS", default_value_t = 4096)]
    pub max_precision_bits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Fractional digits used when rendering interval endpoints.
    #[arg(long, global = true, default_value_t = 30)]
    pub digits: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    JsonLines,
    Csv,
    Pretty,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BranchArgs {
    /// Leg difference x' = x - y (at least 1).
    #[arg(long)]
    pub x_prime: u64,
    /// Power n (at least 2).
    #[arg(long)]
    pub power: u32,
    /// Coefficient A in z^n = A x^n + y^n.
    #[arg(long, default_value_t = 1)]
    pub coeff_a: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Difference table of a sequence or of a sampled polynomial.
    Difftable {
        /// Comma-separated rationals.
        #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
        seq: Option<String>,
        /// Polynomial such as "2x^3 + 7x - 1".
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        step: String,
        /// Number of samples when --poly is given.
        #[arg(long, requires = "poly")]
        points: Option<usize>,
        #[arg(long)]
        order: usize,
    },
    /// nth difference of a degree-n polynomial against a0 k^n n!.
    Newton {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        step: String,
        /// Comma-separated sample points.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        x: String,
    },
    /// nth-derivative estimate with its remainder bound.
    Deriv {
        /// exp, sin, cos or poly:<expression>.
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        function: Option<String>,
        /// File of n+1 sample values f(x + i k), separated by commas or whitespace.
        #[arg(long)]
        samples: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, allow_hyphen_values = true)]
        step: Option<f64>,
        /// Derivative order n (inferred from --samples when omitted).
        #[arg(long)]
        order: Option<usize>,
        /// Declared bound on |f^(n+1)| over the sample hull.
        #[arg(long)]
        m: f64,
        /// Open interval on which f is analytic, as "a,b".
        #[arg(long, allow_hyphen_values = true)]
        domain: Option<String>,
        /// Comma-separated steps for a convergence study at x = x0.
        #[arg(long, conflicts_with = "samples")]
        schedule: Option<String>,
    },
    /// Certified step bounds, monotonicity and integrality along a branch.
    BranchScan {
        #[command(flatten)]
        branch: BranchArgs,
        #[arg(long)]
        p_max: u64,
    },
    /// Integer points of a branch and their index gaps.
    GapAudit {
        #[command(flatten)]
        branch: BranchArgs,
        #[arg(long)]
        p_max: u64,
    },
    /// Largest excluded smaller leg for z^n = x^n + y^n.
    FermatBound {
        #[arg(long)]
        power: u32,
    },
    /// Exact residual of the (A + 1) n! branch identity.
    Identity {
        #[command(flatten)]
        branch: BranchArgs,
        #[arg(long)]
        y: u64,
    },
    /// Least index distance between integer points.
    MinGap {
        #[arg(long)]
        power: u32,
        #[arg(long, default_value_t = 1)]
        coeff_a: u64,
    },
    /// Gap bound given a fractional part below (2^(1/n) - 1) j.
    CondGap {
        #[arg(long)]
        power: u32,
        #[arg(long)]
        j: u64,
    },
    /// Closed-form step limit along x' = alpha p, with the true asymptote.
    Limit {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        power: u32,
    },
    /// Running sums of fractional step parts on a unit branch.
    FracAccum {
        #[arg(long)]
        x_prime: u64,
        #[arg(long)]
        power: u32,
        #[arg(long)]
        p_max: u64,
    },
    /// Exhaustive integer points for x' <= x-prime-max, p <= p-max.
    BruteForce {
        #[arg(long)]
        power: u32,
        #[arg(long, default_value_t = 1)]
        coeff_a: u64,
        #[arg(long)]
        x_prime_max: u64,
        #[arg(long)]
        p_max: u64,
        #[arg(long, default_value_t = diffseq_core::diophantine::DEFAULT_SEARCH_BUDGET)]
        budget: u128,
    },
    /// Randomized exact checks of the difference and branch identities.
    Selfcheck {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Run a command described by a TOML file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}
