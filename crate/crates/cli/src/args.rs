use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "covext",
    version,
    about = "Exact extension and approximation of partial functions by coverage functions",
    after_help = "Exit codes: 0 success, 1 usage or parse error, 2 mathematical negative \
                  (not extendible, not coverage, outside the polytope), 3 enumeration cap exceeded."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the points extend to a coverage function, by exact
    /// feasibility of the program over all W-coefficients.
    Extend(ExtendArgs),
    /// Bracket the best multiplicative extension factor alpha* between 1/kappa
    /// and min(d, m^(2/3))/kappa, using the replacement ratio kappa.
    Approx(ApproxArgs),
    /// Fit a coverage function in L1 error using singleton weights only, which
    /// is within (1 - 1/d) times the total value of the optimum.
    Norm(NormArgs),
    /// Compute the W-coefficients of a total set function; it is coverage
    /// exactly when all of them are nonnegative.
    Wtransform(InputArgs),
    /// Build reduction instances from the hardness proofs.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Test a weighted graph against the cut or span polytope by enumerating
    /// every vertex subset.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Instance file, or `-` for stdin.
    #[arg(long, short)]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    /// Instance file, or `-` for stdin.
    #[arg(long, short, required_unless_present = "input_dir", conflicts_with = "input_dir")]
    pub input: Option<String>,
    /// Decide every `*.json` instance in a directory.
    #[arg(long)]
    pub input_dir: Option<PathBuf>,
    /// Worker threads for --input-dir.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    /// Re-verify the witness or certificate and report the result.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Exact replacement ratio.
    Exact,
    /// Greedy set-cover estimate, within H_d of the exact ratio.
    Greedy,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Also solve the exact program for alpha*.
    #[arg(long)]
    pub alpha_star: bool,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Also solve the full program for the exact optimum.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the generated file here and print a run report instead.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GadgetCommand {
    /// Points that extend to a coverage function exactly when the graph's
    /// fractional chromatic number is at most k.
    Chromatic {
        /// Graph file.
        #[arg(long, short)]
        graph: String,
        /// Target value on the full vertex set, a rational in [1, |V|].
        #[arg(long)]
        k: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A coverage membership point that violates some span constraint
    /// exactly when the set system has a cover of size k.
    Setcover {
        /// Universe size n'.
        #[arg(long)]
        universe: usize,
        /// One set as comma-separated elements of 1..=n'; repeat per set.
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
        /// Cover size budget.
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Add two vertices so that the span weight of every vertex set is half
    /// its cut weight, scaled by L = 2|E| + |V||E|.
    Cut2span {
        /// Weighted graph file.
        #[arg(long, short)]
        graph: String,
        /// Accept weights outside [-1, 1].
        #[arg(long)]
        unbounded: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Complete graph whose cuts are positive exactly when the original cut
    /// has density above M.
    Densest {
        /// Graph file.
        #[arg(long, short)]
        graph: String,
        /// Density threshold M, a positive rational.
        #[arg(long)]
        density: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Blocks of size sqrt(m) plus random transversals, where kappa = 1 but
    /// alpha* grows with m.
    Tight {
        /// Ground set size, a perfect square.
        #[arg(long)]
        m: usize,
        /// Transversal multiplier.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// RNG seed; drawn from the clock when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Every cut weight is nonpositive and every weight is in [-1, 1].
    Cut {
        /// Weighted graph file.
        #[arg(long, short)]
        graph: String,
    },
    /// Every span weight is nonpositive and every weight is in [-1, 1].
    Span {
        /// Weighted graph file.
        #[arg(long, short)]
        graph: String,
    },
}
