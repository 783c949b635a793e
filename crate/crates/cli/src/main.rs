//! `recperm`: sampling, exact tables, verification suites and Monte Carlo
//! experiments for coherent permutations with two-sided records.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "recperm", version, about = "Coherent random permutations with two-sided records")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Worker threads for parallel enumeration and Monte Carlo.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Draw permutations (or a shape) from a model.
    Sample(SampleArgs),
    /// Exact combinatorics and laws.
    #[command(subcommand)]
    Exact(ExactCommand),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Run a Monte Carlo asymptotics experiment; exits 1 if it fails.
    Mc(McArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum ModelKind {
    TwoParam,
    General,
    Limit,
    /// Ranking construction driven by the shape in `--shape-file`.
    FromShape,
    /// A random shape from stick-breaking; prints the shape.
    Shape,
    /// A shape from stick-breaking, then a word from it.
    ShapeConstruction,
    /// Uniform word with the record values given by `--profile`.
    Conditioned,
    /// Integer-parameter window projection of uniform draws.
    Window,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::TwoParam)]
    pub model: ModelKind,
    #[arg(long, default_value = "1")]
    pub theta: String,
    #[arg(long, default_value = "1")]
    pub zeta: String,
    /// `k:v,k:v,...;tail:v` with rational values.
    #[arg(long, default_value = "tail:0")]
    pub alpha: String,
    /// `bernoulli-pyramid:p`, `single-record:p`, `theta-zero:z` or `zeta-zero:t`.
    #[arg(long)]
    pub family: Option<String>,
    /// JSON `{"rho":[...ascending...],"center_index":i}`.
    #[arg(long)]
    pub shape_file: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of draws; draw `i` uses substream `i` of the seed.
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Record values such as `1,4,[5],8,10` for the conditioned sampler.
    #[arg(long)]
    pub profile: Option<String>,
    /// Shape truncation per side.
    #[arg(long, default_value_t = 64)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum ExactCommand {
    /// Exact law over all permutations of size n.
    Table {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
    },
    /// Counts c(n, l, u) of permutations by proper lower and upper records.
    Stirling {
        #[arg(long)]
        n: usize,
    },
    /// Law of the first entry (corrected Pólya-Eggenberger form).
    Pe {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        theta: String,
        #[arg(long, default_value = "1")]
        zeta: String,
        /// Evaluate the display as printed instead.
        #[arg(long)]
        printed: bool,
    },
    /// Number of words with a centered composition, e.g. `3,1,^1,3,2`.
    D {
        #[arg(long)]
        composition: String,
    },
    /// Extensions of a word with composition `--from` to composition `--to`.
    Dext {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Martin ratio d(from, to) / d(to).
    Ratio {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Boundary function of a composition at a shape.
    Phi {
        #[arg(long)]
        composition: String,
        #[arg(long)]
        shape_file: std::path::PathBuf,
    },
    /// Immediate followers of a composition.
    Followers {
        #[arg(long)]
        composition: String,
    },
    /// Number of centered compositions of n next to (n+2)2^(n-3), which holds for n >= 2.
    CountCompositions {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Words of size n2 with counts (l2, u2) restricting to counts (l, u) at size n.
    ExtensionCount {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        to_n: usize,
        #[arg(long)]
        to_l: usize,
        #[arg(long)]
        to_u: usize,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// identities, pushforward, diagram, boundary, uniformity, indicators,
    /// dual, errata, samplers or asymptotics.
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 20_240_601)]
    pub seed: u64,
    /// Multiplier on the trial counts of statistical suites.
    #[arg(long, default_value_t = 1.0)]
    pub trial_scale: f64,
    /// Sample with θ and ζ exchanged; the sampler suite must then fail.
    #[arg(long)]
    pub negative_control: bool,
}

#[derive(Args, Debug)]
pub struct McArgs {
    /// shape-convergence, poisson-times, poisson-values, adjacent-pairs,
    /// gaussian-counts or record-moments.
    #[arg(long)]
    pub experiment: String,
    #[arg(long, default_value = "1")]
    pub theta: String,
    #[arg(long, default_value = "1")]
    pub zeta: String,
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
