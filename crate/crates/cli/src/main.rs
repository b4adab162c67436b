use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "edgestat",
    version,
    about = "Edge counts of random induced subgraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distribution of X_{G,k}, exact or by Monte Carlo.
    Dist(DistArgs),
    /// Moments in closed form next to those of the exact distribution.
    Moments(MomentsArgs),
    /// Anti-concentration (-l), shift (-t) or binomial-moment (-r) checks.
    Check(CheckArgs),
    /// Search for a graph maximising P(X_{G,k} = l) and update the records file.
    Search(SearchArgs),
    /// Build a construction, or score the construction catalogue for (n, k, l).
    Construct(ConstructArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// Graph in graph6 format.
    #[arg(long)]
    g6: Option<String>,
    /// File whose first non-empty line is a graph6 string.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Construction spec such as two_cliques:6 or gnp:20,0.1.
    #[arg(long)]
    construct: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[command(flatten)]
    source: Source,
    #[arg(short)]
    k: usize,
    /// Sample instead of enumerating.
    #[arg(long)]
    mc: bool,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest subset count enumerated exactly; beyond it sampling is used.
    #[arg(long, default_value_t = edgestat::DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct MomentsArgs {
    #[command(flatten)]
    source: Source,
    #[arg(short)]
    k: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = edgestat::DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
#[group(id = "which", required = true, multiple = false, args = ["l", "t", "r"])]
struct CheckArgs {
    #[command(flatten)]
    source: Source,
    #[arg(short)]
    k: usize,
    #[arg(short)]
    l: Option<usize>,
    #[arg(short)]
    t: Option<usize>,
    #[arg(short)]
    r: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = edgestat::DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: usize,
    #[arg(short)]
    l: usize,
    /// Exhaustive search (n <= 8).
    #[arg(long)]
    brute: bool,
    /// With --brute, score every labelled graph instead of one labelling per degree order.
    #[arg(long, requires = "brute")]
    no_prune: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest subset count evaluated exactly during local search.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Monte Carlo samples per evaluation over budget.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 4000)]
    iterations: u64,
    #[arg(long, default_value_t = 4)]
    restarts: u64,
    /// Records file; EDGESTAT_RECORDS overrides the default.
    #[arg(
        long,
        env = "EDGESTAT_RECORDS",
        default_value = "edgestat-records.jsonl"
    )]
    records: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Construction spec to build and print.
    #[arg(long, conflicts_with_all = ["n", "k", "l"])]
    construct: Option<String>,
    #[arg(short, requires_all = ["k", "l"])]
    n: Option<usize>,
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    l: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dist(a) => commands::dist(a),
        Command::Moments(a) => commands::moments(a),
        Command::Check(a) => commands::check(a),
        Command::Search(a) => commands::search(a),
        Command::Construct(a) => commands::construct(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(commands::Status::Ok) => ExitCode::SUCCESS,
        Ok(commands::Status::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("edgestat: {e}");
            ExitCode::from(2)
        }
    }
}
