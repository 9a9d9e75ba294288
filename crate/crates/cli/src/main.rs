//! Batch command-line front end.
//!
//! Every command writes JSON lines to stdout (or `--output`) and diagnostics
//! to stderr. Exit status is 0 on success, 1 when a verification fails and
//! 2 for usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "semiarray", version, about = "Semiring-generic hypersparse array toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the semiring laws on random samples.
    Check(CheckArgs),
    /// Aggregate traffic statistics over a sum partition.
    Stats(StatsArgs),
    /// Least-weight n-hop paths with every tied path.
    Paths(PathsArgs),
    /// Contributor sets of an array product.
    Provenance(ProvenanceArgs),
    /// Windowed multi-timescale stream of adjacency arrays.
    Stream(StreamArgs),
    /// Time partitioned against unpartitioned triple products.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// arith-nat, min-plus, max-min, dual:<stock>, tropical-path,
    /// provenance:<stock> or broken-demo.
    pub semiring: String,
    #[arg(default_value_t = 1000)]
    pub trials: usize,
    #[arg(default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// `src<TAB>dst<TAB>count` file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub partitions: usize,
    /// source (row-block partition) or destination (col-block partition).
    #[arg(long, default_value = "source")]
    pub mode: String,
    /// Must match the mode when given.
    #[arg(long)]
    pub strategy: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "arith-nat")]
    pub semiring: String,
}

#[derive(Args, Debug)]
pub struct PathsArgs {
    /// `src<TAB>dst<TAB>weight` file; weights must be positive and finite.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub src: String,
    #[arg(long)]
    pub dst: String,
    #[arg(long)]
    pub hops: usize,
}

#[derive(Args, Debug)]
pub struct ProvenanceArgs {
    /// Two triple files, `A` then `B`.
    #[arg(long, num_args = 1, required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, default_value = "arith-nat")]
    pub semiring: String,
}

#[derive(Args, Debug)]
pub struct StreamArgs {
    /// `src<TAB>dst<TAB>count<TAB>timestamp_seconds` file.
    #[arg(long)]
    pub input: PathBuf,
    /// fixed-m or fixed-t.
    #[arg(long, default_value = "fixed-m")]
    pub mode: String,
    #[arg(long, default_value_t = 64)]
    pub window_m: usize,
    #[arg(long, default_value_t = 1.0)]
    pub window_t: f64,
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    #[arg(long, default_value_t = semiarray::stream::DEFAULT_BUFFER_CAPACITY)]
    pub capacity: usize,
    /// Rebuild every window from its raw events and compare.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value = "arith-nat")]
    pub semiring: String,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Triple file holding `A`; the product timed is `Aᵀ A Aᵀ`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "1,2,8")]
    pub partitions: Vec<usize>,
    #[arg(long, default_value = "random")]
    pub strategy: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "arith-nat")]
    pub semiring: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = match commands::Output::open(cli.output.as_deref()) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Check(a) => commands::check(a, &mut out),
        Command::Stats(a) => commands::stats(a, &mut out),
        Command::Paths(a) => commands::paths(a, &mut out),
        Command::Provenance(a) => commands::provenance(a, &mut out),
        Command::Stream(a) => commands::stream(a, &mut out),
        Command::Bench(a) => commands::bench(a, &mut out),
    };
    let result = result.and_then(|()| out.finish());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.code())
        }
    }
}
