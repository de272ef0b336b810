use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use m0n_cli::commands::{self, ClassKind, Outcome, ScanInput, VerifyOptions};
use m0n_cli::{parse_weights, Format};
use m0n_core::combinatorics::partition4_count;
use m0n_core::WeightDatum;

/// Largest n handled without --force by commands that enumerate curves.
const GUARD_N: usize = 14;

#[derive(Parser)]
#[command(
    name = "m0n",
    version,
    about = "Exact divisor and F-curve computations on M_{0,n}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Worker threads (default: one per core). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Allow curve enumeration for n > 14.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct WeightArgs {
    /// Comma-separated weights, each p/q or a finite decimal.
    #[arg(long)]
    weights: String,
    /// Number of points; must agree with the weight count if given.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest denominator of a sampled weight.
    #[arg(long, default_value_t = 30)]
    max_denominator: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of K + Σ aᵢψᵢ.
    Delta(WeightArgs),
    /// The class pushed to the weighted space, with the contracted collection.
    Pushforward(WeightArgs),
    /// Pullback of the pushforward.
    Pullback(WeightArgs),
    /// Class minus the pullback of its pushforward.
    Difference(WeightArgs),
    /// The quotient-side class for total weight 2.
    DeltaPrime(WeightArgs),
    /// Every F-curve with its type.
    Curves {
        #[command(flatten)]
        weights: WeightArgs,
        /// Compare each closed-form intersection number with direct pairing.
        #[arg(long)]
        table_check: bool,
        /// Omit per-curve rows.
        #[arg(long)]
        summary: bool,
    },
    /// Run the verification suite on seeded samples and structured cases.
    Verify {
        #[arg(long)]
        n: usize,
        /// Samples per regime.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        sampling: SampleArgs,
        /// Include wall-clock time (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Describe the birational model for a weight datum.
    Model(WeightArgs),
    /// Rank of the boundary divisor against F-curve intersection matrix.
    Rank {
        #[arg(long)]
        n: usize,
    },
    /// Model descriptors across weight space for fixed n.
    Scan {
        #[arg(long)]
        n: usize,
        /// Grid resolution g: all nondecreasing weights k/g.
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        grid: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        sampling: SampleArgs,
    },
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn datum(args: &WeightArgs) -> Result<WeightDatum, Failure> {
    let d = parse_weights(&args.weights)?;
    match args.n {
        Some(n) if n != d.n() => Err(Failure::Usage(format!(
            "--n {n} does not match {} weights",
            d.n()
        ))),
        _ => Ok(d),
    }
}

fn guard(n: usize, force: bool) -> Result<(), Failure> {
    if n > GUARD_N && !force {
        return Err(Failure::Usage(format!(
            "n = {n} enumerates {} curves per datum; pass --force to proceed",
            partition4_count(n)
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let class = |kind, w: &WeightArgs| -> Result<Outcome, Failure> {
        Ok(commands::class(kind, &datum(w)?)?)
    };
    Ok(match &cli.command {
        Command::Delta(w) => class(ClassKind::Delta, w)?,
        Command::Pushforward(w) => class(ClassKind::Pushforward, w)?,
        Command::Pullback(w) => class(ClassKind::Pullback, w)?,
        Command::Difference(w) => class(ClassKind::Difference, w)?,
        Command::DeltaPrime(w) => class(ClassKind::DeltaPrime, w)?,
        Command::Curves {
            weights,
            table_check,
            summary,
        } => {
            let d = datum(weights)?;
            guard(d.n(), cli.force)?;
            commands::curves(&d, *table_check, *summary)?
        }
        Command::Verify {
            n,
            samples,
            sampling,
            timings,
        } => {
            guard(*n, cli.force)?;
            let opts = VerifyOptions {
                samples: *samples,
                seed: sampling.seed,
                max_denominator: sampling.max_denominator,
                timings: *timings,
            };
            commands::verify(*n, &opts)?
        }
        Command::Model(w) => {
            let d = datum(w)?;
            guard(d.n(), cli.force)?;
            commands::model(&d)?
        }
        Command::Rank { n } => {
            guard(*n, cli.force)?;
            commands::rank(*n)?
        }
        Command::Scan {
            n,
            grid,
            samples,
            sampling,
        } => {
            guard(*n, cli.force)?;
            let input = match (grid, samples) {
                (Some(g), _) => ScanInput::Grid(*g),
                (None, Some(count)) => ScanInput::Samples {
                    count: *count,
                    seed: sampling.seed,
                    max_denominator: sampling.max_denominator,
                },
                (None, None) => unreachable!("clap requires one of --grid or --samples"),
            };
            commands::scan(*n, input)?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let result = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::from(e)),
        },
        None => run(&cli),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let bytes = outcome.report.emit(format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().lock().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
