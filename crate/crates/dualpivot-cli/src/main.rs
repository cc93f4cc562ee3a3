//! `dualpivot` — exact, asymptotic, and simulated comparison counts for two
//! dual-pivot quicksort partitioning strategies, plus the cross-validation
//! suites that check every closed form against an independent oracle.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use dualpivot::experiment::{
    default_sizes, write_distribution_csv, write_exact_csv, write_paths_csv, write_simulate_csv,
    ExperimentConfig, DEFAULT_TRIALS,
};
use dualpivot::{verify, StrategyKind};

#[derive(Parser)]
#[command(
    name = "dualpivot",
    version,
    about = "Comparison-count analysis of dual-pivot quicksort partitioning strategies",
    long_about = "Exact rational expectations, asymptotic expansions, Monte Carlo \
                  simulation, and self-verification for the clairvoyant and count \
                  dual-pivot partitioning strategies. All CSV output is reproducible \
                  from the seed, byte for byte."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the cross-validation suites and report PASS/FAIL per check
    Verify {
        /// Range of the expected-zero identity suite (capped at 500)
        #[arg(long, default_value_t = verify::IDENTITY_DEFAULT_MAX_N)]
        max_n: u64,
    },
    /// Sort random permutations and emit per-trial comparison counts as CSV
    Simulate {
        /// Partitioning strategy to simulate
        #[arg(long)]
        strategy: StrategyKind,
        /// Input sizes (comma-separated); default 2^11..2^20 in powers of two
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<u64>>,
        /// Extend the default size grid to 2^28
        #[arg(long, conflicts_with = "sizes")]
        full_grid: bool,
        /// Trials per input size
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        /// Master seed; all trial streams derive from it deterministically
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write CSV here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit exact and asymptotic expected costs with their residuals as CSV
    Exact {
        /// Restrict to one strategy (default: both)
        #[arg(long)]
        strategy: Option<StrategyKind>,
        /// Input sizes (comma-separated); default 2^11..2^20 in powers of two
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<u64>>,
        /// Extend the default size grid to 2^28
        #[arg(long, conflicts_with = "sizes")]
        full_grid: bool,
        /// Write CSV here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample lattice paths and emit zero-contact tallies as CSV
    Paths {
        /// Path length
        #[arg(long)]
        n: u64,
        /// Number of sampled paths
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        /// Master seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also emit the exhaustive-enumeration averages (n <= 16)
        #[arg(long)]
        exhaustive: bool,
        /// Write CSV here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit the exact zero-count distribution for one path length as CSV
    Distribution {
        /// Path length
        #[arg(long)]
        n: u64,
        /// Write CSV here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            // Bad arguments exit like clap usage errors; real failures exit 1.
            match err.downcast_ref::<dualpivot::Error>() {
                Some(dualpivot::Error::Argument(_)) | Some(dualpivot::Error::Size(_)) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Verify { max_n } => {
            let outcomes = verify::default_suite(max_n)?;
            let all_passed = outcomes.iter().all(|o| o.passed);
            for outcome in &outcomes {
                println!("{outcome}");
            }
            if all_passed {
                println!("all checks passed");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("verification failed");
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Simulate {
            strategy,
            sizes,
            full_grid,
            trials,
            seed,
            output,
        } => {
            let config = ExperimentConfig {
                strategy,
                sizes: resolve_sizes(sizes, full_grid),
                trials,
                seed,
            };
            emit(&output, |out| write_simulate_csv(&config, out))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Exact {
            strategy,
            sizes,
            full_grid,
            output,
        } => {
            let strategies = match strategy {
                Some(s) => vec![s],
                None => StrategyKind::ALL.to_vec(),
            };
            let sizes = resolve_sizes(sizes, full_grid);
            emit(&output, |out| write_exact_csv(&strategies, &sizes, out))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Paths {
            n,
            trials,
            seed,
            exhaustive,
            output,
        } => {
            emit(&output, |out| write_paths_csv(n, trials, seed, exhaustive, out))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Distribution { n, output } => {
            emit(&output, |out| write_distribution_csv(n, None, out))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn resolve_sizes(sizes: Option<Vec<u64>>, full_grid: bool) -> Vec<u64> {
    match sizes {
        Some(mut sizes) => {
            // Rows are emitted sorted by (n, trial) regardless of flag order.
            sizes.sort_unstable();
            sizes
        }
        None => default_sizes(full_grid),
    }
}

fn emit(
    output: &Option<PathBuf>,
    write: impl FnOnce(&mut dyn Write) -> dualpivot::Result<()>,
) -> anyhow::Result<()> {
    match output {
        Some(path) => {
            let file = File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            let mut out = BufWriter::new(file);
            write(&mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            write(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}
