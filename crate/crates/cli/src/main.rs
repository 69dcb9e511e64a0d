//! `generacci`: command-line access to the Kentucky-2 toolkit.
//!
//! Exit codes: 0 success, 2 usage or invalid input, 3 size limit exceeded,
//! 4 internal cross-check failure.

mod commands;
mod error;
mod output;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::GapMethod;
use error::CliError;
use output::{render, Format, Render};

#[derive(Debug, Parser)]
#[command(name = "generacci", version, about = "Kentucky-2 sequence toolkit")]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "GENERACCI_FORMAT",
        default_value = "plain"
    )]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the first terms of the sequence.
    Seq {
        #[arg(long)]
        terms: usize,
        /// Bin separation (only with --constructive unless 1).
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Bin size (only with --constructive unless 2).
        #[arg(long, default_value_t = 2)]
        b: usize,
        /// Build by adjoining the smallest unrepresentable integer (at most 40 terms).
        #[arg(long)]
        constructive: bool,
    },
    /// Decompose integers (decimal or 10^K).
    Decompose {
        #[arg(required = true)]
        values: Vec<String>,
    },
    /// p_{n,k} for every k.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Exact moments of the summand count below a_{2n+1}.
    Stats {
        #[arg(long)]
        n: usize,
        /// Add Kolmogorov-Smirnov and log-MGF comparisons with the normal law.
        #[arg(long)]
        diagnostics: bool,
        /// Include the exact pmf (the CSV then lists pmf rows).
        #[arg(long)]
        pmf: bool,
        /// MGF evaluation points in [-2, 2].
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            default_value = "-2,-1,1,2"
        )]
        t: Vec<f64>,
    },
    /// Gap-length counts over all m below a_{2n+1}.
    Gaps {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "formula")]
        method: GapMethod,
    },
    /// Monte Carlo: decompose uniform integers below a bound.
    Sample {
        #[arg(long)]
        count: u64,
        /// Exclusive bound, decimal or 10^K.
        #[arg(long)]
        bound: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let result: Box<dyn Render> = match &cli.command {
        Command::Seq {
            terms,
            s,
            b,
            constructive,
        } => Box::new(commands::seq(*terms, *s, *b, *constructive)?),
        Command::Decompose { values } => Box::new(commands::decompose_all(values)?),
        Command::Count { n } => Box::new(commands::count(*n)?),
        Command::Stats {
            n,
            diagnostics,
            pmf,
            t,
        } => Box::new(commands::stats(*n, *diagnostics, *pmf, t)?),
        Command::Gaps { n, method } => Box::new(commands::gaps(*n, *method)?),
        Command::Sample {
            count,
            bound,
            seed,
            workers,
        } => Box::new(commands::sample(*count, bound, *seed, *workers)?),
    };
    Ok(render(result.as_ref(), cli.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
