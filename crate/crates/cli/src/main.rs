//! `superortho`: command-line front end.
//!
//! Exit codes: 0 when everything checked out, 1 when a report contains a
//! failure, 2 for usage errors and arguments an engine rejects.

mod commands;
mod emit;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use superortho::partition::{PartitionType, SetPartition};

use emit::Format;

#[derive(Parser, Debug)]
#[command(name = "superortho", version, about = "Chain-parity coefficients, square-function constants and superorthogonality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// D coefficient of a type, of a pair of partitions, or of every type of [n].
    Coeff {
        #[arg(long = "type", value_name = "SIZES")]
        ty: Option<PartitionType>,
        #[arg(long)]
        p1: Option<SetPartition>,
        #[arg(long)]
        p2: Option<SetPartition>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Odd and even chain counts between two partitions (default: bottom to top of [n]).
    Chains {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p1: Option<SetPartition>,
        #[arg(long)]
        p2: Option<SetPartition>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Verifies the distinct-sum expansion on seeded random families.
    Identity {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "L", value_name = "L")]
        l: usize,
        #[arg(long)]
        p1: Option<SetPartition>,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Stirling numbers of the second kind up to n, with both identities checked.
    Stirling {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Constants for one r, a table for r = 1..=max, or the C_alpha vector of n.
    Constants {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Reciprocal sums over partitions into parts >= 2 for m = 2..=max.
    Sumcheck {
        #[arg(long, default_value_t = 59)]
        max: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Builds the lacunary example family and checks its properties.
    Example {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s0: usize,
        #[arg(long = "N", value_name = "N")]
        n_dim: Option<usize>,
        /// Check a single s instead of the full report.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Runs a fixed battery of checks across every engine.
    Report {
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

fn run(cli: Cli) -> superortho::Result<emit::Output> {
    match cli.command {
        Command::Coeff { ty, p1, p2, n, fmt } => commands::coeff(ty, p1, p2, n, fmt.format),
        Command::Chains { n, p1, p2, fmt } => commands::chains(n, p1, p2, fmt.format),
        Command::Identity {
            n,
            l,
            p1,
            trials,
            seed,
            fmt,
        } => commands::identity(n, l, p1, trials, seed, fmt.format),
        Command::Stirling { n, fmt } => commands::stirling(n, fmt.format),
        Command::Constants { r, max, n, fmt } => commands::constants(r, max, n, fmt.format),
        Command::Sumcheck { max, fmt } => commands::sumcheck(max, fmt.format),
        Command::Example {
            r,
            s0,
            n_dim,
            s,
            budget,
            fmt,
        } => commands::example(r, s0, n_dim.unwrap_or(r), s, budget, fmt.format),
        Command::Report { seed, fmt } => commands::report(seed, fmt.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.body);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
