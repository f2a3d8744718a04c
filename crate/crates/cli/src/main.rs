//! `bcnent`: compile Boolean control networks and analyse their entropy.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bcn_entropy::Error;

#[derive(Parser)]
#[command(
    name = "bcnent",
    version,
    about = "Topological entropy of Boolean control networks"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Emit JSON instead of text (or CSV for `count`).
    #[arg(long, global = true)]
    json: bool,
    /// Largest trajectory length for `count`.
    #[arg(long, global = true, value_name = "J", default_value_t = 10)]
    horizon: usize,
    /// Seed for `random`.
    #[arg(long, global = true, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// Refuse networks with more than B state + input variables.
    #[arg(long, global = true, value_name = "B", default_value_t = bcn_entropy::DEFAULT_CAP_BITS)]
    cap_bits: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Print the transition matrix L and the merged matrix M.
    Compile { path: PathBuf },
    /// Perron root, entropy and the maximal-entropy verdict.
    Entropy { path: PathBuf },
    /// Decide maximal entropy; show the block decomposition when it holds.
    CheckMax { path: PathBuf },
    /// Print the block form P M P' = [B C; 0 D], if the entropy is log2 v.
    Decompose { path: PathBuf },
    /// Exact trajectory counts for j = 1..=horizon, as CSV.
    Count { path: PathBuf },
    /// Build the network whose maximal entropy encodes unsatisfiability of g.
    ReduceSat {
        /// File holding g as a formula, or DIMACS CNF with `--dimacs` or a `.cnf` name.
        #[arg(required_unless_present = "expr", conflicts_with = "expr")]
        path: Option<PathBuf>,
        /// Formula g given inline.
        #[arg(long, short = 'e', value_name = "FORMULA")]
        expr: Option<String>,
        /// Read the input as DIMACS CNF.
        #[arg(long)]
        dimacs: bool,
        /// Variable order, comma separated. Defaults to order of appearance.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        /// Compile the result and check it against brute-force SAT.
        #[arg(long)]
        verify: bool,
        /// Write the network here instead of standard output.
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Graphviz rendering of the state transition graph.
    ExportDot {
        path: PathBuf,
        /// Omit the input labels on edges.
        #[arg(long)]
        no_labels: bool,
    },
    /// A network with uniformly random update tables.
    Random {
        #[arg(short = 'n', long = "states")]
        n: usize,
        #[arg(short = 'm', long = "inputs", default_value_t = 0)]
        m: usize,
    },
}

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::Syntax { .. }
            | Error::UndeclaredIdentifier { .. }
            | Error::MissingUpdate(_)
            | Error::DuplicateUpdate { .. }
            | Error::DuplicateName(_)
            | Error::TooManyInputs { .. }
            | Error::NoStates
            | Error::MissingVariable(_),
        ) => EXIT_PARSE,
        Some(Error::CapExceeded { .. }) => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command, &cli.global) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
