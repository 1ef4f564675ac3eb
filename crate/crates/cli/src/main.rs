use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::Outcome;

/// Cube complexes of partite flag complexes, branched covers and
/// finiteness certificates.
#[derive(Parser, Debug)]
#[command(name = "kgamma", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Io {
    /// Complex JSON: {"vertices":[{"id","part"}], "maximal_simplices":[[..]]}.
    #[arg(long, alias = "gamma")]
    input: PathBuf,
    /// Write the JSON report here and a one-line summary to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct Primes {
    #[arg(long)]
    q12: Option<u64>,
    #[arg(long)]
    q23: Option<u64>,
    #[arg(long)]
    q31: Option<u64>,
}

impl Primes {
    fn array(&self) -> [Option<u64>; 3] {
        [self.q12, self.q23, self.q31]
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Flagness of every vertex link of K_Γ.
    Npc(Io),
    /// Cell counts and cage graphs of K_Γ.
    Kgamma(Io),
    /// Branched cover of the link at (0,0) for bipartite Γ.
    Branch2d {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        p: Option<u64>,
        /// Base labels of part 0 whose lifts form A⁺ (default: the first two).
        #[arg(long, value_delimiter = ',')]
        a_plus: Vec<String>,
        /// Base labels of part 1 whose lifts form B⁺ (default: the first two).
        #[arg(long, value_delimiter = ',')]
        b_plus: Vec<String>,
    },
    /// Z³-freeness certificate for tripartite Γ.
    Branch3d {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        primes: Primes,
    },
    /// Ascending and descending link homology at every vertex.
    Morse {
        #[command(flatten)]
        io: Io,
        /// Orientation JSON: {"orientation":{"label":"up|down"}}; default all up.
        #[arg(long)]
        orientation: Option<PathBuf>,
        /// Compute links in the branched cover (planar for n = 2, spatial for n = 3).
        #[arg(long)]
        branched: bool,
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        primes: Primes,
        /// Degree n for the FP_n-not-FP_{n+1} verdict.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Bux–Gonzalez (with --input and --weights) or link-table classification (with --tables).
    Classify {
        #[arg(long, alias = "gamma")]
        input: Option<PathBuf>,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        tables: Option<PathBuf>,
        /// Highest n checked (Bux–Gonzalez, default 3) or the verdict degree (tables).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full Theorem A pipeline on a 2-dimensional tripartite flag complex L.
    ThmA {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        primes: Primes,
        /// Step budget for simplifying the fundamental group.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
    },
    /// Theorem B construction for F_{n-1} not F_n.
    ThmB {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, outcome: &Outcome) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
    text.push('\n');
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            println!("{}", outcome.summary);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, result) = match &cli.command {
        Command::Npc(io) => (io.out.as_deref(), commands::npc(&io.input)),
        Command::Kgamma(io) => (io.out.as_deref(), commands::kgamma(&io.input)),
        Command::Branch2d { io, p, a_plus, b_plus } => {
            (io.out.as_deref(), commands::branch2d(&io.input, *p, a_plus, b_plus))
        }
        Command::Branch3d { io, primes } => (io.out.as_deref(), commands::branch3d(&io.input, primes.array())),
        Command::Morse { io, orientation, branched, p, primes, n } => {
            (io.out.as_deref(), commands::morse(&io.input, orientation.as_deref(), *branched, *p, primes.array(), *n))
        }
        Command::Classify { input, weights, tables, n, out } => {
            (out.as_deref(), commands::classify(input.as_deref(), weights.as_deref(), tables.as_deref(), *n))
        }
        Command::ThmA { io, primes, budget, max_degree } => {
            (io.out.as_deref(), commands::thm_a(&io.input, primes.array(), *budget, *max_degree))
        }
        Command::ThmB { n, out } => (out.as_deref(), commands::thm_b(*n)),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(out, &outcome) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.granted { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
