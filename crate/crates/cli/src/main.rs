mod check;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dissolab::exact::Cutoffs;

/// Exact dissociation, independence and induced matching numbers, the
/// bipartite 4/3-approximation and its tightness recognizer, and hardness
/// gadgets.
///
/// Exit codes: 0 success, 1 property violation, 2 invalid input, 3 instance
/// over the cutoff.
#[derive(Parser, Debug)]
#[command(name = "dissolab", version)]
pub struct Cli {
    /// Largest instance the exact solvers accept (vertices). Overrides
    /// DISSOLAB_CUTOFF.
    #[arg(long, global = true)]
    cutoff: Option<usize>,

    /// Input format; edge lists are the only supported one.
    #[arg(long, global = true, value_enum, default_value_t = Format::Dimacs)]
    format: Format,

    /// Emit one JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Dimacs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// diss, alpha and nu_s with witnesses and the tight bounds.
    Solve {
        graph: PathBuf,
        /// Report wall-clock time per invariant.
        #[arg(long)]
        timings: bool,
    },
    /// 4/3-approximate maximum dissociation set of a bipartite graph.
    Approx { graph: PathBuf },
    /// Decide whether the approximation is exact for (G, M).
    Recognize {
        graph: PathBuf,
        /// Matching file (lines `m u v`), or `auto` for the deterministic
        /// maximum matching.
        #[arg(long, default_value = "auto")]
        matching: String,
        /// Write a DOT rendering (with the labeling, if any) here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build a gadget instance with its predicted invariants.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetArg,
        /// DIMACS CNF for `clique` and `cocktail`; an edge list for `is` and
        /// `join`.
        input: PathBuf,
        /// Independent Set threshold, required for `is`.
        #[arg(short, long)]
        k: Option<usize>,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check the library's properties over a corpus.
    ///
    /// TARGET is a directory of instance files or a generator:
    /// `catalog[:N]` (connected graphs up to N vertices, default 9),
    /// `random[:COUNT[:MAXN]]` (default 500:14),
    /// `bipartite[:COUNT[:MAXN]]` (default 300:14),
    /// `bipartite-catalog[:N]` (connected bipartite graphs, default 10).
    Check {
        target: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetArg {
    /// One K4 per clause; diss = 2 alpha iff satisfiable.
    Clique,
    /// One K6 minus a perfect matching per clause; diss = alpha iff
    /// satisfiable.
    Cocktail,
    /// Independent Set reduction; alpha(G) >= k iff diss < alpha + nu_s.
    Is,
    /// Join with a clique of the same order plus a cross perfect matching.
    Join,
}

#[derive(Debug)]
pub enum CliError {
    /// Carries the report to print on stdout.
    Violation(String),
    Invalid(String),
    Cutoff(String),
    /// Instances were skipped for size; carries the report.
    CutoffReport(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Cutoff(_) | CliError::CutoffReport(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Violation(m)
            | CliError::Invalid(m)
            | CliError::Cutoff(m)
            | CliError::CutoffReport(m) => m,
        }
    }
}

impl From<dissolab::exact::ExactError> for CliError {
    fn from(e: dissolab::exact::ExactError) -> Self {
        CliError::Cutoff(e.to_string())
    }
}

pub struct Context {
    pub cutoffs: Cutoffs,
    pub json: bool,
}

fn cutoffs(flag: Option<usize>) -> Result<Cutoffs, CliError> {
    if let Some(n) = flag {
        return Ok(Cutoffs::uniform(n));
    }
    match std::env::var("DISSOLAB_CUTOFF") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Cutoffs::uniform)
            .map_err(|_| CliError::Invalid(format!("DISSOLAB_CUTOFF={v:?} is not a count"))),
        Err(_) => Ok(Cutoffs::default()),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let ctx = Context {
        cutoffs: cutoffs(cli.cutoff)?,
        json: cli.json,
    };
    let report = match cli.command {
        Command::Solve { graph, timings } => commands::solve(&ctx, &graph, timings)?,
        Command::Approx { graph } => commands::approx(&graph)?,
        Command::Recognize {
            graph,
            matching,
            dot,
        } => commands::recognize(&graph, &matching, dot.as_deref())?,
        Command::Gadget { kind, input, k, out } => {
            return commands::gadget(&ctx, kind, &input, k, out.as_deref())
        }
        Command::Check { target, seed } => return check::check(&ctx, &target, seed),
    };
    Ok(report.render(ctx.json))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Violation(report) | CliError::CutoffReport(report) => print!("{report}"),
                _ => eprintln!("error: {}", e.message()),
            }
            ExitCode::from(e.code())
        }
    }
}
