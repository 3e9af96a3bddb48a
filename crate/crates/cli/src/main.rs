//! `sumplete` command-line tool.
//!
//! Exit codes: 0 success, 1 negative answer (does not verify, unsolvable,
//! disagreement), 2 I/O, format or usage error, 3 resource limit reached,
//! 4 formula is not regular.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sumplete::format::Format;

#[derive(Parser)]
#[command(name = "sumplete", version, about = "Sumplete puzzles and the XSAT reduction")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Seed for commands that draw random numbers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suppress diagnostics on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Text => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a mask against a puzzle.
    Verify {
        instance: PathBuf,
        mask: PathBuf,
        /// Warn when cells hold more than one digit.
        #[arg(long)]
        strict: bool,
    },
    /// Solve a puzzle, or count its solutions.
    Solve(SolveArgs),
    /// Turn a regular XSAT formula into a (1,3)-Sumplete puzzle.
    Reduce {
        formula: PathBuf,
        /// Where to write the puzzle (standard output by default).
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Also translate this assignment into a mask of the puzzle.
        #[arg(long, value_name = "ASSIGNMENT", requires = "witness_out")]
        emit_witness: Option<PathBuf>,
        /// Where to write the translated mask.
        #[arg(long, value_name = "PATH")]
        witness_out: Option<PathBuf>,
    },
    /// Read the assignment back from a solution of a reduced puzzle.
    Decode { formula: PathBuf, mask: PathBuf },
    /// Generate puzzles or formulas.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check on random regular formulas that the formula is satisfiable
    /// exactly when its reduced puzzle is solvable.
    Equiv {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
    /// Check an assignment against a formula.
    XsatVerify { formula: PathBuf, assignment: PathBuf },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Count solutions instead of printing one.
    #[arg(long)]
    count: bool,
    /// Stop counting after this many solutions.
    #[arg(long, default_value_t = 1_000_000)]
    cap: u64,
    /// Node budget for the search.
    #[arg(long)]
    limit: Option<u64>,
    /// Print search counters on standard error.
    #[arg(long)]
    stats: bool,
    /// Use only interval bounds for column pruning.
    #[arg(long)]
    interval_only: bool,
    /// Warn when cells hold more than one digit.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum GenKind {
    /// A random puzzle with a solution.
    Puzzle(PuzzleArgs),
    /// A random regular XSAT formula.
    Xsat {
        #[arg(long)]
        n: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// A random regular XSAT formula with a known satisfying assignment.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Where to write the planted assignment.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PuzzleArgs {
    #[arg(long, default_value_t = 5)]
    rows: usize,
    #[arg(long, default_value_t = 5)]
    cols: usize,
    /// Allowed cell values, comma separated ("1,3" or "(1,3)").
    #[arg(long, default_value = "1,2,3,4,5,6,7,8,9")]
    alphabet: String,
    /// Probability of keeping a cell in the hidden solution, as "num/den".
    #[arg(long, default_value = "1/2")]
    keep_prob: String,
    /// Only emit puzzles with exactly one solution.
    #[arg(long)]
    unique: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Where to write the hidden solution.
    #[arg(long)]
    witness: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        format: cli.format.into(),
        seed: cli.seed,
        quiet: cli.quiet,
    };
    let result = match cli.command {
        Command::Verify {
            instance,
            mask,
            strict,
        } => commands::verify(&ctx, &instance, &mask, strict),
        Command::Solve(a) => commands::solve(
            &ctx,
            &commands::SolveOptions {
                instance: a.instance,
                count: a.count,
                cap: a.cap,
                limit: a.limit,
                stats: a.stats,
                interval_only: a.interval_only,
                strict: a.strict,
            },
        ),
        Command::Reduce {
            formula,
            out,
            emit_witness,
            witness_out,
        } => commands::reduce(
            &ctx,
            &formula,
            out.as_deref(),
            emit_witness.as_deref().zip(witness_out.as_deref()),
        ),
        Command::Decode { formula, mask } => commands::decode(&ctx, &formula, &mask),
        Command::Gen { kind } => match kind {
            GenKind::Puzzle(a) => commands::gen_puzzle(
                &ctx,
                &commands::PuzzleOptions {
                    rows: a.rows,
                    cols: a.cols,
                    alphabet: a.alphabet,
                    keep_prob: a.keep_prob,
                    unique: a.unique,
                    out: a.out,
                    witness: a.witness,
                },
            ),
            GenKind::Xsat { n, out } => commands::gen_xsat(&ctx, n, out.as_deref()),
            GenKind::Planted { n, out, witness } => {
                commands::gen_planted(&ctx, n, out.as_deref(), witness.as_deref())
            }
        },
        Command::Equiv { n, count } => commands::equiv(&ctx, n, count),
        Command::XsatVerify {
            formula,
            assignment,
        } => commands::xsat_verify(&ctx, &formula, &assignment),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            if !ctx.quiet {
                eprintln!("error: {err}");
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
