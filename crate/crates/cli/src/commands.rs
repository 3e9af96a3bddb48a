use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use sumplete::format::{
    parse_assignment, parse_instance, parse_mask, parse_xsat, serialize_assignment,
    serialize_instance, serialize_mask, serialize_xsat, Format, ParseError,
};
use sumplete::generator::{self, GenConfig, Ratio};
use sumplete::instance::{col_sums, deltas, row_sums, verify as verify_mask, SumpleteInstance};
use sumplete::reduction::{self, ReductionError};
use sumplete::rng::Rng;
use sumplete::solver::{self, SolveStatus, SolverConfig};
use sumplete::xsat::{brute_force_xsat, verify_assignment, MAX_BRUTE_FORCE_VARS};

/// Attempts made by `gen puzzle --unique` before giving up.
const UNIQUE_ATTEMPTS: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Negative = 1,
    Limit = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotRegular(ReductionError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotRegular(_) => 4,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::NotRegular { .. } => CliError::NotRegular(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Context {
    pub format: Format,
    pub seed: u64,
    pub quiet: bool,
}

impl Context {
    fn note(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

/// Reads a file, or standard input for "-".
fn read_input(path: &Path) -> Result<String> {
    let io_err = |source| CliError::Io {
        path: display(path),
        source,
    };
    let mut bytes = Vec::new();
    if path == Path::new("-") {
        io::stdin().read_to_end(&mut bytes).map_err(io_err)?;
    } else {
        bytes = fs::read(path).map_err(io_err)?;
    }
    String::from_utf8(bytes).map_err(|e| {
        io_err(io::Error::new(io::ErrorKind::InvalidData, e.utf8_error()))
    })
}

fn load<T>(path: &Path, parse: fn(&str, Format) -> std::result::Result<T, ParseError>) -> Result<T> {
    let text = read_input(path)?;
    parse(&text, Format::detect(&text)).map_err(|source| CliError::Parse {
        path: display(path),
        source,
    })
}

/// Writes to a file, or standard output when no path is given.
fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).map_err(|source| CliError::Io {
            path: display(p),
            source,
        }),
        _ => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn warn_digits(ctx: &Context, inst: &SumpleteInstance) {
    if !inst.is_single_digit() {
        ctx.note("warning: the grid contains values above 9");
    }
}

pub fn verify(ctx: &Context, instance: &Path, mask: &Path, strict: bool) -> Result<Exit> {
    let inst = load(instance, parse_instance)?;
    let mask = load(mask, parse_mask)?;
    if strict {
        warn_digits(ctx, &inst);
    }
    let ok = verify_mask(&inst, &mask).map_err(|e| CliError::Usage(e.to_string()))?;
    if ok {
        write_output(None, "OK\n")?;
        return Ok(Exit::Success);
    }
    write_output(None, "MISMATCH\n")?;
    let rows = deltas(&row_sums(&inst, &mask).expect("shape checked"), inst.row_hints());
    let cols = deltas(&col_sums(&inst, &mask).expect("shape checked"), inst.col_hints());
    for (label, ds, sums_of) in [("row", rows, inst.row_hints()), ("column", cols, inst.col_hints())] {
        for (k, (d, hint)) in ds.iter().zip(sums_of).enumerate() {
            if *d != 0 {
                ctx.note(format!(
                    "{label} {}: sum {} hint {hint} delta {d:+}",
                    k + 1,
                    i128::from(*hint) + d
                ));
            }
        }
    }
    Ok(Exit::Negative)
}

pub struct SolveOptions {
    pub instance: PathBuf,
    pub count: bool,
    pub cap: u64,
    pub limit: Option<u64>,
    pub stats: bool,
    pub interval_only: bool,
    pub strict: bool,
}

pub fn solve(ctx: &Context, opts: &SolveOptions) -> Result<Exit> {
    let inst = load(&opts.instance, parse_instance)?;
    if opts.strict {
        warn_digits(ctx, &inst);
    }
    if opts.cap == 0 || opts.limit == Some(0) {
        return Err(CliError::Usage("--cap and --limit must be at least 1".into()));
    }
    let mut cfg = SolverConfig::default()
        .with_solution_cap(opts.cap)
        .with_column_reachability(!opts.interval_only);
    if let Some(limit) = opts.limit {
        cfg = cfg.with_node_limit(limit);
    }

    if opts.count {
        let out = solver::count_solutions(&inst, &cfg);
        write_output(None, &format!("{}\n", out.count))?;
        if opts.stats {
            report_stats(ctx, &out.stats);
        }
        return Ok(if out.exhausted {
            if out.count > 0 {
                Exit::Success
            } else {
                Exit::Negative
            }
        } else if out.count == opts.cap {
            ctx.note(format!("stopped after {} solutions", opts.cap));
            Exit::Success
        } else {
            ctx.note("node limit reached; count is a lower bound");
            Exit::Limit
        });
    }

    let out = solver::solve(&inst, &cfg);
    if opts.stats {
        report_stats(ctx, &out.stats);
    }
    match out.status {
        SolveStatus::Solved => {
            let witness = out.witness.expect("solved outcomes carry a witness");
            write_output(None, &serialize_mask(&witness, ctx.format))?;
            Ok(Exit::Success)
        }
        SolveStatus::Unsolvable => {
            write_output(None, "UNSOLVABLE\n")?;
            Ok(Exit::Negative)
        }
        SolveStatus::ResourceLimit => {
            write_output(None, "LIMIT\n")?;
            Ok(Exit::Limit)
        }
    }
}

fn report_stats(ctx: &Context, stats: &solver::SolveStats) {
    ctx.note(format!(
        "nodes_expanded={} row_subsets_enumerated={}",
        stats.nodes_expanded, stats.row_subsets_enumerated
    ));
}

pub fn reduce(
    ctx: &Context,
    formula: &Path,
    out: Option<&Path>,
    witness: Option<(&Path, &Path)>,
) -> Result<Exit> {
    let phi = load(formula, parse_xsat)?;
    let inst = reduction::reduce(&phi)?;
    write_output(out, &serialize_instance(&inst, ctx.format))?;
    if let Some((assignment, witness_out)) = witness {
        let a = load(assignment, parse_assignment)?;
        let mask = reduction::assignment_to_mask(&phi, &a)?;
        if !verify_assignment(&phi, &a).expect("length checked") {
            ctx.note("warning: the assignment does not satisfy the formula");
        }
        write_output(Some(witness_out), &serialize_mask(&mask, ctx.format))?;
    }
    Ok(Exit::Success)
}

pub fn decode(ctx: &Context, formula: &Path, mask: &Path) -> Result<Exit> {
    let phi = load(formula, parse_xsat)?;
    let mask = load(mask, parse_mask)?;
    match reduction::mask_to_assignment(&phi, &mask) {
        Ok(a) => {
            write_output(None, &serialize_assignment(&a, ctx.format))?;
            Ok(Exit::Success)
        }
        Err(ReductionError::NotASolution) => {
            ctx.note("the mask does not solve the reduced puzzle");
            Ok(Exit::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn xsat_verify(ctx: &Context, formula: &Path, assignment: &Path) -> Result<Exit> {
    let phi = load(formula, parse_xsat)?;
    let a = load(assignment, parse_assignment)?;
    let ok = verify_assignment(&phi, &a).map_err(|e| CliError::Usage(e.to_string()))?;
    if ok {
        write_output(None, "OK\n")?;
        return Ok(Exit::Success);
    }
    write_output(None, "MISMATCH\n")?;
    for (c, clause) in phi.clauses().iter().enumerate() {
        let t = clause.iter().filter(|&&v| a.get(v)).count();
        if t != 1 {
            ctx.note(format!("clause {}: {t} true literals", c + 1));
        }
    }
    Ok(Exit::Negative)
}

pub struct PuzzleOptions {
    pub rows: usize,
    pub cols: usize,
    pub alphabet: String,
    pub keep_prob: String,
    pub unique: bool,
    pub out: Option<PathBuf>,
    pub witness: Option<PathBuf>,
}

fn parse_alphabet(s: &str) -> Result<Vec<u64>> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad alphabet value {t:?}")))
        })
        .collect()
}

fn parse_ratio(s: &str) -> Result<Ratio> {
    let bad = || CliError::Usage(format!("bad probability {s:?}, expected num/den"));
    let (num, den) = s.split_once('/').ok_or_else(bad)?;
    let num = num.trim().parse().map_err(|_| bad())?;
    let den = den.trim().parse().map_err(|_| bad())?;
    Ratio::new(num, den).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn gen_puzzle(ctx: &Context, opts: &PuzzleOptions) -> Result<Exit> {
    let base = GenConfig::new(opts.rows, opts.cols, ctx.seed)
        .with_alphabet(parse_alphabet(&opts.alphabet)?)
        .with_keep_prob(parse_ratio(&opts.keep_prob)?);

    // Attempt k > 0 uses the k-th draw of a stream seeded with --seed.
    let mut seeds = Rng::new(ctx.seed);
    let mut seed = ctx.seed;
    for attempt in 0..UNIQUE_ATTEMPTS {
        if attempt > 0 {
            seed = seeds.next_u64();
        }
        let cfg = GenConfig { seed, ..base.clone() };
        let (inst, mask) = generator::gen_puzzle(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
        if opts.unique {
            let cap = SolverConfig::default().with_solution_cap(2);
            if solver::count_solutions(&inst, &cap).count != 1 {
                continue;
            }
        }
        write_output(opts.out.as_deref(), &serialize_instance(&inst, ctx.format))?;
        if let Some(path) = &opts.witness {
            write_output(Some(path), &serialize_mask(&mask, ctx.format))?;
        }
        return Ok(Exit::Success);
    }
    ctx.note(format!("no uniquely solvable puzzle in {UNIQUE_ATTEMPTS} attempts"));
    Ok(Exit::Limit)
}

pub fn gen_xsat(ctx: &Context, n: usize, out: Option<&Path>) -> Result<Exit> {
    let phi = generator::gen_xsat_regular(n, ctx.seed).map_err(|e| CliError::Usage(e.to_string()))?;
    write_output(out, &serialize_xsat(&phi, ctx.format))?;
    Ok(Exit::Success)
}

pub fn gen_planted(
    ctx: &Context,
    n: usize,
    out: Option<&Path>,
    witness: Option<&Path>,
) -> Result<Exit> {
    let (phi, a) =
        generator::gen_xsat_planted(n, ctx.seed).map_err(|e| CliError::Usage(e.to_string()))?;
    write_output(out, &serialize_xsat(&phi, ctx.format))?;
    if let Some(path) = witness {
        write_output(Some(path), &serialize_assignment(&a, ctx.format))?;
    }
    Ok(Exit::Success)
}

/// Instance `k` is generated from the `k`-th draw of a stream seeded with
/// `--seed`.
pub fn equiv(ctx: &Context, n: usize, count: usize) -> Result<Exit> {
    if n > MAX_BRUTE_FORCE_VARS {
        return Err(CliError::Usage(format!(
            "n = {n} is above the brute-force bound of {MAX_BRUTE_FORCE_VARS}"
        )));
    }
    let mut seeds = Rng::new(ctx.seed);
    let (mut sat, mut unsat) = (0usize, 0usize);
    for k in 0..count {
        let seed = seeds.next_u64();
        let phi = generator::gen_xsat_regular(n, seed).map_err(|e| CliError::Usage(e.to_string()))?;
        let satisfiable = brute_force_xsat(&phi).expect("n is bounded").satisfiable;
        let out = solver::solve(&reduction::reduce(&phi)?, &SolverConfig::default());
        let solvable = out.status == SolveStatus::Solved;
        let decoded_ok = out.witness.as_ref().is_none_or(|m| {
            reduction::mask_to_assignment(&phi, m)
                .map(|a| verify_assignment(&phi, &a).unwrap_or(false))
                .unwrap_or(false)
        });
        if satisfiable != solvable || !decoded_ok || out.status == SolveStatus::ResourceLimit {
            write_output(
                None,
                &format!(
                    "DISAGREE instance {k} seed {seed}: satisfiable={satisfiable} solvable={solvable}\n"
                ),
            )?;
            write_output(None, &serialize_xsat(&phi, ctx.format))?;
            return Ok(Exit::Negative);
        }
        if satisfiable {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    write_output(
        None,
        &format!("AGREE {count}/{count} n={n} satisfiable={sat} unsatisfiable={unsat}\n"),
    )?;
    Ok(Exit::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabets() {
        assert_eq!(parse_alphabet("1,3").unwrap(), vec![1, 3]);
        assert_eq!(parse_alphabet("(1,3)").unwrap(), vec![1, 3]);
        assert_eq!(parse_alphabet(" 2, 4 ,6").unwrap(), vec![2, 4, 6]);
        assert!(parse_alphabet("1,x").is_err());
    }

    #[test]
    fn ratios() {
        assert_eq!(parse_ratio("1/2").unwrap(), Ratio::HALF);
        assert!(parse_ratio("0.5").is_err());
        assert!(parse_ratio("3/2").is_err());
    }
}
