//! Command-line front end: code files, analysis and bound reports, simulation.

pub mod codefile;
pub mod report;
pub mod simulate;

pub use codefile::{Coeff, CodeSpecFile};
pub use report::{analyze, AnalysisReport};
pub use simulate::{simulate, summarize, write_csv, SimulationConfig, SimulationRow, SimulationSummary};

use std::fs;
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{compare_all, Analysis, BoundOptions, BoundReport, Caps, Families, TieMode};
use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::linalg::{Distance, DEFAULT_ORACLE_BUDGET, DEFAULT_SUBSET_CAP};
use crate::qtstruct::QtCode;

/// Exit code for parse and validation errors.
pub const EXIT_PARSE: u8 = 1;
/// Exit code when a required result hit a budget or cap.
pub const EXIT_BUDGET: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "qtcodes", version, about = "Quasi-twisted code analysis and minimum-distance bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Groebner matrix, eigenvalues and eigencodes of a code.
    Analyze(AnalyzeArgs),
    /// Compare the true distance with the Jensen, spectral and generalized spectral bounds.
    Bounds(BoundsArgs),
    /// Exact minimum distance.
    Distance(DistanceArgs),
    /// Random-code simulation with sharp/best tallies.
    Simulate(SimulateArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    /// Largest eigenvalue set whose subsets are searched exhaustively.
    #[arg(long, default_value_t = 12)]
    pub max_subset_bits: u32,
    /// Largest number of codewords enumerated by a distance computation.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    pub oracle_budget: u64,
    /// Largest number of column subsets ranked by a distance computation.
    #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
    pub subset_cap: u64,
    /// Above --max-subset-bits, fall back to consecutive subsets instead of failing.
    #[arg(long)]
    pub restricted: bool,
}

impl CapArgs {
    pub fn caps(&self) -> Caps {
        Caps {
            oracle_budget: self.oracle_budget,
            subset_cap: self.subset_cap,
            max_subset_bits: self.max_subset_bits,
            restricted: self.restricted,
            ..Caps::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Code file (JSON); `-` reads standard input.
    pub file: PathBuf,
    /// Eigenvalue subset for an eigencode, e.g. `0,2`; repeatable.
    #[arg(long = "set", value_parser = parse_set)]
    pub sets: Vec<ExponentSet>,
    #[command(flatten)]
    pub caps: CapArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    pub file: PathBuf,
    /// Maximum number of terms in the generalized spectral bound.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub s: u32,
    /// Comma-separated bound families: bch, ht, roos, exact.
    #[arg(long, default_value = "bch,ht,roos,exact", value_parser = parse_families)]
    pub families: Families,
    /// Skip the exact distance computation.
    #[arg(long)]
    pub no_oracle: bool,
    /// Try every order of equal-distance constituents in the Jensen bound.
    #[arg(long)]
    pub exhaustive_ties: bool,
    #[command(flatten)]
    pub caps: CapArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub caps: CapArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 3)]
    pub q: u64,
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    /// Integer encoding of lambda in F_q.
    #[arg(long, default_value_t = 2)]
    pub lambda: u64,
    /// Index range, e.g. `2-4`.
    #[arg(long, default_value = "2-4", value_parser = parse_range)]
    pub ell_range: RangeInclusive<usize>,
    /// Generator count range; counts above the index are skipped.
    #[arg(long, default_value = "1-4", value_parser = parse_range)]
    pub r_range: RangeInclusive<usize>,
    #[arg(long, default_value_t = 135)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated term counts of the generalized bound.
    #[arg(long, default_value = "2,3,4", value_parser = parse_s_list)]
    pub s: SList,
    #[arg(long, default_value = "bch,ht,roos,exact", value_parser = parse_families)]
    pub families: Families,
    #[command(flatten)]
    pub caps: CapArgs,
    /// CSV destination (standard output by default).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the summary as JSON to this path.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

/// A list of term counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SList(pub Vec<usize>);

fn parse_families(s: &str) -> std::result::Result<Families, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `a-b` or a single value.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (num(a)?, num(b)?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

fn parse_s_list(s: &str) -> std::result::Result<SList, String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if v.contains(&0) {
        return Err("s must be at least 1".into());
    }
    Ok(SList(v))
}

/// Parses `0,2` or `{0,2}`; the empty string gives the empty set.
pub fn parse_set(s: &str) -> std::result::Result<ExponentSet, String> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let mut set = ExponentSet::EMPTY;
    for t in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let k: usize = t.parse().map_err(|e| format!("{t:?}: {e}"))?;
        if k >= crate::exponents::MAX_M {
            return Err(format!("exponent {k} too large"));
        }
        set.insert(k);
    }
    Ok(set)
}

/// Reads and validates a code file (`-` for standard input).
pub fn load_code(path: &Path) -> Result<QtCode> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    CodeSpecFile::parse(&text)?.to_code()
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Internal(format!("output: {e}"));
    match out {
        Some(p) => fs::write(p, text).map_err(io),
        None => stdout.write_all(text.as_bytes()).map_err(io),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Maps an error to its process exit code.
pub fn exit_code(e: &Error) -> u8 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_PARSE
    }
}

fn cell(d: Option<Distance>) -> String {
    d.map(|d| d.to_string()).unwrap_or_default()
}

/// The bound report as a two-line CSV document.
pub fn bound_report_csv(r: &BoundReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "q", "m", "ell", "dim", "s", "d_true", "d_jensen", "d_spec1", "d_specS", "sharp_jensen", "sharp_spec1",
        "sharp_specS", "best_jensen", "best_spec1", "best_specS", "witness",
    ];
    let witness: Vec<String> =
        r.d_spec_s.witness.iter().map(|b| format!("{}:{}:{}", b.kind, b.set, b.d)).collect();
    let row = [
        r.q.to_string(),
        r.m.to_string(),
        r.ell.to_string(),
        r.dimension.to_string(),
        r.s.to_string(),
        cell(r.d_true.as_ref().and_then(|d| d.value)),
        cell(r.d_jensen.value),
        cell(r.d_spec_1.value),
        cell(r.d_spec_s.value),
        r.sharp.jensen.to_string(),
        r.sharp.spec_1.to_string(),
        r.sharp.spec_s.to_string(),
        r.best.jensen.to_string(),
        r.best.spec_1.to_string(),
        r.best.spec_s.to_string(),
        witness.join(" "),
    ];
    let io = |e: csv::Error| Error::Internal(format!("csv output: {e}"));
    w.write_record(header).map_err(io)?;
    w.write_record(&row).map_err(io)?;
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of ascii fields"))
}

/// Runs a parsed command line, writing results to `stdout` (or `--out`) and
/// diagnostics to `stderr`. Returns the exit code for completed runs.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Analyze(a) => {
            let code = load_code(&a.file)?;
            let analysis = Analysis::new(&code)?;
            let report = analyze(&analysis, &a.sets, a.caps.caps().oracle_budget)?;
            emit(&a.out, stdout, &json(&report))?;
            Ok(0)
        }
        Command::Bounds(a) => {
            let code = load_code(&a.file)?;
            let opts = BoundOptions {
                s: a.s as usize,
                families: a.families.clone(),
                caps: a.caps.caps(),
                with_oracle: !a.no_oracle,
                ties: if a.exhaustive_ties { TieMode::Exhaustive } else { TieMode::AscendingIndex },
            };
            let report = compare_all(&code, &opts)?;
            let text = match a.format {
                Format::Json => json(&report),
                Format::Csv => bound_report_csv(&report)?,
            };
            emit(&a.out, stdout, &text)?;
            Ok(if report.budget_failure() { EXIT_BUDGET } else { 0 })
        }
        Command::Distance(a) => {
            let code = load_code(&a.file)?;
            let caps = a.caps.caps();
            let d = Analysis::new(&code)?.true_distance(&caps)?;
            let text = match a.format {
                Format::Json => json(&serde_json::json!({ "d_true": d })),
                Format::Csv => format!("d_true\n{d}\n"),
            };
            emit(&a.out, stdout, &text)?;
            Ok(0)
        }
        Command::Simulate(a) => {
            let cfg = SimulationConfig {
                q: a.q,
                m: a.m,
                lambda: a.lambda,
                ell_range: a.ell_range,
                r_range: a.r_range,
                count: a.count,
                seed: a.seed,
                s_values: a.s.0,
                families: a.families,
                caps: a.caps.caps(),
                ..SimulationConfig::default()
            };
            let rows = simulate(&cfg)?;
            let mut buf = Vec::new();
            write_csv(&cfg, &rows, &mut buf)?;
            emit(&a.out, stdout, std::str::from_utf8(&buf).expect("csv of ascii fields"))?;
            let summary = summarize(&cfg, &rows);
            if let Some(p) = &a.summary {
                fs::write(p, json(&summary)).map_err(|e| Error::Internal(format!("{}: {e}", p.display())))?;
            }
            write!(stderr, "{summary}").map_err(|e| Error::Internal(format!("output: {e}")))?;
            Ok(0)
        }
    }
}
