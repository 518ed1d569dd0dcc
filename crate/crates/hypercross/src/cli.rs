//! Command-line surface.
//!
//! Every command renders its report into a `String` first, so repeated runs
//! with the same flags produce byte-identical output. Timing goes to stderr.
//!
//! Exit status: 0 success, 1 verification failure, 2 invalid input.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hypercross_core::crossing::CrossingPair;
use hypercross_core::exact_geom::format_rational;
use hypercross_core::hypergraph::{
    count_crossings, lower_bound, lower_bound_closed_form, random_drawing, subhypergraph_counts, BoundKind, CrossingReport,
    Drawing, PartiteSignature,
};
use hypercross_core::witness::{colored_tverberg_pair, observation1_witness, theorem1_witness};
use hypercross_core::{Error as CoreError, Point, Rational};

use crate::format::{drawing_to_json, from_json, parse_drawing, to_json, DrawingRef, WitnessFile};
use crate::suites;
use crate::verify::{verify_witness, VerifyError};

#[derive(Debug, Parser)]
#[command(name = "hypercross", version, about = "Exact crossing counts and witnesses for d-partite rectilinear drawings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded random drawing in general position.
    Gen(GenArgs),
    /// Count crossing pairs of vertex-disjoint hyperedges.
    Count(CountArgs),
    /// Extract a crossing witness (Gale transform + Ham-Sandwich, or colored Tverberg).
    Witness(WitnessArgs),
    /// Find a colored Tverberg pair.
    Tverberg(TverbergArgs),
    /// Tabulate the exact lower bounds over a grid of (n, d).
    Bounds(BoundsArgs),
    /// Re-check a witness file against its drawing.
    Verify(VerifyArgs),
    /// Run the acceptance suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Part sizes such as `3x3` (three parts of three) or `2x3+2x2`.
    #[arg(long, required_unless_present_all = ["n", "d"], conflicts_with_all = ["n", "d"])]
    pub signature: Option<String>,
    /// Vertices per part, for the balanced signature `d x n`.
    #[arg(long, requires = "d")]
    pub n: Option<usize>,
    /// Number of parts and dimension.
    #[arg(long, requires = "n")]
    pub d: Option<usize>,
    #[arg(long)]
    pub seed: u64,
    /// Coordinates are drawn uniformly from `[0, coord_bound]`.
    #[arg(long, default_value_t = 1000)]
    pub coord_bound: u64,
    /// Write the drawing here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// List every crossing pair with its certificate.
    #[arg(long)]
    pub emit_pairs: bool,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Use the colored Tverberg pipeline on the Observation-1 shape.
    #[arg(long)]
    pub observation1: bool,
    /// Write the witness file here.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Report printed on stdout. Defaults to the witness file itself unless
    /// `--output` is given.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct TverbergArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Color classes as vertex triples, e.g. `0,1,2;3,4,5;6,7,8`. Defaults to
    /// the first ceil(d/2)+1 parts, which must have three vertices each.
    #[arg(long)]
    pub classes: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Vertices per part: a value or an inclusive range such as `3..10`.
    #[arg(long)]
    pub n: String,
    /// Dimension: a value or an inclusive range such as `3..5`.
    #[arg(long)]
    pub d: String,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub witness: PathBuf,
    #[arg(long)]
    pub drawing: PathBuf,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Base seed for every randomized suite.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated criterion numbers to run instead of all of them.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Failure {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Invalid(_) => 2,
        }
    }
}

/// Pipeline errors that mean a computation disagreed with the theory are
/// verification failures; everything else is a problem with the input.
fn core_failure(e: CoreError) -> Failure {
    match e {
        CoreError::TheoremViolated(_) | CoreError::Verification(_) | CoreError::NoBisector => {
            Failure::Verification(e.to_string())
        }
        _ => Failure::Invalid(e.to_string()),
    }
}

/// Output of a successful command.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command and writes its output; returns the exit status.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    match execute(cli.command) {
        Ok(report) => {
            let ok = stdout.write_all(report.stdout.as_bytes()).and_then(|_| stderr.write_all(report.stderr.as_bytes()));
            if ok.is_err() {
                return 2;
            }
            0
        }
        Err((partial, failure)) => {
            let _ = stdout.write_all(partial.as_bytes());
            let _ = writeln!(stderr, "error: {failure}");
            failure.code()
        }
    }
}

/// Like [`run`] but returns the outputs. A failing command keeps whatever it
/// printed before failing in the first element of the error.
pub fn execute(command: Command) -> Result<Report, (String, Failure)> {
    let no_partial = |f: Failure| (String::new(), f);
    match command {
        Command::Gen(args) => gen(&args).map_err(no_partial),
        Command::Count(args) => count(&args),
        Command::Witness(args) => witness(&args).map_err(no_partial),
        Command::Tverberg(args) => tverberg(&args).map_err(no_partial),
        Command::Bounds(args) => bounds(&args).map_err(no_partial),
        Command::Verify(args) => verify(&args),
        Command::Selftest(args) => selftest(&args),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))
}

pub fn load_drawing(path: &Path) -> Result<Drawing, Failure> {
    parse_drawing(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn gen(args: &GenArgs) -> Result<Report, Failure> {
    let signature = match (&args.signature, args.n, args.d) {
        (Some(s), _, _) => s.parse::<PartiteSignature>().map_err(core_failure)?,
        (None, Some(n), Some(d)) => PartiteSignature::balanced(d, n).map_err(core_failure)?,
        _ => return Err(Failure::Invalid("give --signature or both --n and --d".into())),
    };
    let drawing = random_drawing(&signature, args.seed, args.coord_bound).map_err(core_failure)?;
    let text = drawing_to_json(&drawing);
    match &args.output {
        Some(path) => {
            write(path, &text)?;
            Ok(Report::default())
        }
        None => Ok(Report { stdout: text, stderr: String::new() }),
    }
}

fn set(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn point(p: &Point) -> String {
    let items: Vec<String> = p.coords().iter().map(format_rational).collect();
    format!("({})", items.join(", "))
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            let _ = write!(line, "{cell:<w$}  ", w = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn row<const N: usize>(cells: [&str; N]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

#[derive(Serialize)]
struct BoundEntry {
    bound: &'static str,
    value: String,
    satisfied: bool,
}

#[derive(Serialize)]
struct CountOutput {
    signature: String,
    dimension: usize,
    hyperedges: usize,
    total_pairs_checked: u64,
    crossing_count: u64,
    /// The bounds hold for the minimum over all drawings, so a single drawing
    /// can only confirm the one-sided implication.
    bound_check: &'static str,
    bound_comparisons: Vec<BoundEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<crate::format::PairEntry>>,
}

fn render_count(drawing: &Drawing, report: &CrossingReport, format: Format) -> String {
    match format {
        Format::Structured => to_json(&CountOutput {
            signature: drawing.signature().to_string(),
            dimension: drawing.dim(),
            hyperedges: drawing.signature().hyperedge_count(),
            total_pairs_checked: report.total_pairs_checked,
            crossing_count: report.crossing_count,
            bound_check: "one-sided",
            bound_comparisons: report
                .bound_comparisons
                .iter()
                .map(|b| BoundEntry { bound: b.kind.name(), value: format_rational(&b.value), satisfied: b.satisfied })
                .collect(),
            pairs: report.pairs.as_ref().map(|p| p.iter().map(crate::format::PairEntry::from_pair).collect()),
        }),
        Format::Human => {
            let mut out = table(&[
                row(["signature", &drawing.signature().to_string()]),
                row(["dimension", &drawing.dim().to_string()]),
                row(["hyperedges", &drawing.signature().hyperedge_count().to_string()]),
                row(["pairs checked", &report.total_pairs_checked.to_string()]),
                row(["crossing pairs", &report.crossing_count.to_string()]),
            ]);
            if !report.bound_comparisons.is_empty() {
                out.push_str("\nlower bounds on the minimum over all drawings (one-sided check)\n");
                let mut rows = vec![row(["bound", "value", "satisfied"])];
                for b in &report.bound_comparisons {
                    rows.push(row([b.kind.name(), &format_rational(&b.value), if b.satisfied { "yes" } else { "NO" }]));
                }
                out.push_str(&table(&rows));
            }
            if let Some(pairs) = &report.pairs {
                out.push_str("\ncrossing pairs\n");
                let rows: Vec<Vec<String>> = pairs
                    .iter()
                    .map(|p| vec![set(&p.left), "x".into(), set(&p.right), "at".into(), point(&p.certificate.common_point)])
                    .collect();
                out.push_str(&table(&rows));
            }
            out
        }
    }
}

fn count(args: &CountArgs) -> Result<Report, (String, Failure)> {
    let drawing = load_drawing(&args.input).map_err(|f| (String::new(), f))?;
    let start = Instant::now();
    let report = count_crossings(&drawing, args.emit_pairs).map_err(|e| (String::new(), core_failure(e)))?;
    let stderr = format!("elapsed {:.3}s\n", start.elapsed().as_secs_f64());
    let stdout = render_count(&drawing, &report, args.format);
    if let Some(b) = report.bound_comparisons.iter().find(|b| !b.satisfied) {
        let msg = format!(
            "{} crossing pairs is below the {} lower bound {}",
            report.crossing_count,
            b.kind,
            format_rational(&b.value)
        );
        return Err((stdout, Failure::Verification(msg)));
    }
    Ok(Report { stdout, stderr })
}

fn pair_rows(pairs: &[CrossingPair]) -> Vec<Vec<String>> {
    pairs
        .iter()
        .map(|p| {
            let text = format!("{} x {} at {}", set(&p.left), set(&p.right), point(&p.certificate.common_point));
            vec!["pair".into(), text]
        })
        .collect()
}

fn emit_witness(file: &WitnessFile, summary: String, output: Option<&Path>, format: Option<Format>) -> Result<Report, Failure> {
    let json = to_json(file);
    if let Some(path) = output {
        write(path, &json)?;
    }
    let stdout = match (format, output) {
        (Some(Format::Human), _) => summary,
        (Some(Format::Structured), _) | (None, None) => json,
        (None, Some(_)) => String::new(),
    };
    Ok(Report { stdout, stderr: String::new() })
}

fn input_ref(path: &Path, drawing: &Drawing) -> DrawingRef {
    DrawingRef::new(&path.display().to_string(), drawing)
}

fn witness(args: &WitnessArgs) -> Result<Report, Failure> {
    let drawing = load_drawing(&args.input)?;
    let drawing_ref = input_ref(&args.input, &drawing);
    if args.observation1 {
        let w = observation1_witness(&drawing).map_err(core_failure)?;
        let classes = &drawing.parts()[..drawing.dim().div_ceil(2) + 1];
        let mut rows = vec![
            row(["pipeline", "observation1"]),
            row(["tverberg", &format!("{} x {}", set(&w.tverberg.s1), set(&w.tverberg.s2))]),
            row(["crossing pairs", &w.pairs.len().to_string()]),
        ];
        rows.extend(pair_rows(&w.pairs));
        let file = WitnessFile::observation1(drawing_ref, classes, &w);
        emit_witness(&file, table(&rows), args.output.as_deref(), args.format)
    } else {
        let w = theorem1_witness(&drawing).map_err(core_failure)?;
        let mut rows = vec![
            row(["pipeline", "theorem1"]),
            row(["normal", &point(&w.normal)]),
            row([
                "partition",
                &format!("+{} -{} 0{}", set(&w.partition.plus), set(&w.partition.minus), set(&w.partition.zero)),
            ]),
            row(["radon", &format!("{} x {}", set(&w.radon.left), set(&w.radon.right))]),
            row(["hypothesis", w.hypothesis.name()]),
            row(["extensions", &w.extensions.to_string()]),
        ];
        rows.extend(pair_rows(std::slice::from_ref(&w.pair)));
        let file = WitnessFile::theorem1(drawing_ref, &w);
        emit_witness(&file, table(&rows), args.output.as_deref(), args.format)
    }
}

fn parse_classes(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .map(|class| {
            class
                .split(',')
                .map(|v| v.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Invalid(format!("--classes: cannot parse {class:?} as vertex indices")))
        })
        .collect()
}

fn tverberg(args: &TverbergArgs) -> Result<Report, Failure> {
    let drawing = load_drawing(&args.input)?;
    let classes = match &args.classes {
        Some(text) => parse_classes(text)?,
        None => {
            let k1 = drawing.dim().div_ceil(2) + 1;
            let parts = drawing.parts();
            if parts.len() < k1 || parts[..k1].iter().any(|p| p.len() != 3) {
                return Err(Failure::Invalid(format!(
                    "default classes need the first {k1} parts to have three vertices; pass --classes"
                )));
            }
            parts[..k1].to_vec()
        }
    };
    let t = colored_tverberg_pair(drawing.vertices(), &classes).map_err(core_failure)?;
    let rows = vec![
        row(["pipeline", "tverberg"]),
        row(["classes", &classes.iter().map(|c| set(c)).collect::<Vec<_>>().join(" ")]),
        row(["s1", &set(&t.s1)]),
        row(["s2", &set(&t.s2)]),
        row(["common point", &point(&t.certificate.common_point)]),
    ];
    let file = WitnessFile::tverberg(input_ref(&args.input, &drawing), &classes, &t);
    emit_witness(&file, table(&rows), args.output.as_deref(), args.format)
}

/// `"5"` or the inclusive range `"3..10"`.
pub fn parse_range(flag: &str, text: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Invalid(format!("--{flag}: expected a number or a range like 3..5, found {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range = match text.split_once("..") {
        Some((lo, hi)) => num(lo)?..=num(hi.strip_prefix('=').unwrap_or(hi))?,
        None => num(text)?..=num(text)?,
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

#[derive(Serialize)]
struct BoundsRow {
    n: usize,
    d: usize,
    thm1: String,
    obs1: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    embeddings: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    containment: Option<String>,
}

/// Evaluates a bound in both forms and insists they agree.
fn cross_checked(n: usize, d: usize, kind: BoundKind) -> Result<Rational, Failure> {
    let product = lower_bound(n, d, kind).map_err(core_failure)?;
    let closed = lower_bound_closed_form(n, d, kind).map_err(core_failure)?;
    if product != closed {
        return Err(Failure::Verification(format!(
            "{kind}({n},{d}): product form {} disagrees with closed form {}",
            format_rational(&product),
            format_rational(&closed)
        )));
    }
    Ok(product)
}

fn bounds(args: &BoundsArgs) -> Result<Report, Failure> {
    let ns = parse_range("n", &args.n)?;
    let ds = parse_range("d", &args.d)?;
    let mut rows = Vec::new();
    for n in ns {
        for d in ds.clone() {
            let thm1 = cross_checked(n, d, BoundKind::Theorem1)?;
            let obs1 = cross_checked(n, d, BoundKind::Observation1)?;
            let counts = if d >= 3 { Some(subhypergraph_counts(n, d).map_err(core_failure)?) } else { None };
            if let Some(c) = &counts {
                if c.ratio() != thm1 {
                    return Err(Failure::Verification(format!(
                        "thm1({n},{d}) = {} but embeddings/containment = {}",
                        format_rational(&thm1),
                        format_rational(&c.ratio())
                    )));
                }
            }
            rows.push(BoundsRow {
                n,
                d,
                thm1: format_rational(&thm1),
                obs1: format_rational(&obs1),
                embeddings: counts.as_ref().map(|c| c.embeddings.to_string()),
                containment: counts.as_ref().map(|c| c.containment.to_string()),
            });
        }
    }
    let stdout = match args.format {
        Format::Structured => to_json(&rows),
        Format::Human => {
            let mut cells = vec![row(["n", "d", "thm1", "obs1", "embeddings", "containment"])];
            for r in &rows {
                cells.push(vec![
                    r.n.to_string(),
                    r.d.to_string(),
                    r.thm1.clone(),
                    r.obs1.clone(),
                    r.embeddings.clone().unwrap_or_else(|| "-".into()),
                    r.containment.clone().unwrap_or_else(|| "-".into()),
                ]);
            }
            table(&cells)
        }
    };
    Ok(Report { stdout, stderr: String::new() })
}

fn verify(args: &VerifyArgs) -> Result<Report, (String, Failure)> {
    let invalid = |f| (String::new(), f);
    let drawing = load_drawing(&args.drawing).map_err(invalid)?;
    let text = read(&args.witness).map_err(invalid)?;
    let file: WitnessFile =
        from_json(&text).map_err(|e| invalid(Failure::Invalid(format!("{}: {e}", args.witness.display()))))?;
    match verify_witness(&file, &drawing) {
        Ok(summary) => {
            let name = serde_json::to_value(summary.pipeline).expect("enum serializes");
            let stdout = format!(
                "ok: {} witness, {} crossing pair{} verified\n",
                name.as_str().unwrap_or_default(),
                summary.pairs,
                if summary.pairs == 1 { "" } else { "s" }
            );
            Ok(Report { stdout, stderr: String::new() })
        }
        Err(VerifyError::Malformed(e)) => Err(invalid(Failure::Invalid(format!("{}: {e}", args.witness.display())))),
        Err(VerifyError::Failed(msg)) => Err((String::new(), Failure::Verification(msg))),
    }
}

fn selftest(args: &SelftestArgs) -> Result<Report, (String, Failure)> {
    let ids: Vec<u8> = if args.only.is_empty() { suites::CRITERIA.iter().map(|c| c.0).collect() } else { args.only.clone() };
    if let Some(id) = ids.iter().find(|id| !suites::CRITERIA.iter().any(|c| c.0 == **id)) {
        return Err((String::new(), Failure::Invalid(format!("--only: no criterion {id}"))));
    }
    let mut stdout = String::new();
    let mut failed = Vec::new();
    for id in ids {
        let result = suites::run_criterion(id, args.seed);
        stdout.push_str(&result.to_string());
        stdout.push('\n');
        if !result.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        Ok(Report { stdout, stderr: String::new() })
    } else {
        Err((stdout, Failure::Verification(format!("criteria {failed:?} failed"))))
    }
}
