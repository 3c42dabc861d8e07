use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latinsq::io::{self, Document, FamilyDoc, FrequencyDoc, SquareDoc};
use latinsq::search::{
    conjecture_probe, enumerate_latin, exhaustive_t_max, max_mutual_subset, orthogonal_mate_search,
    EnumerationMode, Payload,
};
use latinsq::verify::{
    defect, freq_orthogonal, is_frequency, is_latin, min_orthogonality_degree,
    mutually_t_orthogonal, t_orthogonal,
};
use latinsq::{
    Built, ConstructionSpec, Error, FrequencySquare, LatinSquare, SearchBudget, SquareFamily,
    Status,
};
use serde::Serialize;

mod table;

/// Construct, check and search Latin squares and t-orthogonal families.
#[derive(Parser)]
#[command(name = "latinsq", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a square, family or frequency square.
    Gen(GenArgs),
    /// Check that a file holds a Latin square, family or frequency square.
    Check {
        file: PathBuf,
        /// Check a text grid as a frequency square of this multiplicity.
        #[arg(long)]
        lambda: Option<usize>,
    },
    /// Orthogonality verdicts over a family file.
    Ortho(OrthoArgs),
    /// Exhaustive searches.
    Search(SearchArgs),
    /// Evaluate mutual t-orthogonality for every t of a family.
    Probe { file: PathBuf },
    /// The constructions available at one order.
    Table { order: usize },
}

#[derive(Args)]
struct GenArgs {
    /// (i + h j) mod s.
    #[arg(long, value_name = "S", group = "source")]
    additive: Option<usize>,
    /// Multiplier for --additive.
    #[arg(
        long,
        value_name = "K",
        requires = "additive",
        conflicts_with = "all_h"
    )]
    h: Option<usize>,
    /// Every multiplier coprime to s.
    #[arg(long, requires = "additive")]
    all_h: bool,
    /// Use (i - h j) mod s.
    #[arg(long, requires = "additive")]
    minus: bool,
    /// (i j) mod (s + 1).
    #[arg(long, value_name = "S", group = "source")]
    multiplicative: Option<usize>,
    /// Mutually orthogonal squares over GF(q).
    #[arg(long, value_name = "Q", group = "source")]
    gf: Option<usize>,
    /// File of 1-based first rows, one per line, developed cyclically.
    #[arg(long, value_name = "ROWFILE", group = "source")]
    develop: Option<PathBuf>,
    /// A construction string such as `shift-family:base=multiplicative:s=4`.
    #[arg(long, value_name = "SPEC", group = "source")]
    spec: Option<String>,
    /// Replace the square by the family of its cyclic row shifts.
    #[arg(long)]
    shift: bool,
    /// Inflate the square into a frequency square with this multiplicity.
    #[arg(long, value_name = "LAMBDA")]
    inflate: Option<usize>,
    /// Keep only these members (1-based).
    #[arg(long, value_delimiter = ',')]
    indices: Option<Vec<usize>>,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OrthoArgs {
    /// A family file, or two frequency squares.
    #[arg(required = true, num_args = 1..=2)]
    files: Vec<PathBuf>,
    /// Arity for the mutual check.
    #[arg(long, value_name = "K")]
    t: Option<usize>,
    /// Superpose only these members (1-based).
    #[arg(long, value_delimiter = ',')]
    indices: Option<Vec<usize>>,
    /// Smallest t for which the family is mutually t-orthogonal.
    #[arg(long)]
    min_degree: bool,
    /// Number of repeated tuples in the superposition.
    #[arg(long)]
    defect: bool,
    /// Multiplicity for frequency squares read from text.
    #[arg(long)]
    lambda: Option<usize>,
}

#[derive(Args)]
struct SearchArgs {
    /// Count every Latin square of order S.
    #[arg(long, value_name = "S", group = "kind")]
    count_all: Option<usize>,
    /// Count Latin squares of order S with first row and column in order.
    #[arg(long, value_name = "S", group = "kind")]
    count_reduced: Option<usize>,
    /// List every Latin square of order S.
    #[arg(long, value_name = "S", group = "kind")]
    stream: Option<usize>,
    /// Look for an orthogonal mate of the square in FILE.
    #[arg(long, value_name = "FILE", group = "kind")]
    mate: Option<PathBuf>,
    /// Largest mutually t-orthogonal subset of the family in FILE.
    #[arg(long, value_name = "FILE", group = "kind")]
    max_subset: Option<PathBuf>,
    /// Largest mutually t-orthogonal family over all squares of order S.
    #[arg(long, value_name = "S", group = "kind")]
    exhaustive: Option<usize>,
    #[arg(long, value_name = "K", default_value_t = 2)]
    t: usize,
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    #[arg(long, value_name = "N")]
    budget_nodes: Option<u64>,
    #[arg(long, value_name = "S")]
    budget_secs: Option<f64>,
}

/// Exit codes.
const TRUE: u8 = 0;
const FALSE: u8 = 1;
const USAGE: u8 = 2;
const EXHAUSTED: u8 = 3;

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Usage(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Gen(args) => gen(args, fmt),
        Command::Check { file, lambda } => check(file, *lambda, fmt),
        Command::Ortho(args) => ortho(args, fmt),
        Command::Search(args) => search(args, fmt),
        Command::Probe { file } => {
            let report = conjecture_probe(&read_family(file)?)?;
            emit(fmt, &report.to_string(), &report);
            Ok(if report.monotone { TRUE } else { FALSE })
        }
        Command::Table { order } => {
            let rows = table::rows(*order)?;
            emit(fmt, &table::render(*order, &rows), &rows);
            Ok(TRUE)
        }
    }
}

fn emit<T: Serialize>(fmt: Format, text: &str, value: &T) {
    match fmt {
        Format::Text => print!("{text}"),
        Format::Structured => print!("{}", io::to_json(value)),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_family(path: &Path) -> Result<SquareFamily, Failure> {
    match io::read_document(&read(path)?)? {
        Document::Family(f) => Ok(f),
        Document::Grid { grid, provenance } => {
            let square = LatinSquare::new(grid)?;
            let spec = provenance.unwrap_or_else(|| ConstructionSpec::External {
                name: path.display().to_string(),
            });
            Ok(SquareFamily::new(vec![square], spec)?)
        }
        Document::Frequency { .. } => Err(Failure::Usage(format!(
            "{}: expected Latin squares",
            path.display()
        ))),
    }
}

fn read_square(path: &Path) -> Result<LatinSquare, Failure> {
    let family = read_family(path)?;
    if family.len() != 1 {
        return Err(Failure::Usage(format!(
            "{}: expected a single square",
            path.display()
        )));
    }
    Ok(family.into_members().remove(0))
}

fn zero_based(indices: &[usize]) -> Result<Vec<usize>, Failure> {
    indices
        .iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Failure::Usage("indices are 1-based".into()))
        })
        .collect()
}

fn gen(args: &GenArgs, fmt: Format) -> Outcome {
    let mut spec = if let Some(s) = args.additive {
        let h = match (args.h, args.all_h) {
            (_, true) => latinsq::construct::coprime_multipliers(s),
            (Some(k), false) => vec![k],
            (None, false) => vec![1],
        };
        if args.minus {
            ConstructionSpec::Subtractive { order: s, h }
        } else {
            ConstructionSpec::Additive { order: s, h }
        }
    } else if let Some(s) = args.multiplicative {
        let grid = latinsq::construct::modular_multiplicative(s)?;
        if let Some(w) = grid.verdict().witness() {
            eprintln!("(i j) mod {} is not a Latin square: {w}", grid.modulus());
            let doc = SquareDoc::from_grid(grid.grid());
            write_out(args, fmt, &io::grid_to_text(grid.grid()), &doc)?;
            return Ok(FALSE);
        }
        ConstructionSpec::Multiplicative { order: s }
    } else if let Some(q) = args.gf {
        ConstructionSpec::GfMols { q }
    } else if let Some(path) = &args.develop {
        ConstructionSpec::CyclicDevelopment {
            first_rows: parse_rows(&read(path)?)?,
        }
    } else if let Some(text) = &args.spec {
        text.parse()?
    } else {
        return Err(Failure::Usage(
            "choose a construction: --additive, --multiplicative, --gf, --develop or --spec".into(),
        ));
    };
    if args.shift {
        spec = ConstructionSpec::ShiftFamily {
            base: Box::new(spec),
        };
    }
    if let Some(indices) = &args.indices {
        spec = ConstructionSpec::Select {
            indices: zero_based(indices)?,
            base: Box::new(spec),
        };
    }
    if let Some(lambda) = args.inflate {
        spec = ConstructionSpec::Inflate {
            lambda,
            base: Box::new(spec),
        };
    }
    match spec.build()? {
        Built::Frequency(f) => write_out(
            args,
            fmt,
            &io::frequency_to_text(&f),
            &FrequencyDoc::from_frequency(&f, Some(spec)),
        )?,
        Built::Family(family) if family.len() == 1 && !args.all_h => {
            let square = family.member(0)?;
            write_out(
                args,
                fmt,
                &io::square_to_text(square),
                &SquareDoc::from_square(square, Some(spec)),
            )?
        }
        Built::Family(family) => write_out(
            args,
            fmt,
            &io::family_to_text(&family),
            &FamilyDoc::from_family(&family),
        )?,
    }
    Ok(TRUE)
}

fn parse_rows(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|w| !w.is_empty())
                .map(|w| {
                    w.parse()
                        .map_err(|_| Failure::Usage(format!("line {}: bad symbol {w:?}", n + 1)))
                })
                .collect()
        })
        .collect()
}

fn write_out<T: Serialize>(
    args: &GenArgs,
    fmt: Format,
    text: &str,
    doc: &T,
) -> Result<(), Failure> {
    let body = match fmt {
        Format::Text => text.to_string(),
        Format::Structured => io::to_json(doc),
    };
    match &args.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Io(path.clone(), e)),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CheckReport {
    check: &'static str,
    holds: bool,
    verdict: latinsq::Verdict,
}

fn check(path: &Path, lambda: Option<usize>, fmt: Format) -> Outcome {
    let doc = io::read_document(&read(path)?)?;
    let (check, verdict) = match (doc, lambda) {
        (Document::Grid { grid, .. }, Some(l)) => ("frequency", is_frequency(&grid, l)),
        (Document::Grid { grid, .. }, None) => ("latin", is_latin(&grid)),
        (Document::Frequency { square, .. }, l) => (
            "frequency",
            is_frequency(&square.to_grid(), l.unwrap_or(square.multiplicity())),
        ),
        // members are validated on reading
        (Document::Family(f), _) => ("family", is_latin(&f.member(0)?.to_grid())),
    };
    let report = CheckReport {
        check,
        holds: verdict.holds(),
        verdict,
    };
    emit(fmt, &format!("{check}: {}\n", report.verdict), &report);
    Ok(if report.holds { TRUE } else { FALSE })
}

#[derive(Serialize)]
#[serde(tag = "query", rename_all = "kebab-case")]
enum OrthoOutput {
    MinDegree { degree: Option<usize> },
    Defect { defect: usize },
    Superposition { report: latinsq::OrthoReport },
    Mutual { t: usize, verdict: latinsq::Verdict },
    Frequency { verdict: latinsq::Verdict },
}

fn read_frequency(path: &Path, lambda: Option<usize>) -> Result<FrequencySquare, Failure> {
    match (io::read_document(&read(path)?)?, lambda) {
        (Document::Frequency { square, .. }, _) => Ok(square),
        (Document::Grid { grid, .. }, Some(l)) => Ok(FrequencySquare::new(grid, l)?),
        (Document::Grid { grid, .. }, None) => Ok(FrequencySquare::new(grid, 1)?),
        (Document::Family(_), _) => Err(Failure::Usage(format!(
            "{}: expected a frequency square",
            path.display()
        ))),
    }
}

fn ortho(args: &OrthoArgs, fmt: Format) -> Outcome {
    if let [a, b] = args.files.as_slice() {
        let verdict = freq_orthogonal(
            &read_frequency(a, args.lambda)?,
            &read_frequency(b, args.lambda)?,
        )?;
        let code = if verdict.holds() { TRUE } else { FALSE };
        emit(
            fmt,
            &format!("orthogonal: {verdict}\n"),
            &OrthoOutput::Frequency { verdict },
        );
        return Ok(code);
    }
    let family = read_family(&args.files[0])?;
    let selection = match &args.indices {
        Some(i) => zero_based(i)?,
        None => (0..family.len()).collect(),
    };
    if args.min_degree {
        let degree = min_orthogonality_degree(&family);
        let text = degree.map_or("none".to_string(), |d| d.to_string());
        emit(
            fmt,
            &format!("{text}\n"),
            &OrthoOutput::MinDegree { degree },
        );
        return Ok(if degree.is_some() { TRUE } else { FALSE });
    }
    if args.defect {
        let d = defect(&family, &selection)?;
        emit(fmt, &format!("{d}\n"), &OrthoOutput::Defect { defect: d });
        return Ok(if d == 0 { TRUE } else { FALSE });
    }
    if args.indices.is_some() || (args.t.is_none() && family.len() == 1) {
        let report = t_orthogonal(&family, &selection)?;
        let code = if report.is_t_orthogonal { TRUE } else { FALSE };
        let mut text = format!(
            "{}-orthogonal: {} ({} of {} tuples distinct)\n",
            report.arity,
            report.is_t_orthogonal,
            report.distinct,
            report.order * report.order
        );
        if let Some(w) = &report.witness {
            text.push_str(&format!("witness: {w}\n"));
        }
        emit(fmt, &text, &OrthoOutput::Superposition { report });
        return Ok(code);
    }
    let t = args.t.unwrap_or(2);
    let verdict = mutually_t_orthogonal(&family, t)?;
    let code = if verdict.holds() { TRUE } else { FALSE };
    emit(
        fmt,
        &format!("mutually {t}-orthogonal: {verdict}\n"),
        &OrthoOutput::Mutual { t, verdict },
    );
    Ok(code)
}

fn search(args: &SearchArgs, fmt: Format) -> Outcome {
    let mut budget = SearchBudget::default();
    if let Some(n) = args.budget_nodes {
        budget.nodes = n;
    }
    if let Some(s) = args.budget_secs {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Failure::Usage("--budget-secs must be positive".into()));
        }
        budget.time = Duration::from_secs_f64(s);
    }
    budget = SearchBudget::new(budget.nodes, budget.time)?;
    if let Some(t) = args.threads {
        budget = budget.with_threads(t);
    }
    let outcome = if let Some(s) = args.count_all {
        enumerate_latin(s, EnumerationMode::CountAll, &budget)?
    } else if let Some(s) = args.count_reduced {
        enumerate_latin(s, EnumerationMode::CountReduced, &budget)?
    } else if let Some(s) = args.stream {
        enumerate_latin(s, EnumerationMode::Stream, &budget)?
    } else if let Some(path) = &args.mate {
        orthogonal_mate_search(&read_square(path)?, &budget)
    } else if let Some(path) = &args.max_subset {
        max_mutual_subset(&read_family(path)?, args.t, &budget)?
    } else if let Some(s) = args.exhaustive {
        exhaustive_t_max(s, args.t, &budget)?
    } else {
        return Err(Failure::Usage(
            "choose a search: --count-all, --count-reduced, --stream, --mate, --max-subset or --exhaustive".into(),
        ));
    };
    let mut text = format!("{}\n", outcome.status);
    match &outcome.payload {
        Payload::None => {}
        Payload::Count { count } => text.push_str(&format!("count {count}\n")),
        Payload::Square { square } => text.push_str(&io::square_to_text(square)),
        Payload::Squares { squares } | Payload::Family { squares } => {
            text.push_str(&format!("squares {}\n", squares.len()));
            for sq in squares {
                text.push_str(&io::square_to_text(sq));
            }
        }
        Payload::Subset { indices } => {
            let list: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
            text.push_str(&format!(
                "size {}\nindices {}\n",
                indices.len(),
                list.join(",")
            ));
        }
    }
    text.push_str(&format!("nodes {}\n", outcome.nodes));
    emit(fmt, &text, &outcome);
    Ok(match outcome.status {
        Status::Found => TRUE,
        Status::ProvenAbsent => FALSE,
        Status::BudgetExhausted => EXHAUSTED,
    })
}
