mod cache;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use qlid_core::lidstone::catalog::{parse_rational, FunctionSpec};
use qlid_core::lidstone::{run_expansion, ExpansionReport, LidstoneKind, QValue};
use qlid_core::numerics::{positive_zeros, QFunction, RootResult};
use qlid_core::qfield::{eval_at, FieldElem, NumericValue, DEFAULT_PREC};
use qlid_core::qpolys::{family, verify_identity, FamilyKind, FamilyTable, IdentityReport, IdentityTag, Method, ZPoly};
use qlid_core::Error;

/// Digits printed for numeric values.
const DIGITS: usize = 30;

#[derive(Parser)]
#[command(name = "qlid", version, about = "q-Bernoulli and q-Euler tables, identity checks, zeros and q-Lidstone expansions")]
struct Cli {
    /// Output format. CSV is available for numeric output only.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Directory holding cached exact tables.
    #[arg(long, global = true, env = "QLID_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Entries 0..=N of a polynomial family or number sequence.
    Table {
        #[arg(long, value_parser = parse_family)]
        kind: FamilyKind,
        #[arg(long)]
        n: usize,
        /// "symbolic" or an exact rational in (0, 1).
        #[arg(long, default_value = "symbolic", value_parser = parse_q)]
        q: QValue,
        #[arg(long, default_value = "series-division", value_parser = parse_method)]
        method: Method,
    },
    /// Check identities exactly up to order N.
    Verify {
        /// Comma-separated tag names, or "all".
        #[arg(long, default_value = "all", value_parser = parse_tags)]
        tags: TagList,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Certified smallest positive zeros of S_q and C_q.
    Roots {
        #[arg(long, value_parser = parse_numeric_q)]
        q: BigRational,
        #[arg(long, default_value_t = 1e-10, value_parser = parse_tol)]
        tol: f64,
        /// Number of zeros per function.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=8))]
        count: u64,
    },
    /// Two-point q-Lidstone expansion of a catalog function.
    Expand {
        /// expq:a, sq:a, cq:a, sinhq:a, coshq:a, pochhammer:n or file:PATH,
        /// where a is a rational optionally followed by S1 or C1.
        #[arg(long)]
        function: String,
        #[arg(long, value_parser = parse_kind)]
        kind: LidstoneKind,
        #[arg(long, default_value = "symbolic", value_parser = parse_q)]
        q: QValue,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 21)]
        grid: usize,
    },
}

#[derive(Clone)]
struct TagList(Vec<IdentityTag>);

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    FamilyKind::from_name(s).ok_or_else(|| {
        format!("unknown kind; expected one of: {}", FamilyKind::ALL.map(|k| k.name()).join(", "))
    })
}

fn parse_method(s: &str) -> Result<Method, String> {
    Method::from_name(s)
        .ok_or_else(|| format!("unknown method; expected one of: {}", Method::ALL.map(|m| m.name()).join(", ")))
}

fn parse_kind(s: &str) -> Result<LidstoneKind, String> {
    LidstoneKind::from_name(s).ok_or_else(|| "expected bernoulli or euler".to_string())
}

fn parse_tags(s: &str) -> Result<TagList, String> {
    if s == "all" {
        return Ok(TagList(IdentityTag::ALL.to_vec()));
    }
    let mut tags = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let tag = IdentityTag::from_name(t).ok_or_else(|| {
            format!("unknown tag {t:?}; expected \"all\" or some of: {}", IdentityTag::ALL.map(|t| t.name()).join(", "))
        })?;
        if !tags.contains(&tag) {
            tags.push(tag);
        }
    }
    if tags.is_empty() {
        return Err("no tags given".into());
    }
    // report order follows the canonical tag order, not the command line
    tags.sort_by_key(|t| IdentityTag::ALL.iter().position(|a| a == t));
    Ok(TagList(tags))
}

fn parse_numeric_q(s: &str) -> Result<BigRational, String> {
    let q = parse_rational(s).map_err(|e| e.to_string())?;
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    if q <= zero || q >= one {
        return Err(format!("q = {q} must lie strictly between 0 and 1"));
    }
    Ok(q)
}

fn parse_q(s: &str) -> Result<QValue, String> {
    if s == "symbolic" {
        Ok(QValue::Symbolic)
    } else {
        parse_numeric_q(s).map(QValue::Rational)
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err("tolerance must be a positive number".into()),
    }
}

/// Failure classes with their exit codes.
enum Failure {
    Usage(String),
    Search(String),
    Verification(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Search(_) => 3,
            Failure::Verification(_) => 4,
            Failure::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Search(m) | Failure::Verification(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchExhausted(_) | Error::PrecisionError { .. } => Failure::Search(e.to_string()),
            Error::InvalidArgument(_) | Error::Parse(_) | Error::InputTooShort { .. } | Error::DegenerateInput(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(dir) = &cli.cache_dir {
        cache::load(dir);
    }
    let result = match &cli.command {
        Command::Table { kind, n, q, method } => cmd_table(&cli, *kind, *n, q, *method),
        Command::Verify { tags, n } => cmd_verify(cli.format, &tags.0, *n),
        Command::Roots { q, tol, count } => cmd_roots(cli.format, q, *tol, *count as usize),
        Command::Expand { function, kind, q, n, grid } => cmd_expand(cli.format, function, *kind, q, *n, *grid),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            eprintln!("qlid: identity verification failed");
            ExitCode::from(4)
        }
        Err(f) => {
            eprintln!("qlid: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn show(v: &NumericValue) -> String {
    v.to_decimal(v.significant_digits().clamp(1, DIGITS))
}

fn cmd_table(cli: &Cli, kind: FamilyKind, n: usize, q: &QValue, method: Method) -> Outcome {
    if method != Method::SeriesDivision && !kind.is_polynomial() {
        return Err(Failure::Usage(format!("{} supports series-division only", kind.name())));
    }
    if cli.format == Format::Csv && *q == QValue::Symbolic {
        return Err(Failure::Usage("CSV output needs a numeric q".into()));
    }
    let table = family(kind, n, method);
    if let Some(dir) = &cli.cache_dir {
        if let Err(e) = cache::store(dir, &table) {
            eprintln!("qlid: could not write cache in {}: {e}", dir.display());
        }
    }
    match q {
        QValue::Symbolic => Ok(match cli.format {
            Format::Json => to_json(&serde_json::from_str::<serde_json::Value>(&table.to_json()).expect("valid json")),
            _ => pretty_table(&table, |c| c.to_string()),
        }),
        QValue::Rational(q) => {
            let values = numeric_entries(&table, q)?;
            Ok(match cli.format {
                Format::Json => to_json(&json!({
                    "schema_version": 1,
                    "kind": kind,
                    "upTo": n,
                    "method": method,
                    "q": q.to_string(),
                    "entries": values,
                })),
                Format::Csv => {
                    let mut s = String::from("n,power,value\n");
                    for (i, row) in values.iter().enumerate() {
                        for (k, v) in row.iter().enumerate() {
                            writeln!(s, "{i},{k},{v}").unwrap();
                        }
                    }
                    s
                }
                Format::Pretty => {
                    let mut s = String::new();
                    for (i, row) in values.iter().enumerate() {
                        writeln!(s, "{}[{i}] = {}", kind.name(), join_poly(row.iter().cloned())).unwrap();
                    }
                    s
                }
            })
        }
    }
}

fn numeric_entries(table: &FamilyTable, q: &BigRational) -> Result<Vec<Vec<String>>, Failure> {
    table
        .entries
        .iter()
        .map(|p| p.coeffs().iter().map(|c| eval_at(c, q, DEFAULT_PREC).map(|v| show(&v))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()
        .map_err(Failure::from)
}

fn join_poly(coeffs: impl Iterator<Item = String>) -> String {
    let terms: Vec<String> = coeffs
        .enumerate()
        .filter(|(_, c)| c != "0")
        .map(|(k, c)| match k {
            0 => format!("[{c}]"),
            1 => format!("[{c}]*z"),
            _ => format!("[{c}]*z^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn pretty_table(table: &FamilyTable, show: impl Fn(&FieldElem) -> String) -> String {
    let mut s = String::new();
    for (i, p) in table.entries.iter().enumerate() {
        writeln!(s, "{}[{i}] = {}", table.kind.name(), join_poly(p.coeffs().iter().map(&show))).unwrap();
    }
    s
}

fn cmd_verify(format: Format, tags: &[IdentityTag], n: usize) -> Outcome {
    // one worker per tag; results are joined back in tag order
    let reports: Vec<IdentityReport> = std::thread::scope(|s| {
        let handles: Vec<_> = tags.iter().map(|&t| s.spawn(move || verify_identity(t, n))).collect();
        handles.into_iter().map(|h| h.join().expect("verification worker panicked")).collect()
    });
    let passed = reports.iter().all(|r| r.passed);
    let out = match format {
        Format::Json => to_json(&json!({ "schema_version": 1, "n": n, "passed": passed, "reports": reports })),
        Format::Csv => {
            let mut s = String::from("tag,n,passed,checked,findings\n");
            for r in &reports {
                writeln!(s, "{},{},{},{},{}", r.tag, r.n, r.passed, r.checked, r.findings.len()).unwrap();
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(s, "{status} {} (n={}, {} checks)", r.tag, r.n, r.checked).unwrap();
                if let Some(m) = &r.first_mismatch {
                    writeln!(s, "  first mismatch at {}: {} != {}", m.label, m.lhs, m.rhs).unwrap();
                }
                for f in &r.findings {
                    writeln!(s, "  finding {}: {}", f.label, clip(&f.detail, 160)).unwrap();
                }
            }
            s
        }
    };
    if passed {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

/// Shorten long polynomial dumps for terminal output.
fn clip(s: &str, max_chars: usize) -> String {
    match s.char_indices().nth(max_chars) {
        Some((i, _)) => format!("{} ...", &s[..i]),
        None => s.to_string(),
    }
}

fn cmd_roots(format: Format, q: &BigRational, tol: f64, count: usize) -> Outcome {
    let mut roots: Vec<RootResult> = Vec::new();
    for f in [QFunction::Sq, QFunction::Cq] {
        roots.extend(positive_zeros(f, q, tol, count)?);
    }
    Ok(match format {
        Format::Json => to_json(&json!({ "schema_version": 1, "roots": roots })),
        Format::Csv => {
            let mut s = String::from("function,index,value,radius,residual,simple\n");
            for (i, r) in roots.iter().enumerate() {
                let v = qlid_core::qfield::rational_to_decimal(&r.value, 40);
                writeln!(s, "{},{},{v},{:e},{:e},{}", r.function.name(), i % count + 1, r.radius, r.residual, r.simple)
                    .unwrap();
            }
            s
        }
        Format::Pretty => roots.iter().map(|r| format!("{r}\n")).collect(),
    })
}

fn load_function(spec: &str) -> Result<FunctionSpec, Failure> {
    let Some(path) = spec.strip_prefix("file:") else {
        return Ok(spec.parse()?);
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    let coeffs: Vec<String> = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{path}: expected a JSON array of coefficient strings ({e})")))?;
    let coeffs = coeffs.iter().map(|c| c.parse::<FieldElem>()).collect::<Result<Vec<_>, _>>()?;
    Ok(FunctionSpec::Polynomial { label: spec.to_string(), poly: ZPoly::new(coeffs) })
}

fn cmd_expand(format: Format, function: &str, kind: LidstoneKind, q: &QValue, n: usize, grid: usize) -> Outcome {
    let spec = load_function(function)?;
    if format == Format::Csv && *q == QValue::Symbolic {
        return Err(Failure::Usage("CSV output needs a numeric q".into()));
    }
    let report = run_expansion(&spec, kind, q, n, grid, DEFAULT_PREC)?;
    if let Some(w) = &report.warning {
        eprintln!("qlid: warning: {w}");
    }
    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("z,partial_sum,reference\n");
            for ((z, p), r) in report.grid.iter().zip(&report.partial_sum_values).zip(&report.reference_values) {
                writeln!(s, "{z},{p},{r}").unwrap();
            }
            s
        }
        Format::Pretty => pretty_expansion(&report),
    })
}

fn pretty_expansion(r: &ExpansionReport) -> String {
    let mut s = String::new();
    writeln!(s, "{} with {} basis, q = {}, N = {}", r.function, r.kind.name(), r.q, r.n).unwrap();
    if let Some(rec) = &r.recovered {
        writeln!(s, "recovered: {rec}").unwrap();
        writeln!(s, "exact match: {}", r.exact_match.unwrap_or(false)).unwrap();
    }
    if let Some(res) = r.max_residual_by_n.last() {
        writeln!(s, "max residual: {res:e}").unwrap();
    }
    if let (Some(c), Some(f)) = (r.max_abs_coefficient, r.max_abs_function) {
        writeln!(s, "max |coefficient|: {c:e}, max |f| on grid: {f:e}").unwrap();
    }
    if let (Some(g), Some(a)) = (&r.growth, &r.admissibility) {
        writeln!(s, "growth: order {:.4}, type {:.4} ({})", g.order_k, g.type_alpha, a.name()).unwrap();
    }
    if let Some(w) = &r.warning {
        writeln!(s, "warning: {w}").unwrap();
    }
    s
}
