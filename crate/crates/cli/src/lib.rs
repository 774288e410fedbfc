//! Command-line front-end: argument definitions and command execution.
//!
//! Every command renders its whole output into a `String` so the binary and
//! the tests share one code path. Exit status: 0 on success, 1 on a selfcheck
//! mismatch or a runtime failure, 2 on a usage error (clap's own code).

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dstirling::bell::{bell_poly, BellPoly};
use dstirling::export::{table_to_csv, table_to_csv_evaluated, EvaluatedTable};
use dstirling::rational::Exact;
use dstirling::selfcheck::{self, Mismatch, SelfcheckConfig};
use dstirling::{
    base_series, build_table_first, build_table_second, format_rational, number_by_series,
    parse_rational, second_kind_by_composition_sum, second_kind_by_inclusion_exclusion, Kind, Poly,
    Rational, Series, StirlingTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    First,
    Second,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::First => Kind::First,
            KindArg::Second => Kind::Second,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DocFormat {
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Recurrence,
    Composition,
    InclusionExclusion,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    ELambda,
    LogLambda,
    Base,
}

#[derive(Debug, Parser)]
#[command(
    name = "dstirling",
    version,
    about = "Exact degenerate r-associated Stirling numbers and Bell polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    #[arg(long)]
    pub nmax: usize,
    /// Substitute λ (as p/q); symbolic polynomials otherwise.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ValueArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Method::Recurrence)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BellArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub x: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    #[arg(long, value_enum, default_value_t = DocFormat::Pretty)]
    pub format: DocFormat,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    /// Base series kind (only with `--which base`).
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Minimum block size for `--which base`.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: Option<u64>,
    /// Exponent x of e_λ^x(t) (only with `--which e-lambda`; defaults to 1).
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub x: Option<Rational>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub order: u64,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    #[arg(long, value_enum, default_value_t = DocFormat::Pretty)]
    pub format: DocFormat,
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub rmax: u64,
    #[arg(long, default_value_t = 16)]
    pub nmax: usize,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(0..=14))]
    pub partition_nmax: u64,
    #[arg(long, default_value_t = 14)]
    pub classical_nmax: usize,
    #[arg(long, default_value_t = 12)]
    pub inverse_nmax: usize,
    #[arg(long, default_value_t = 12)]
    pub bell_nmax: usize,
    #[arg(long, default_value_t = 3)]
    pub bell_rmax: usize,
}

impl SelfcheckArgs {
    pub fn config(&self) -> SelfcheckConfig {
        SelfcheckConfig {
            rmax: self.rmax as usize,
            nmax: self.nmax,
            partition_nmax: self.partition_nmax as usize,
            classical_nmax: self.classical_nmax,
            inverse_nmax: self.inverse_nmax,
            bell_nmax: self.bell_nmax,
            bell_rmax: self.bell_rmax,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export a Stirling triangle.
    Table(TableArgs),
    /// A single S(n,k).
    Value(ValueArgs),
    /// A degenerate r-associated Bell polynomial or one of its evaluations.
    Bell(BellArgs),
    /// Inspect a truncated generating function.
    Series(SeriesArgs),
    /// Cross-check every computation path against the others.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug)]
pub enum CliError {
    /// Invalid combination of flags that clap cannot express.
    Usage(String),
    /// The selfcheck found disagreeing paths.
    Mismatch(Mismatch),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Mismatch(_) | CliError::Runtime(_) => EXIT_MISMATCH,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Mismatch(witness) => write!(f, "selfcheck failed: {witness}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<dstirling::Error> for CliError {
    fn from(e: dstirling::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable") + "\n"
}

fn build(kind: Kind, r: usize, nmax: usize) -> dstirling::Result<StirlingTable> {
    match kind {
        Kind::First => build_table_first(r, nmax),
        Kind::Second => build_table_second(r, nmax),
    }
}

fn run_table(a: &TableArgs) -> Result<String, CliError> {
    let table = build(a.kind.into(), a.r as usize, a.nmax)?;
    Ok(match (a.format, &a.lambda) {
        (Format::Csv, None) => table_to_csv(&table),
        (Format::Csv, Some(l)) => table_to_csv_evaluated(&table, l),
        (Format::Json, None) => json(&table),
        (Format::Json, Some(l)) => json(&EvaluatedTable::new(&table, l)),
        (Format::Pretty, lambda) => {
            let mut out = String::new();
            for (n, row) in table.rows().iter().enumerate() {
                for (k, p) in row.iter().enumerate() {
                    let v = match lambda {
                        None => p.to_string(),
                        Some(l) => format_rational(&p.eval(l)),
                    };
                    writeln!(out, "S({n},{k}) = {v}").expect("string write");
                }
            }
            out
        }
    })
}

fn run_value(a: &ValueArgs) -> Result<String, CliError> {
    let (kind, r, n, k) = (Kind::from(a.kind), a.r as usize, a.n, a.k);
    let poly = match a.method {
        Method::Recurrence => build(kind, r, n)?.get(n, k)?.clone(),
        Method::Series => number_by_series(kind, n, k, r, n + 1)?,
        Method::Composition | Method::InclusionExclusion if kind == Kind::First => {
            return Err(CliError::Usage(
                "explicit sums are only available for the second kind".into(),
            ))
        }
        Method::Composition => second_kind_by_composition_sum(n, k, r)?,
        Method::InclusionExclusion => second_kind_by_inclusion_exclusion(n, k, r)?,
    };
    let field = match &a.lambda {
        None => poly.to_field(),
        Some(l) => format_rational(&poly.eval(l)),
    };
    Ok(match (a.format, &a.lambda) {
        (Format::Csv, _) => format!("n,k,value\n{n},{k},{field}\n"),
        (Format::Json, None) => json(&poly),
        (Format::Json, Some(l)) => json(&Exact(poly.eval(l))),
        (Format::Pretty, None) => format!("{poly}\n"),
        (Format::Pretty, Some(_)) => format!("{field}\n"),
    })
}

fn run_bell(a: &BellArgs) -> Result<String, CliError> {
    let r = a.r as usize;
    let table = build_table_second(r, a.n)?;
    let b: BellPoly = bell_poly(a.n, r, &table)?;
    Ok(match (&a.x, &a.lambda, a.format) {
        (None, None, DocFormat::Json) => json(&b),
        (None, None, DocFormat::Pretty) => format!("{b}\n"),
        (Some(x), None, DocFormat::Json) => json(&b.eval_x(x)),
        (Some(x), None, DocFormat::Pretty) => format!("{}\n", b.eval_x(x)),
        (None, Some(l), fmt) => {
            let coeffs = b.eval_lambda(l);
            match fmt {
                DocFormat::Json => json(&coeffs.into_iter().map(Exact).collect::<Vec<_>>()),
                DocFormat::Pretty => format!("{}\n", Poly::from_coeffs(coeffs).display_in("x")),
            }
        }
        (Some(x), Some(l), fmt) => {
            let v = b.eval(x, l);
            match fmt {
                DocFormat::Json => json(&Exact(v)),
                DocFormat::Pretty => format!("{}\n", format_rational(&v)),
            }
        }
    })
}

#[derive(serde::Serialize)]
struct EvaluatedSeries {
    order: usize,
    lambda: Exact,
    coeffs: Vec<Exact>,
}

fn run_series(a: &SeriesArgs) -> Result<String, CliError> {
    let order = a.order as usize;
    if a.which != Which::Base && (a.kind.is_some() || a.r.is_some()) {
        return Err(CliError::Usage(
            "--kind/--r only apply to --which base".into(),
        ));
    }
    if a.which != Which::ELambda && a.x.is_some() {
        return Err(CliError::Usage(
            "--x only applies to --which e-lambda".into(),
        ));
    }
    let series: Series = match a.which {
        Which::ELambda => {
            let x =
                a.x.clone()
                    .unwrap_or_else(|| Rational::from_integer(1.into()));
            Series::e_lambda(&x, order)?
        }
        Which::LogLambda => Series::log_lambda(order)?,
        Which::Base => {
            let kind = a
                .kind
                .ok_or_else(|| CliError::Usage("--which base needs --kind".into()))?;
            let r =
                a.r.ok_or_else(|| CliError::Usage("--which base needs --r".into()))?;
            base_series(kind.into(), r as usize, order)?
        }
    };
    Ok(match (&a.lambda, a.format) {
        (None, DocFormat::Json) => json(&series),
        (None, DocFormat::Pretty) => {
            let mut out = String::new();
            for (n, c) in series.coeffs().iter().enumerate() {
                writeln!(out, "[t^{n}] {c}").expect("string write");
            }
            out
        }
        (Some(l), DocFormat::Json) => json(&EvaluatedSeries {
            order,
            lambda: Exact(l.clone()),
            coeffs: series.eval_lambda(l).into_iter().map(Exact).collect(),
        }),
        (Some(l), DocFormat::Pretty) => {
            let mut out = String::new();
            for (n, c) in series.eval_lambda(l).iter().enumerate() {
                writeln!(out, "[t^{n}] {}", format_rational(c)).expect("string write");
            }
            out
        }
    })
}

/// Selfcheck with an injectable table builder.
pub fn run_selfcheck_with<F>(cfg: &SelfcheckConfig, build: F) -> Result<String, CliError>
where
    F: Fn(Kind, usize, usize) -> dstirling::Result<StirlingTable> + Sync,
{
    match selfcheck::run_with(cfg, build) {
        Ok(report) => {
            let mut out = report.lines.join("\n");
            writeln!(out, "\nselfcheck passed: {} checks", report.checks).expect("string write");
            Ok(out)
        }
        Err(witness) => Err(CliError::Mismatch(witness)),
    }
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Table(a) => run_table(a),
        Command::Value(a) => run_value(a),
        Command::Bell(a) => run_bell(a),
        Command::Series(a) => run_series(a),
        Command::Selfcheck(a) => run_selfcheck_with(&a.config(), dstirling::stirling::build),
    }
}

/// Runs a parsed command, writing output to `--out` or `stdout` and errors to
/// `stderr`. Returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32 {
    let result = execute(cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Runtime(e.to_string())),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if let CliError::Mismatch(witness) = &e {
                let _ = writeln!(stdout, "MISMATCH {witness}");
            }
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}
