//! Command-line interface for evaluating and verifying Gosper-matrix schemes.
//!
//! [`run`] executes a parsed [`Cli`] and returns what should be written to
//! stdout together with the process exit code, so the binary is a thin shell
//! around it.

pub mod report;
pub mod source;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gosper::eval::{self, check_targets, Backend, TargetCheck};
use gosper::numeric::{to_decimal, Rational, MIN_PRECISION};
use gosper::reference::decimal;
use gosper::schemes::{families, Param, Params, SchemeDef};
use gosper::Error;

pub use report::{EvalReport, ListEntry, RateOutput, RateTarget, TargetReport, VerifyReport};
use source::{read_scheme_file, resolve, CustomSet, LoadError};

#[derive(Debug, Parser)]
#[command(name = "gosper", version, about = "Evaluate and verify accelerated zeta series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List built-in scheme families and custom schemes.
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a truncated product.
    Eval(EvalArgs),
    /// Evaluate until the error estimate reaches the requested digits and
    /// compare with reference values.
    Verify(VerifyArgs),
    /// Measure digits gained per term.
    Rate(RateArgs),
    /// Validate a scheme file and print it in canonical form.
    Parse {
        #[arg(long)]
        scheme_file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    Rational,
    Float,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// Catalog name such as `koecher3`, or the name of a custom scheme.
    #[arg(long, required_unless_present = "scheme_file", conflicts_with = "scheme_file")]
    pub scheme: Option<String>,
    #[arg(long)]
    pub scheme_file: Option<PathBuf>,
    /// Parameter override `name=p/q`; repeatable.
    #[arg(long = "param", value_name = "NAME=P/Q", value_parser = parse_param)]
    pub params: Vec<(Param, Rational)>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub source: SchemeArgs,
    /// Number of factors; finite schemes default to their full length.
    #[arg(long)]
    pub terms: Option<u64>,
    #[arg(long, value_enum, default_value_t = BackendKind::Rational)]
    pub backend: BackendKind,
    /// Working precision in bits, required by the float backend.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Significant digits in the report; defaults to what the backend carries.
    #[arg(long)]
    pub digits: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: SchemeArgs,
    #[arg(long)]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[command(flatten)]
    pub source: SchemeArgs,
    /// Truncations `lo:hi` over which the slope is fitted.
    #[arg(long, default_value = "50:100", value_parser = parse_window)]
    pub window: (u64, u64),
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Parses `name=p/q`. Decimal literals are refused so that every scheme
/// stays exact.
pub fn parse_param(s: &str) -> Result<(Param, Rational), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=p/q, got {s:?}"))?;
    let param = Param::from_name(name.trim()).ok_or_else(|| {
        let known: Vec<&str> = Param::ALL.iter().map(|p| p.name()).collect();
        format!("unknown parameter {name:?} (known: {})", known.join(", "))
    })?;
    let value = value.trim();
    let shape_ok = {
        let (n, d) = value.split_once('/').unwrap_or((value, "1"));
        let n = n.strip_prefix('-').unwrap_or(n);
        !n.is_empty()
            && !d.is_empty()
            && n.bytes().all(|b| b.is_ascii_digit())
            && d.bytes().all(|b| b.is_ascii_digit())
    };
    if !shape_ok {
        return Err(format!("{value:?} is not a rational literal p/q"));
    }
    let r: Rational = value.parse().map_err(|e: Error| e.to_string())?;
    Ok((param, r))
}

pub fn parse_window(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad window start {lo:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad window end {hi:?}"))?;
    if !(10..=1000).contains(&lo) || !(10..=1000).contains(&hi) || lo >= hi {
        return Err(format!("window {lo}:{hi} must satisfy 10 <= lo < hi <= 1000"));
    }
    Ok((lo, hi))
}

/// Stdout text and exit code of a completed command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    /// Diagnostics for stderr.
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for anything the caller got wrong, 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Load(_) => 2,
            CliError::Core(e) => match e {
                Error::NotInCatalog(_)
                | Error::Parse { .. }
                | Error::InvalidScheme(_)
                | Error::ZeroAlpha { .. }
                | Error::SchemeEval { .. }
                | Error::Pole(_)
                | Error::Domain(_) => 2,
                _ => 1,
            },
        }
    }
}

/// Runtime context: the custom-scheme directory, if any.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub scheme_path: Option<PathBuf>,
}

impl Context {
    pub fn from_env() -> Self {
        Context {
            scheme_path: std::env::var_os(source::SCHEME_PATH_VAR)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from),
        }
    }

    fn custom(&self) -> Result<CustomSet, CliError> {
        match &self.scheme_path {
            None => Ok(CustomSet::default()),
            Some(dir) => CustomSet::load(dir).map_err(|source| {
                CliError::Load(LoadError::Io {
                    path: dir.clone(),
                    source,
                })
            }),
        }
    }
}

fn skipped_notes(custom: &CustomSet) -> String {
    custom
        .skipped
        .iter()
        .map(|(p, e)| format!("warning: skipped {}: {e}\n", p.display()))
        .collect()
}

pub fn run(cli: Cli, ctx: &Context) -> Result<Outcome, CliError> {
    match cli.command {
        Command::List { format } => cmd_list(format, ctx),
        Command::Eval(args) => cmd_eval(&args, ctx),
        Command::Verify(args) => cmd_verify(&args, ctx),
        Command::Rate(args) => cmd_rate(&args, ctx),
        Command::Parse {
            scheme_file,
            format,
        } => cmd_parse(&scheme_file, format),
    }
}

pub fn cmd_list(format: Format, ctx: &Context) -> Result<Outcome, CliError> {
    let custom = ctx.custom()?;
    let mut entries: Vec<ListEntry> = families()
        .iter()
        .map(|f| ListEntry {
            name: f.name.to_string(),
            dim: f.dims.to_string(),
            params: f.params.iter().map(|p| p.name().to_string()).collect(),
            targets: f.targets.to_string(),
            source: "builtin".into(),
        })
        .collect();
    entries.extend(custom.schemes.iter().map(|c| ListEntry {
        name: c.scheme.name.clone(),
        dim: c.scheme.dim.to_string(),
        params: c.scheme.params.keys().map(|p| p.name().to_string()).collect(),
        targets: c
            .scheme
            .targets
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(","),
        source: c.path.display().to_string(),
    }));
    let stdout = match format {
        Format::Text => entries.iter().map(|e| e.line() + "\n").collect(),
        Format::Json => serde_json::to_string_pretty(&entries).expect("serializable") + "\n",
        Format::Csv => report::list_csv(&entries),
    };
    Ok(Outcome {
        stdout,
        stderr: skipped_notes(&custom),
        code: 0,
    })
}

fn load(args: &SchemeArgs, ctx: &Context) -> Result<SchemeDef, CliError> {
    let mut params = Params::new();
    for (p, v) in &args.params {
        if params.insert(*p, v.clone()).is_some() {
            return Err(CliError::Usage(format!("parameter {} given twice", p.name())));
        }
    }
    match (&args.scheme, &args.scheme_file) {
        (_, Some(path)) => {
            let s = read_scheme_file(path)?;
            if params.is_empty() {
                Ok(s)
            } else {
                Ok(s.with_params(&params)?)
            }
        }
        (Some(name), None) => Ok(resolve(name, &params, &ctx.custom()?)?),
        (None, None) => Err(CliError::Usage("give --scheme or --scheme-file".into())),
    }
}

fn param_strings(s: &SchemeDef) -> BTreeMap<String, String> {
    s.params
        .iter()
        .map(|(p, v)| (p.name().to_string(), v.to_string()))
        .collect()
}

fn target_reports(checks: &[TargetCheck], digits: u32, exact: bool) -> Vec<TargetReport> {
    checks
        .iter()
        .enumerate()
        .map(|(i, c)| TargetReport {
            index: i + 1,
            descriptor: c.descriptor.to_string(),
            decimal: to_decimal(&c.approx, digits as usize),
            exact: exact.then(|| c.approx.to_rational().to_string()),
            oracle: decimal(&c.oracle.value, digits as usize),
            matched_digits: round2(c.matched),
            estimated_digits: round2(c.estimated),
        })
        .collect()
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Significant digits shown for matrix entries and the alpha prefix.
const MAGNITUDE_DIGITS: usize = 6;

fn digits_for_bits(bits: u32) -> u32 {
    ((bits as f64) * std::f64::consts::LOG10_2).floor() as u32
}

/// Digits shown for the rational backend when none are requested.
const DEFAULT_RATIONAL_DIGITS: u32 = 50;

pub fn eval_report(args: &EvalArgs, scheme: &SchemeDef) -> Result<EvalReport, CliError> {
    let backend = match (args.backend, args.precision) {
        (BackendKind::Rational, _) => Backend::Rational,
        (BackendKind::Float, None) => {
            return Err(CliError::Usage("--backend float needs --precision <bits>".into()))
        }
        (BackendKind::Float, Some(p)) if p < MIN_PRECISION => {
            return Err(CliError::Usage(format!("--precision must be at least {MIN_PRECISION}")))
        }
        (BackendKind::Float, Some(p)) => Backend::Float { precision: p },
    };
    if args.terms == Some(0) {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    if args.terms.is_none() && !scheme.is_finite() {
        return Err(CliError::Usage(format!(
            "{} is an infinite product; give --terms",
            scheme.name
        )));
    }
    let digits = args.digits.unwrap_or(match backend {
        Backend::Rational => DEFAULT_RATIONAL_DIGITS,
        Backend::Float { precision } => digits_for_bits(precision).max(1),
    });
    let e = eval::evaluate(scheme, args.terms, backend)?;
    let checks = check_targets(scheme, &e.v, e.estimates.as_deref(), digits)?;
    // The accumulator keeps the block bottom-up; reports show it first row on top.
    let n = scheme.dim;
    let a_block = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| to_decimal(&e.a_block[n - 1 - j][n - 1 - i], MAGNITUDE_DIGITS))
                .collect()
        })
        .collect();
    Ok(EvalReport {
        scheme: scheme.name.clone(),
        params: param_strings(scheme),
        backend: match backend {
            Backend::Rational => "rational".into(),
            Backend::Float { .. } => "float".into(),
        },
        precision: backend.precision(),
        digits,
        terms: e.terms,
        targets: target_reports(&checks, digits, matches!(backend, Backend::Rational)),
        alpha_prefix: to_decimal(&e.prefix.abs(), MAGNITUDE_DIGITS),
        a_block,
    })
}

pub fn cmd_eval(args: &EvalArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let scheme = load(&args.source, ctx)?;
    let r = eval_report(args, &scheme)?;
    Ok(Outcome::ok(match args.format {
        Format::Json => r.to_json() + "\n",
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    }))
}

pub fn verify_report(scheme: &SchemeDef, digits: u32) -> Result<VerifyReport, CliError> {
    if digits == 0 {
        return Err(CliError::Usage("--digits must be at least 1".into()));
    }
    let out = eval::verify(scheme, digits)?;
    Ok(VerifyReport {
        scheme: scheme.name.clone(),
        params: param_strings(scheme),
        digits,
        terms: out.terms,
        precision: out.precision,
        capped: out.capped,
        passed: out.passed,
        targets: target_reports(&out.checks, digits, out.precision.is_none()),
    })
}

pub fn cmd_verify(args: &VerifyArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let scheme = load(&args.source, ctx)?;
    let r = verify_report(&scheme, args.digits)?;
    let stdout = match args.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("serializable") + "\n",
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    };
    let stderr = if r.capped {
        format!(
            "{}: term cap of {} reached before the error estimate met {} digits\n",
            r.scheme,
            eval::VERIFY_TERM_CAP,
            r.digits
        )
    } else if !r.passed {
        format!("{}: verification failed at {} digits\n", r.scheme, r.digits)
    } else {
        String::new()
    };
    Ok(Outcome {
        stdout,
        stderr,
        code: if r.passed { 0 } else { 3 },
    })
}

pub fn rate_output(scheme: &SchemeDef, window: (u64, u64)) -> Result<RateOutput, CliError> {
    let r = eval::rate(scheme, window.0, window.1)?;
    Ok(RateOutput {
        scheme: scheme.name.clone(),
        params: param_strings(scheme),
        window: r.window,
        precision: r.precision,
        targets: scheme
            .targets
            .iter()
            .zip(&r.per_target)
            .enumerate()
            .map(|(i, (t, d))| RateTarget {
                index: i + 1,
                descriptor: t.to_string(),
                digits_per_term: *d,
            })
            .collect(),
        digits_per_term: r.digits_per_term,
        asymptotic: r.asymptotic,
    })
}

pub fn cmd_rate(args: &RateArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let scheme = load(&args.source, ctx)?;
    let r = rate_output(&scheme, args.window)?;
    Ok(Outcome::ok(match args.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("serializable") + "\n",
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    }))
}

#[derive(serde::Serialize)]
struct ParsedScheme<'a> {
    name: &'a str,
    dim: usize,
    params: BTreeMap<String, String>,
    targets: Vec<String>,
    canonical: String,
}

pub fn cmd_parse(path: &std::path::Path, format: Format) -> Result<Outcome, CliError> {
    let s = read_scheme_file(path)?;
    Ok(Outcome::ok(match format {
        Format::Text => s.render(),
        Format::Json => {
            let p = ParsedScheme {
                name: &s.name,
                dim: s.dim,
                params: param_strings(&s),
                targets: s.targets.iter().map(|t| t.to_string()).collect(),
                canonical: s.render(),
            };
            serde_json::to_string_pretty(&p).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "dim", "params", "targets"]).expect("in-memory csv");
            let params: Vec<String> = param_strings(&s)
                .into_iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let targets: Vec<String> = s.targets.iter().map(|t| t.to_string()).collect();
            w.write_record([
                s.name.clone(),
                s.dim.to_string(),
                params.join(";"),
                targets.join(";"),
            ])
            .expect("in-memory csv");
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
        }
    }))
}
