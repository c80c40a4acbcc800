//! `cbseries`: list, verify and cross-check the identity catalog from the
//! command line.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or domain error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cbseries::catalog::{Catalog, CatalogError, Descriptor, Params, VerificationReport, VerifyConfig, REPORT_FIELDS};
use cbseries::exact::Rational;
use cbseries::integrals::{defining_integral, ClosedFormKind, IntegralError};
use cbseries::numerics::{bits_for_digits, eval_constvec, ten_pow_neg, to_decimal_string, BigFloat};

#[derive(Parser, Debug)]
#[command(name = "cbseries", version, about = "Verify central-binomial ratio series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog entries with their parameter domains and citations.
    List {
        /// Only entries whose id contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Verify one entry at the given parameters.
    Verify {
        id: String,
        /// Parameter as name=value; repeatable.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Sample point p/q for generating-function entries.
        #[arg(long, value_name = "P/Q")]
        x: Option<String>,
        /// Truncation for generating-function entries.
        #[arg(long, default_value_t = 500)]
        terms: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Verify every entry over its default parameter sweep.
    VerifyAll {
        /// Truncation for generating-function entries.
        #[arg(long, default_value_t = 500)]
        terms: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Compare an integral's exact closed form with quadrature.
    Integral {
        /// One of B, phi-even, phi-odd, K, I, wp, F, omega.
        name: ClosedFormKind,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value = "1e-8")]
    tol: String,
    #[arg(long, env = "CBSERIES_DIGITS", default_value_t = 60)]
    digits: u32,
    #[arg(long, default_value_t = 20_000)]
    max_terms: u64,
    #[arg(long, visible_alias = "report", value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for verify-all (default: available processors).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        usage(e.to_string())
    }
}

impl RunArgs {
    fn config(&self, gf_terms: u64) -> Result<VerifyConfig, Failure> {
        let tol = BigFloat::parse(self.tol.trim())
            .map(|p| BigFloat::with_val(bits_for_digits(self.digits.max(20)), p))
            .map_err(|_| usage(format!("cannot parse tolerance `{}`", self.tol)))?;
        let mut config = VerifyConfig {
            tol,
            digits: self.digits,
            max_terms: self.max_terms,
            gf_terms,
            ..VerifyConfig::default()
        };
        if let Some(jobs) = self.jobs {
            config.jobs = jobs;
        }
        config.validate()?;
        Ok(config)
    }

    fn sink(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(path) => Box::new(File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?),
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn parse_params(raw: &[String]) -> Result<Params, Failure> {
    let mut params = Params::new();
    for item in raw {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("parameter `{item}` is not of the form name=value")))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| usage(format!("parameter `{item}` needs an integer value")))?;
        if params.insert(name.trim().to_string(), value).is_some() {
            return Err(usage(format!("parameter `{}` given twice", name.trim())));
        }
    }
    Ok(params)
}

fn parse_rational(raw: &str) -> Result<Rational, Failure> {
    raw.trim()
        .parse::<Rational>()
        .map_err(|_| usage(format!("cannot parse `{raw}` as a rational p/q")))
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Failure {
    usage(e.to_string())
}

fn write_reports(out: &mut dyn Write, format: Format, reports: &[VerificationReport], single: bool) -> Result<(), Failure> {
    match format {
        Format::Json if single => write_json(out, &reports[0]),
        Format::Json => write_json(out, &reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(REPORT_FIELDS).map_err(csv_error)?;
            for r in reports {
                w.write_record(r.record()).map_err(csv_error)?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            for r in reports {
                let params = r.params_text();
                writeln!(
                    out,
                    "{:<4} {:<34} {:<16} {:<20} |diff| = {:<12} terms = {}",
                    r.verdict.as_str().to_uppercase(),
                    r.id,
                    if params.is_empty() { "-" } else { &params },
                    r.method,
                    to_decimal_string(&r.abs_discrepancy, 5),
                    r.terms_used
                )?;
                if single {
                    writeln!(out, "  estimate:  {}", to_decimal_string(&r.estimate, r.digits))?;
                    writeln!(out, "  reference: {}", to_decimal_string(&r.reference, r.digits))?;
                    writeln!(out, "  tolerance: {}", to_decimal_string(&r.tolerance, 5))?;
                    writeln!(out, "  source:    {}", r.paper_ref)?;
                }
                if r.offset_note {
                    writeln!(out, "  note: discrepancy equals the first term; the start index may be off by one")?;
                }
                if let Some(note) = &r.non_convergence {
                    writeln!(out, "  note: {note}")?;
                }
                if let Some(err) = &r.error {
                    writeln!(out, "  error: {err}")?;
                }
            }
            Ok(())
        }
    }
}

fn cmd_list(filter: Option<&str>, run: &RunArgs) -> Result<(), Failure> {
    let rows: Vec<Descriptor> = Catalog::standard()
        .list()
        .into_iter()
        .filter(|d| filter.is_none_or(|f| d.id.contains(f)))
        .collect();
    let mut out = run.sink()?;
    match run.format {
        Format::Json => write_json(&mut *out, &rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for d in &rows {
                w.serialize(d).map_err(csv_error)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for d in &rows {
                let domain = match (&d.x_domain, d.params == "-") {
                    (Some(x), true) => format!("x ∈ {x}"),
                    (Some(x), false) => format!("{}; x ∈ {x}", d.params),
                    (None, true) => "-".to_string(),
                    (None, false) => d.params.clone(),
                };
                let decay = d.decay_class.map_or("-".to_string(), |a| format!("n^-{a}"));
                writeln!(
                    out,
                    "{:<36} {:<6} {:<28} from {:<2} {:<6} {}{}",
                    d.id,
                    d.kind,
                    domain,
                    d.start_index,
                    decay,
                    d.paper_ref,
                    if d.erratum.is_some() { "  [erratum]" } else { "" }
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(id: &str, raw_params: &[String], x: Option<&str>, terms: u64, run: &RunArgs) -> Result<bool, Failure> {
    let config = run.config(terms)?;
    let params = parse_params(raw_params)?;
    let catalog = Catalog::standard();
    let report = if catalog.is_gf(id) {
        let x = x.ok_or_else(|| usage(format!("{id} is a generating-function identity; pass --x p/q")))?;
        catalog.verify_gf(id, &params, &parse_rational(x)?, terms, config.digits)?
    } else {
        if x.is_some() {
            // surfaces UnknownIdentity before complaining about --x
            catalog.series_entry(id)?;
            return Err(usage(format!("{id} is a series identity and takes no --x")));
        }
        catalog.verify_series(id, &params, &config.tol, config.max_terms, config.digits)?
    };
    let passed = report.passed();
    write_reports(&mut *run.sink()?, run.format, &[report], true)?;
    Ok(passed)
}

fn cmd_verify_all(terms: u64, run: &RunArgs) -> Result<bool, Failure> {
    let config = run.config(terms)?;
    let reports = Catalog::standard().verify_all(&config)?;
    write_reports(&mut *run.sink()?, run.format, &reports, false)?;
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            let p = r.params_text();
            if p.is_empty() {
                r.id.clone()
            } else {
                format!("{} ({p})", r.id)
            }
        })
        .collect();
    if failing.is_empty() {
        eprintln!("{} verifications, all pass", reports.len());
    } else {
        eprintln!("{} of {} verifications failed:", failing.len(), reports.len());
        for f in &failing {
            eprintln!("  {f}");
        }
    }
    Ok(failing.is_empty())
}

#[derive(Serialize)]
struct IntegralReport {
    name: &'static str,
    param: u64,
    closed_form: String,
    value: String,
    oracle: String,
    abs_discrepancy: String,
    digits: u32,
    verdict: &'static str,
}

const INTEGRAL_FIELDS: [&str; 8] = [
    "name",
    "param",
    "closed_form",
    "value",
    "oracle",
    "abs_discrepancy",
    "digits",
    "verdict",
];

fn cmd_integral(kind: ClosedFormKind, k: Option<u64>, r: Option<u64>, q: Option<u64>, run: &RunArgs) -> Result<bool, Failure> {
    let config = run.config(500)?;
    let given: Vec<(&str, u64)> = [("k", k), ("r", r), ("q", q)]
        .into_iter()
        .filter_map(|(n, v)| v.map(|v| (n, v)))
        .collect();
    let expected = kind.param_name();
    let p = match given.as_slice() {
        [(name, v)] if *name == expected => *v,
        _ => return Err(usage(format!("integral {kind} takes exactly one parameter, --{expected}"))),
    };
    let domain = |e: IntegralError| usage(format!("integral {kind}: {e}"));
    let exact = kind.closed_form(p).map_err(|e| domain(e.into()))?;
    let digits = config.digits;
    let value = eval_constvec(&exact, digits);
    let (oracle, computed) = match defining_integral(kind, p, digits) {
        Ok(q) => (q.value, true),
        Err(e @ IntegralError::Domain(_)) => return Err(domain(e)),
        Err(IntegralError::Numerics(e)) => {
            eprintln!("quadrature failed: {e}");
            (BigFloat::with_val(64, f64::NAN), false)
        }
    };
    let prec = bits_for_digits(digits);
    let diff = BigFloat::with_val(prec, &value - &oracle).abs();
    let scale = BigFloat::with_val(prec, value.abs_ref()).max(&BigFloat::with_val(prec, 1));
    let passed = computed && diff <= ten_pow_neg(i64::from(digits) - 10, prec) * scale;
    let report = IntegralReport {
        name: kind.name(),
        param: p,
        closed_form: exact.to_string(),
        value: to_decimal_string(&value, digits),
        oracle: to_decimal_string(&oracle, digits),
        abs_discrepancy: to_decimal_string(&diff, digits),
        digits,
        verdict: if passed { "pass" } else { "fail" },
    };
    let mut out = run.sink()?;
    match run.format {
        Format::Json => write_json(&mut *out, &report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(INTEGRAL_FIELDS).map_err(csv_error)?;
            w.serialize(&report).map_err(csv_error)?;
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{}({}) = {}", report.name, p, report.closed_form)?;
            writeln!(out, "  value:  {}", report.value)?;
            writeln!(out, "  oracle: {}", report.oracle)?;
            writeln!(out, "  |diff| = {}  {}", to_decimal_string(&diff, 5), report.verdict.to_uppercase())?;
        }
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::List { filter, run } => cmd_list(filter.as_deref(), run).map(|()| true),
        Command::Verify {
            id,
            params,
            x,
            terms,
            run,
        } => cmd_verify(id, params, x.as_deref(), *terms, run),
        Command::VerifyAll { terms, run } => cmd_verify_all(*terms, run),
        Command::Integral { name, k, r, q, run } => cmd_integral(*name, *k, *r, *q, run),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // output cut short by a closed pipe (e.g. `| head`) is not an error
        Err(f) if f.message.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
