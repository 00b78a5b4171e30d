//! `dtu`: exact evaluation, classification and extremization from the shell.

mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dtu_core::classify::classify_with_cap;
use dtu_core::decimal::DEFAULT_DIGITS;
use dtu_core::extremal::{brute_extrema, max_construct, min_construct, ExtremalInstance, DEFAULT_BRUTE_CAP};
use dtu_core::geval::DEFAULT_FAREY_CAP;
use dtu_core::{
    g_interval, g_mediant, kappa2_bracket, parse_fraction, sample_farey, verify_suite, DecimalDigits, Error, Fraction,
    LambdaKind, Orientation, PeriodicCF, QuotientSeq, VerifyOptions, DEFAULT_PRECISION_CAP,
};
use serde::Serialize;
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_COMPUTE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "dtu", version, about = "Exact arithmetic for the singular functions g_λ")]
struct Cli {
    /// Bit cap for certified surd comparisons.
    #[arg(long, global = true, env = "DTU_PRECISION_BITS_CAP", default_value_t = DEFAULT_PRECISION_CAP,
          value_parser = clap::value_parser!(u32).range(64..))]
    precision_bits_cap: u32,

    /// Cap on states visited by the exhaustive extremal search.
    #[arg(long, global = true, env = "DTU_BRUTE_CAP", default_value_t = DEFAULT_BRUTE_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    brute_cap: u64,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate g_λ at a rational point, or enclose it at a quadratic irrational.
    Eval(EvalArgs),
    /// Tabulate g_λ over the Farey fractions of a given order as CSV.
    Sample(SampleArgs),
    /// Decide whether g'(x) is 0 or ∞ at a periodic continued fraction.
    Classify(ClassifyArgs),
    /// Extremal continuants over sequences of fixed length and weighted sum.
    Extremal(ExtremalArgs),
    /// Bracket the second threshold inside the (7,3)/(7,4) block family.
    Kappa2(Kappa2Args),
    /// Run the reproduction report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// half, phi-inv, tau or a fraction in (0, 1).
    #[arg(long)]
    lambda: LambdaKind,
    /// Rational point in [0, 1].
    #[arg(long, conflicts_with_all = ["period", "preperiod"], required_unless_present = "period")]
    x: Option<String>,
    /// Period of a quadratic irrational, e.g. 7,4.
    #[arg(long)]
    period: Option<QuotientSeq>,
    #[arg(long, requires = "period")]
    preperiod: Option<QuotientSeq>,
    /// Enclosure width for irrational points.
    #[arg(long, default_value = "1/1000000000000000000000000000000")]
    tol: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    lambda: LambdaKind,
    /// Largest denominator.
    #[arg(long)]
    depth: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    period: QuotientSeq,
    #[arg(long)]
    preperiod: Option<QuotientSeq>,
    #[arg(long, default_value = "phi")]
    orientation: Orientation,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Min,
    Max,
    Brute,
}

#[derive(Args, Debug)]
struct ExtremalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: u64,
    #[arg(long, default_value = "phi")]
    orientation: Orientation,
    #[arg(long, value_enum, default_value = "max")]
    mode: Mode,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Kappa2Args {
    #[arg(long, default_value = "1/500")]
    epsilon: String,
    /// Write the probe sequence as a JSON array.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Directory for report.md, report.json and kappa2_trace.json.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Flip one expectation to exercise the failure path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
    Io(String),
    /// The report was written but some rows failed.
    Verify(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::OutOfRange(_)
            | Error::NonPositiveQuotient
            | Error::EmptySequence
            | Error::InvalidTransform(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(n)) => {
            eprintln!("verification failed: {n} row(s) did not match");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Compute(m) | Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_COMPUTE)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Eval(a) => eval(cli, a),
        Command::Sample(a) => sample(cli, a),
        Command::Classify(a) => classify_cmd(cli, a),
        Command::Extremal(a) => extremal(cli, a),
        Command::Kappa2(a) => kappa2(cli, a),
        Command::Verify(a) => verify(cli, a),
    }
}

fn fraction_arg(name: &str, s: &str) -> Outcome<Fraction> {
    parse_fraction(s).map_err(|_| Failure::Usage(format!("--{name}: cannot parse {s:?} as a fraction")))
}

fn format_for(cli: &Cli, default: Format, allowed: &[Format]) -> Outcome<Format> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let name = f.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        Err(Failure::Usage(format!("format {name} is not available for this command")))
    }
}

/// Writes `body` to `path`, or to stdout.
fn emit(path: Option<&Path>, body: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

fn text_block(rows: &[(&str, String)]) -> String {
    rows.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

fn eval(cli: &Cli, a: &EvalArgs) -> Outcome {
    let format = format_for(cli, Format::Text, &[Format::Text, Format::Json])?;
    let body = if let Some(x) = &a.x {
        let x = fraction_arg("x", x)?;
        let g = g_mediant(&a.lambda, &x)?;
        let decimal = g.to_decimal(DEFAULT_DIGITS);
        match format {
            Format::Json => to_json(&json!({
                "lambda": a.lambda.to_string(),
                "x": x.to_string(),
                "g_exact": g.to_string(),
                "g_decimal": decimal,
            })),
            _ => format!("{g}\n{decimal}\n"),
        }
    } else {
        let period = a.period.clone().expect("clap requires --x or --period");
        let x = PeriodicCF::new(a.preperiod.clone().unwrap_or_else(QuotientSeq::empty), period)?;
        let tol = fraction_arg("tol", &a.tol)?;
        let iv = g_interval(&a.lambda, &x, &tol)?;
        let (lo_d, hi_d) = (iv.lo.to_decimal(DEFAULT_DIGITS), iv.hi.to_decimal(DEFAULT_DIGITS));
        match format {
            Format::Json => to_json(&json!({
                "lambda": a.lambda.to_string(),
                "x": x.to_string(),
                "lo": iv.lo.to_string(),
                "hi": iv.hi.to_string(),
                "lo_decimal": lo_d,
                "hi_decimal": hi_d,
                "width": iv.width().to_string(),
            })),
            _ => text_block(&[
                ("x", x.to_string()),
                ("lo", iv.lo.to_string()),
                ("hi", iv.hi.to_string()),
                ("lo (approx)", lo_d),
                ("hi (approx)", hi_d),
            ]),
        }
    };
    emit(a.output.as_deref(), &body)
}

fn sample(cli: &Cli, a: &SampleArgs) -> Outcome {
    let format = format_for(cli, Format::Csv, &[Format::Csv, Format::Json])?;
    let table = sample_farey(&a.lambda, a.depth, DEFAULT_FAREY_CAP)?;
    let body = match format {
        Format::Json => {
            let rows: Vec<_> = table
                .iter()
                .map(|(x, g)| {
                    json!({
                        "x_num": x.numer().to_string(),
                        "x_den": x.denom().to_string(),
                        "g_exact": g.to_string(),
                        "g_decimal": g.to_decimal(DEFAULT_DIGITS),
                    })
                })
                .collect();
            to_json(&rows)
        }
        _ => {
            let mut out = String::from("x_num,x_den,g_exact,g_decimal\n");
            for (x, g) in &table {
                out.push_str(&format!("{},{},{},{}\n", x.numer(), x.denom(), g, g.to_decimal(DEFAULT_DIGITS)));
            }
            out
        }
    };
    emit(a.output.as_deref(), &body)
}

fn classify_cmd(cli: &Cli, a: &ClassifyArgs) -> Outcome {
    let format = format_for(cli, Format::Json, &[Format::Json, Format::Text])?;
    let x = PeriodicCF::new(a.preperiod.clone().unwrap_or_else(QuotientSeq::empty), a.period.clone())?;
    let r = classify_with_cap(&x, a.orientation, cli.precision_bits_cap)?;
    let growth_decimal = r.growth.value.to_decimal(DEFAULT_DIGITS);
    let body = match format {
        Format::Text => text_block(&[
            ("x", x.to_string()),
            ("classification", r.classification.to_string()),
            ("kappa", r.kappa.to_string()),
            ("growth rate", r.growth.value.to_string()),
            ("growth rate (approx)", growth_decimal),
            (
                "lambda^2 vs phi^S",
                format!(
                    "{} ({} than phi^{})",
                    r.certificate.lambda_squared, r.certificate.ordering, r.certificate.phi_exponent
                ),
            ),
        ]),
        _ => to_json(&json!({
            "x": x.to_string(),
            "orientation": a.orientation,
            "kappa": r.kappa.to_string(),
            "growth_rate_exact": r.growth.value.to_string(),
            "growth_rate_decimal": growth_decimal,
            "classification": r.classification,
            "certificate": r.certificate,
        })),
    };
    emit(a.output.as_deref(), &body)
}

fn extremal(cli: &Cli, a: &ExtremalArgs) -> Outcome {
    let format = format_for(cli, Format::Json, &[Format::Json, Format::Text])?;
    let inst = ExtremalInstance::new(a.n, a.s, a.orientation).map_err(|e| match e {
        Error::Infeasible(m) => Failure::Compute(format!("infeasible instance: {m}")),
        other => other.into(),
    })?;
    let mut fields = serde_json::Map::new();
    let (sequence, certified) = match a.mode {
        Mode::Min => (min_construct(&inst)?, true),
        Mode::Max => {
            let c = max_construct(&inst)?;
            (c.sequence, c.certified)
        }
        Mode::Brute => {
            let e = brute_extrema(&inst, cli.brute_cap)?;
            fields.insert("min_sequence".into(), json!(e.min_seq.to_string()));
            fields.insert("min_value_exact".into(), json!(e.min_val.to_string()));
            fields.insert("min_value_decimal".into(), json!(e.min_val.to_decimal(DEFAULT_DIGITS)));
            fields.insert("states".into(), json!(e.states));
            (e.max_seq, true)
        }
    };
    let value = sequence.continuant();
    let mut out = serde_json::Map::new();
    out.insert("sequence".into(), json!(sequence.to_string()));
    out.insert("value_decimal".into(), json!(value.to_decimal(DEFAULT_DIGITS)));
    out.insert("value_exact".into(), json!(value.to_string()));
    out.insert("mode".into(), json!(a.mode));
    out.insert("certified".into(), json!(certified));
    out.extend(fields);
    let body = match format {
        Format::Text => {
            out.iter().map(|(k, v)| format!("{k}: {}\n", v.as_str().map_or(v.to_string(), str::to_string))).collect()
        }
        _ => to_json(&out),
    };
    emit(a.output.as_deref(), &body)
}

fn kappa2(cli: &Cli, a: &Kappa2Args) -> Outcome {
    let format = format_for(cli, Format::Json, &[Format::Json, Format::Text])?;
    let eps = fraction_arg("epsilon", &a.epsilon)?;
    let b = kappa2_bracket(&eps)?;
    if let Some(path) = &a.trace {
        fs::write(path, to_json(&b.trace))?;
    }
    let body = match format {
        Format::Text => text_block(&[
            ("lo", b.lo.kappa_text()),
            ("hi", b.hi.kappa_text()),
            ("witness_lo", b.witness_lo.to_string()),
            ("witness_hi", b.witness_hi.to_string()),
            ("probes", b.trace.len().to_string()),
        ]),
        _ => to_json(&json!({
            "lo": b.lo.kappa_text(),
            "hi": b.hi.kappa_text(),
            "witness_lo": b.witness_lo.to_string(),
            "witness_hi": b.witness_hi.to_string(),
        })),
    };
    emit(a.output.as_deref(), &body)
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Outcome {
    let opts = VerifyOptions {
        seed: a.seed,
        max_bits: cli.precision_bits_cap,
        inject_fault: a.inject_fault,
        ..VerifyOptions::default()
    };
    let rep = verify_suite(&opts)?;
    if let Some(dir) = &a.output {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.md"), report::markdown(&rep))?;
        fs::write(dir.join("report.json"), to_json(&report::json(&rep)))?;
        fs::write(dir.join("kappa2_trace.json"), to_json(&rep.bracket.trace))?;
    }
    emit(None, &report::summary(&rep))?;
    match rep.failures() {
        0 => Ok(()),
        n => Err(Failure::Verify(n)),
    }
}
