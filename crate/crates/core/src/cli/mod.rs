//! Command-line front end: `eval`, `verify` and `report`.

pub mod render;

pub use render::{to_csv, to_json, to_markdown, ConfigDoc, ReportDoc, ReportRow, CSV_HEADER, TOOL_VERSION};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::identities::{run_suite, summarize, SuiteConfig, Variant, Verdict};
use crate::kernel::decimal::{format_ball_justified, parse_exact, rational_to_string};
use crate::kernel::{Ball, Precision};
use crate::specfun::{
    bernoulli, euler_gamma, hurwitz_zeta, polygamma_at, stirling2, zeta_int, zeta_minus_one, HurwitzArg,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "abelzeta", version, about = "Rigorous verification of zeta-series identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one function: zeta, zeta_minus_one, hurwitz, polygamma, gamma, stirling2, bernoulli.
    Eval(EvalArgs),
    /// Run the identity suite and write a report.
    Verify(VerifyArgs),
    /// Re-render a JSON report in another format.
    Report(ReportArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    pub function: String,
    /// Positional arguments; prefix negative rationals with `--`.
    pub args: Vec<String>,
    #[arg(long, default_value_t = 256)]
    pub prec_bits: u32,
    #[arg(long, value_enum, default_value_t = EvalFormat::Text)]
    pub format: EvalFormat,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 256)]
    pub prec_bits: u32,
    #[arg(long, default_value = "1e-40")]
    pub eps: String,
    /// Identity-id glob, e.g. `thm*` or `goldbach,eq28`.
    #[arg(long)]
    pub only: Option<String>,
    #[arg(long)]
    pub variant: Option<String>,
    /// M grid: `a..b` or a comma list.
    #[arg(long)]
    pub m: Option<String>,
    /// N grid: `a..b` or a comma list.
    #[arg(long)]
    pub n: Option<String>,
    /// z grid: comma list of rationals.
    #[arg(long)]
    pub z: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure categories mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Io(anyhow::Error),
}

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Usage(e.into())
}

fn io<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Io(e.into())
}

/// Parse `a..b` (inclusive) or `a,b,c`; an empty string gives an empty grid.
pub fn parse_int_grid(s: &str) -> anyhow::Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
        let b: u32 = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in {s:?}"))?;
        if a > b {
            bail!("empty range {s:?}");
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse::<u32>().with_context(|| format!("bad integer {t:?}"))).collect()
}

pub fn parse_rational_grid(s: &str) -> anyhow::Result<Vec<BigRational>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| parse_exact(t.trim()).ok_or_else(|| anyhow!("bad rational {t:?}"))).collect()
}

fn positive_ints(grid: Vec<u32>, what: &str) -> anyhow::Result<Vec<u32>> {
    if grid.contains(&0) {
        bail!("{what} values must be positive");
    }
    Ok(grid)
}

/// Build the suite configuration from command-line flags.
pub fn suite_config(args: &VerifyArgs) -> anyhow::Result<SuiteConfig> {
    let mut config = SuiteConfig {
        prec_bits: args.prec_bits,
        eps: args.eps.clone(),
        seed: args.seed,
        only: args.only.clone(),
        ..SuiteConfig::default()
    };
    if let Some(v) = &args.variant {
        config.variant = Some(v.parse::<Variant>()?);
    }
    if let Some(m) = &args.m {
        let grid = positive_ints(parse_int_grid(m)?, "M")?;
        config.m_grid = grid.clone();
        config.thm23_m_grid = grid;
    }
    if let Some(n) = &args.n {
        let grid = positive_ints(parse_int_grid(n)?, "N")?;
        config.n_grid = grid.clone();
        config.eq28_n_grid = grid;
    }
    if let Some(z) = &args.z {
        let grid = parse_rational_grid(z)?;
        config.z_grid = grid.clone();
        config.eq28_z_grid = grid;
    }
    config.options()?;
    Ok(config)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).context("writing stdout").map_err(io)
        }
    }
}

fn render(doc: &ReportDoc, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => to_csv(doc),
        Format::Md => to_markdown(doc),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Failure> {
    let config = suite_config(args).map_err(usage)?;
    let rows = match args.jobs {
        Some(0) => return Err(usage(anyhow!("--jobs must be positive"))),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(j).build().map_err(usage)?;
            pool.install(|| run_suite(&config))
        }
        None => run_suite(&config),
    }
    .map_err(usage)?;
    let summary = summarize(&rows);
    let doc = ReportDoc::new(&config, &rows, summary);
    write_output(args.out.as_deref(), &render(&doc, args.format))?;
    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == v).count();
    let (pass, fail, inconclusive) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Inconclusive));
    eprintln!("{} rows: {pass} pass, {fail} fail, {inconclusive} inconclusive", rows.len());
    Ok(if fail > 0 {
        EXIT_FAIL
    } else if inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_PASS
    })
}

fn cmd_report(args: &ReportArgs) -> Result<i32, Failure> {
    let text = fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display())).map_err(io)?;
    let doc: ReportDoc = serde_json::from_str(&text).context("malformed report").map_err(io)?;
    write_output(args.out.as_deref(), &render(&doc, args.format))?;
    Ok(EXIT_PASS)
}

/// Result of `eval`: either an exact rational or a ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalValue {
    Exact(BigRational),
    Ball(Ball),
}

fn arg_count(args: &[String], n: usize, function: &str) -> anyhow::Result<()> {
    if args.len() != n {
        bail!("{function} takes {n} argument(s), got {}", args.len());
    }
    Ok(())
}

fn int_arg(s: &str) -> anyhow::Result<u32> {
    s.parse().with_context(|| format!("expected a nonnegative integer, got {s:?}"))
}

fn rational_arg(s: &str) -> anyhow::Result<BigRational> {
    parse_exact(s).ok_or_else(|| anyhow!("expected a rational number, got {s:?}"))
}

pub fn evaluate(function: &str, args: &[String], prec: Precision) -> anyhow::Result<EvalValue> {
    let value = match function {
        "zeta" => {
            arg_count(args, 1, function)?;
            EvalValue::Ball(zeta_int(int_arg(&args[0])?, prec)?)
        }
        "zeta_minus_one" => {
            arg_count(args, 1, function)?;
            EvalValue::Ball(zeta_minus_one(int_arg(&args[0])?, prec)?)
        }
        "hurwitz" => {
            arg_count(args, 2, function)?;
            let a = Ball::from_rational(&rational_arg(&args[1])?, prec);
            EvalValue::Ball(hurwitz_zeta(&HurwitzArg::new(int_arg(&args[0])?, a)?, prec)?)
        }
        "polygamma" => {
            arg_count(args, 2, function)?;
            let x = Ball::from_rational(&rational_arg(&args[1])?, prec);
            EvalValue::Ball(polygamma_at(int_arg(&args[0])?, x, prec)?)
        }
        "gamma" => {
            arg_count(args, 0, function)?;
            EvalValue::Ball(euler_gamma(prec)?)
        }
        "stirling2" => {
            arg_count(args, 2, function)?;
            let n = int_arg(&args[0])? as usize;
            let k = int_arg(&args[1])? as usize;
            EvalValue::Exact(BigRational::from_integer(stirling2(n, k)))
        }
        "bernoulli" => {
            arg_count(args, 1, function)?;
            EvalValue::Exact(bernoulli(int_arg(&args[0])? as usize))
        }
        other => bail!(
            "unknown function {other:?}; expected one of zeta, zeta_minus_one, hurwitz, polygamma, gamma, stirling2, bernoulli"
        ),
    };
    Ok(value)
}

fn cmd_eval(args: &EvalArgs) -> Result<i32, Failure> {
    let prec = Precision::new(args.prec_bits).map_err(usage)?;
    let value = evaluate(&args.function, &args.args, prec).map_err(usage)?;
    let (mid, rad, exact) = match &value {
        EvalValue::Exact(r) => (rational_to_string(r), "0".to_string(), true),
        EvalValue::Ball(b) => {
            let (m, r) = format_ball_justified(b);
            (m, r, false)
        }
    };
    let text = match args.format {
        EvalFormat::Text if exact => format!("{mid}\n"),
        EvalFormat::Text => format!("{mid} +/- {rad}\n"),
        EvalFormat::Json => {
            let obj = serde_json::json!({
                "function": args.function,
                "args": args.args,
                "prec_bits": args.prec_bits,
                "mid": mid,
                "rad": rad,
                "exact": exact,
            });
            format!("{obj}\n")
        }
    };
    write_output(None, &text)?;
    Ok(EXIT_PASS)
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            EXIT_IO
        }
    }
}
