//! Command-line front end: spec parsing, dispatch and result serialization.
//!
//! Data goes to the selected output (stdout by default), diagnostics and
//! report metadata to stderr. Exit codes: 0 success, 1 failed verification,
//! 2 invalid input, 3 resource limits or i/o.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use crate::discrepancy::{linf_norm, lp_norm};
use crate::drivers::{
    linf_digit_sum_table, scan_bounds, scan_max_driver, scan_ratios, verify_band_family,
    verify_column_family, verify_integral_identity, DriverOutcome, RatioFamily,
};
use crate::error::{Error, Result};
use crate::gf2::{BitPattern, MatrixSpec};
use crate::report::{Cell, ExperimentReport};
use crate::sequence::{prefix_with_budget, DEFAULT_POINT_BUDGET};
use crate::shift::signed_integral_fast_u64;

pub const DEFAULT_DIM: usize = 64;

#[derive(Parser)]
#[command(
    name = "nutdisc",
    version,
    about = "Digital (0,1)-sequences over Z2: exact generation and discrepancy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit sequence points, exact by default
    Gen(GenArgs),
    /// L_p discrepancy of a sequence prefix
    Disc(DiscArgs),
    /// Signed integral of the discrepancy function
    Integral(IntegralArgs),
    /// Drivers with a pass/fail verdict
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Tables and parameter scans
    #[command(subcommand)]
    Scan(ScanCmd),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Destination path; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    matrix: String,
    #[arg(long = "N")]
    n: u64,
    /// Render points as decimals with this many digits instead of exactly
    #[arg(long)]
    decimal: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct DiscArgs {
    #[arg(long)]
    matrix: String,
    #[arg(long = "N")]
    n: u64,
    /// Norm exponent: a real >= 1 or "inf"
    #[arg(long)]
    p: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Fast,
    Direct,
    Both,
}

#[derive(Args)]
struct IntegralArgs {
    #[arg(long)]
    matrix: String,
    #[arg(long = "N")]
    n: u64,
    #[arg(long, value_enum, default_value = "fast")]
    method: Method,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Band-matrix family: integral vs the linear prediction
    Thm1 {
        #[arg(long)]
        alpha: u32,
        #[arg(long = "r-max")]
        r_max: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Column-constant family at the indices N_a
    Thm2 {
        #[arg(long)]
        a: String,
        #[arg(long = "m-max")]
        m_max: u32,
        #[arg(long, default_value = "1")]
        p: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fast signed integral vs the enumerated oracle
    Lemma1 {
        #[arg(long)]
        matrix: String,
        #[arg(long = "n-max")]
        n_max: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum ScanCmd {
    /// Maximizer of |integral| over one dyadic index range
    Max {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// value / log N along a family: thm1:<alpha> or list:<n1,n2,...>
    Ratio {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        family: String,
        #[arg(long = "r-max")]
        r_max: Option<u32>,
        #[arg(long, default_value = "1")]
        p: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact sup norm and digit sum for N = 1..=n-max
    Figure1 {
        #[arg(long = "n-max", default_value = "127")]
        n_max: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Norm bound chain over a full index range
    Bounds {
        #[arg(long)]
        matrix: String,
        #[arg(long = "n-max")]
        n_max: u64,
        #[arg(long, default_value = "2")]
        p: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

struct EnvConfig {
    budget: u64,
    min_dim: usize,
}

impl EnvConfig {
    fn load() -> Self {
        let budget = std::env::var("NUTDISC_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_POINT_BUDGET);
        let min_dim = std::env::var("NUTDISC_PRECISION")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_DIM);
        EnvConfig { budget, min_dim }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version on stdout with code 0
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    let env = EnvConfig::load();
    match dispatch(cli.command, &env) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, env: &EnvConfig) -> Result<i32> {
    match command {
        Command::Gen(args) => cmd_gen(args, env),
        Command::Disc(args) => cmd_disc(args, env),
        Command::Integral(args) => cmd_integral(args, env),
        Command::Verify(cmd) => cmd_verify(cmd, env),
        Command::Scan(cmd) => cmd_scan(cmd, env),
    }
}

/// Grammar: `identity` | `upper1` | `band:<uint>=1>` | `column:<bits>` |
/// `rows:<bits>` | `explicit:<path>` (CSV of 0/1 entries, row-major, an
/// optional header row is skipped).
pub fn parse_matrix_spec(s: &str) -> Result<MatrixSpec> {
    if let Some(rest) = s.strip_prefix("band:") {
        let alpha: u32 = rest.parse().map_err(|_| Error::Parse {
            input: s.into(),
            position: 5,
            message: format!("expected a positive integer band width, got {rest:?}"),
        })?;
        return MatrixSpec::band(alpha);
    }
    if let Some(rest) = s.strip_prefix("column:") {
        return Ok(MatrixSpec::Column(offset_pattern(rest, s, 7)?));
    }
    if let Some(rest) = s.strip_prefix("rows:") {
        return Ok(MatrixSpec::RowPattern(offset_pattern(rest, s, 5)?));
    }
    if let Some(path) = s.strip_prefix("explicit:") {
        return Ok(MatrixSpec::Explicit(read_explicit_entries(Path::new(
            path,
        ))?));
    }
    match s {
        "identity" => Ok(MatrixSpec::Identity),
        "upper1" => Ok(MatrixSpec::UpperOnes),
        _ => Err(Error::Parse {
            input: s.into(),
            position: 0,
            message: "expected identity, upper1, band:<alpha>, column:<bits>, rows:<bits> \
                      or explicit:<path>"
                .into(),
        }),
    }
}

fn offset_pattern(bits: &str, full: &str, offset: usize) -> Result<BitPattern> {
    BitPattern::parse(bits).map_err(|e| match e {
        Error::Parse {
            position, message, ..
        } => Error::Parse {
            input: full.into(),
            position: position + offset,
            message,
        },
        other => other,
    })
}

fn read_explicit_entries(path: &Path) -> Result<Vec<Vec<u8>>> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<u8>> = fields
            .iter()
            .map(|f| match *f {
                "0" => Some(0),
                "1" => Some(1),
                _ => None,
            })
            .collect();
        match parsed {
            Some(row) => rows.push(row),
            None if lineno == 0 && rows.is_empty() => continue, // header row
            None => {
                return Err(Error::Parse {
                    input: format!("{}:{}", path.display(), lineno + 1),
                    position: 0,
                    message: "expected comma-separated 0/1 entries".into(),
                })
            }
        }
    }
    Ok(rows)
}

fn parse_p(s: &str) -> Result<Option<f64>> {
    let lower = s.trim().to_ascii_lowercase();
    if lower == "inf" || lower == "infinity" || lower == "∞" {
        return Ok(None);
    }
    let p: f64 = lower.parse().map_err(|_| {
        Error::Domain(format!(
            "invalid norm exponent {s:?}: expected a real >= 1 or inf"
        ))
    })?;
    if !p.is_finite() || p < 1.0 {
        return Err(Error::Domain(format!("norm exponent {p} must be >= 1")));
    }
    Ok(Some(p))
}

fn build_matrix(
    spec: &MatrixSpec,
    needed_rows: usize,
    env: &EnvConfig,
) -> Result<crate::gf2::Gf2Matrix> {
    spec.build(spec.preferred_dim(needed_rows.max(env.min_dim).max(1)))
}

fn rows_needed_for_index(n_max: u64) -> usize {
    (64 - n_max.leading_zeros()) as usize
}

fn cmd_gen(args: GenArgs, env: &EnvConfig) -> Result<i32> {
    let spec = parse_matrix_spec(&args.matrix)?;
    let c = build_matrix(&spec, rows_needed_for_index(args.n.saturating_sub(1)), env)?;
    let points = prefix_with_budget(&c, args.n, env.budget)?;
    let mut report = ExperimentReport::new("sequence points", vec!["point"])
        .with_param("matrix", spec.render())
        .with_param("N", args.n);
    for x in points.points() {
        report.push_row(vec![match args.decimal {
            Some(d) => Cell::Text(x.to_decimal_string(d)),
            None => Cell::Text(x.to_string()),
        }]);
    }
    emit_report(&report, args.out.format, args.out.output.as_deref())?;
    Ok(0)
}

fn cmd_disc(args: DiscArgs, env: &EnvConfig) -> Result<i32> {
    let spec = parse_matrix_spec(&args.matrix)?;
    let c = build_matrix(&spec, rows_needed_for_index(args.n.saturating_sub(1)), env)?;
    let points = prefix_with_budget(&c, args.n, env.budget)?;
    match parse_p(&args.p)? {
        None => {
            let sup = linf_norm(&points)?;
            println!("{sup}");
            eprintln!("decimal: {}", sup.to_f64().unwrap_or(f64::NAN));
        }
        Some(p) => {
            let norm = lp_norm(&points, p)?;
            match &norm.exact {
                Some(exact) => {
                    println!("{exact}");
                    eprintln!("decimal: {}", norm.value);
                }
                None => {
                    println!("{:.15}", norm.value);
                    if let Some(power) = &norm.exact_power {
                        eprintln!("exact p-th power: {power}");
                    }
                }
            }
        }
    }
    Ok(0)
}

fn cmd_integral(args: IntegralArgs, env: &EnvConfig) -> Result<i32> {
    let spec = parse_matrix_spec(&args.matrix)?;
    let c = build_matrix(&spec, rows_needed_for_index(args.n), env)?;
    match args.method {
        Method::Fast => {
            println!("{}", signed_integral_fast_u64(&c, args.n)?);
        }
        Method::Direct => {
            let points = prefix_with_budget(&c, args.n, env.budget)?;
            println!("{}", crate::discrepancy::signed_integral_direct(&points));
        }
        Method::Both => {
            let fast = signed_integral_fast_u64(&c, args.n)?;
            let points = prefix_with_budget(&c, args.n, env.budget)?;
            let direct = crate::discrepancy::signed_integral_direct(&points);
            let matches = fast == direct;
            println!("{fast}");
            println!("match={matches}");
            if !matches {
                eprintln!("error: fast path {fast} disagrees with direct oracle {direct}");
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn cmd_verify(cmd: VerifyCmd, env: &EnvConfig) -> Result<i32> {
    let (outcome, out) = match cmd {
        VerifyCmd::Thm1 { alpha, r_max, out } => (verify_band_family(alpha, 1..=r_max)?, out),
        VerifyCmd::Thm2 { a, m_max, p, out } => {
            let pattern = BitPattern::parse(&a)?;
            let p = parse_p(&p)?
                .ok_or_else(|| Error::Domain("this driver needs a finite norm exponent".into()))?;
            (
                verify_column_family(&pattern, 2..=m_max, p, env.budget)?,
                out,
            )
        }
        VerifyCmd::Lemma1 { matrix, n_max, out } => {
            let spec = parse_matrix_spec(&matrix)?;
            (
                verify_integral_identity(&spec, n_max, env.budget, env.min_dim)?,
                out,
            )
        }
    };
    finish_driver(outcome, out)
}

fn cmd_scan(cmd: ScanCmd, env: &EnvConfig) -> Result<i32> {
    match cmd {
        ScanCmd::Max { matrix, m, out } => {
            let spec = parse_matrix_spec(&matrix)?;
            finish_driver(scan_max_driver(&spec, m, env.min_dim)?, out)
        }
        ScanCmd::Ratio {
            matrix,
            family,
            r_max,
            p,
            out,
        } => {
            let spec = parse_matrix_spec(&matrix)?;
            let fam = parse_ratio_family(&family, r_max)?;
            let p = parse_p(&p)?
                .ok_or_else(|| Error::Domain("ratio scans need a finite norm exponent".into()))?;
            finish_driver(scan_ratios(&spec, &fam, p, env.budget, env.min_dim)?, out)
        }
        ScanCmd::Figure1 { n_max, out } => {
            let report = linf_digit_sum_table(n_max)?;
            emit_report(&report, out.format, out.output.as_deref())?;
            Ok(0)
        }
        ScanCmd::Bounds {
            matrix,
            n_max,
            p,
            out,
        } => {
            let spec = parse_matrix_spec(&matrix)?;
            let p = parse_p(&p)?
                .ok_or_else(|| Error::Domain("bound scans need a finite norm exponent".into()))?;
            finish_driver(scan_bounds(&spec, n_max, p, env.budget, env.min_dim)?, out)
        }
    }
}

fn parse_ratio_family(s: &str, r_max: Option<u32>) -> Result<RatioFamily> {
    if let Some(alpha) = s.strip_prefix("thm1:") {
        let alpha: u32 = alpha.parse().map_err(|_| Error::Parse {
            input: s.into(),
            position: 5,
            message: "expected thm1:<alpha> with a positive integer alpha".into(),
        })?;
        let r_max =
            r_max.ok_or_else(|| Error::Domain("family thm1:<alpha> needs --r-max".into()))?;
        return Ok(RatioFamily::BandSeries { alpha, r_max });
    }
    if let Some(list) = s.strip_prefix("list:") {
        let ns: std::result::Result<Vec<u64>, _> =
            list.split(',').map(|v| v.trim().parse()).collect();
        return match ns {
            Ok(ns) if !ns.is_empty() => Ok(RatioFamily::Explicit(ns)),
            _ => Err(Error::Parse {
                input: s.into(),
                position: 5,
                message: "expected list:<n1,n2,...> with positive integers".into(),
            }),
        };
    }
    Err(Error::Parse {
        input: s.into(),
        position: 0,
        message: "expected thm1:<alpha> or list:<n1,n2,...>".into(),
    })
}

fn finish_driver(outcome: DriverOutcome, out: OutputArgs) -> Result<i32> {
    emit_report(&outcome.report, out.format, out.output.as_deref())?;
    for line in &outcome.failures {
        eprintln!("check failed: {line}");
    }
    Ok(if outcome.passed { 0 } else { 1 })
}

/// Writes the data stream; metadata goes to stderr so files stay
/// byte-identical across runs.
pub fn emit_report(report: &ExperimentReport, format: Format, path: Option<&Path>) -> Result<()> {
    eprintln!("# {} (v{})", report.meta.title, report.meta.tool_version);
    for (k, v) in &report.meta.params {
        eprintln!("# {k} = {v}");
    }
    let mut buf: Vec<u8> = Vec::new();
    match format {
        Format::Csv => report.write_csv(&mut buf)?,
        Format::Json => report.write_json(&mut buf)?,
    }
    match path {
        Some(p) => fs::write(p, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in ["identity", "upper1", "band:3", "column:01", "rows:10"] {
            let spec = parse_matrix_spec(s).unwrap();
            assert_eq!(spec.render(), s);
            assert_eq!(parse_matrix_spec(&spec.render()).unwrap(), spec);
        }
    }

    #[test]
    fn spec_parse_errors_carry_positions() {
        match parse_matrix_spec("band:x").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_matrix_spec("column:0x1").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 8),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_matrix_spec("hilbert").is_err());
    }

    #[test]
    fn p_values() {
        assert_eq!(parse_p("2").unwrap(), Some(2.0));
        assert_eq!(parse_p("2.5").unwrap(), Some(2.5));
        assert_eq!(parse_p("inf").unwrap(), None);
        assert!(parse_p("0.5").is_err());
        assert!(parse_p("nan").is_err());
    }

    #[test]
    fn explicit_file_with_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        fs::write(&path, "c1,c2\n1,1\n0,1\n").unwrap();
        let entries = read_explicit_entries(&path).unwrap();
        assert_eq!(entries, vec![vec![1, 1], vec![0, 1]]);
    }
}
