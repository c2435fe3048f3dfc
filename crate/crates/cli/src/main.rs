//! Command-line front end: print q-trigonometric series and continuants,
//! extract continued-fraction coefficients, and run the identity
//! verification suites with text or JSON reports.
//!
//! Exit codes: 0 when everything verifies, 1 when an identity check
//! fails, 2 on usage or configuration errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qtan_core::cfrac::extract_cf_coeffs;
use qtan_core::continuants::{b_coeff, continuant_pairs};
use qtan_core::qseries::{cos_q, sin_q, tan_q};
use qtan_core::{
    run_suite, Error, LaurentPoly, ReportFormat, Result, SuiteConfig, VerifyReport, ZPoly,
};

#[derive(Parser)]
#[command(
    name = "qtan",
    version,
    about = "Exact computations around the continued fraction of the q-tangent function"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a q-trigonometric series.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        /// Truncation order; coefficients of z^0 through z^(order-1) are printed.
        #[arg(long, default_value_t = 26)]
        order: usize,
    },
    /// Print the partial denominators b_n and the continuants A_n, B_n.
    Continuants {
        #[arg(long = "max-n", default_value_t = 8)]
        max_n: i64,
    },
    /// Extract partial denominators from -z*tan_q and compare each with
    /// the closed form.
    Extract {
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// Working series order; defaults to the minimum 2*depth + 2.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long = "corrupt-b", hide = true)]
        corrupt_b: Option<i64>,
    },
    /// Run every identity suite over the configured parameter ranges.
    Verify {
        #[arg(long = "max-n", default_value_t = 8)]
        max_n: i64,
        #[arg(long = "max-k", default_value_t = 10)]
        max_k: i64,
        #[arg(long = "max-N", default_value_t = 8)]
        max_final_n: i64,
        #[arg(long = "max-x", default_value_t = 8)]
        max_x: i64,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 26)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "corrupt-b", hide = true)]
        corrupt_b: Option<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Sinq,
    Cosq,
    Tanq,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(format: Format) -> Self {
        match format {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        }
    }
}

/// One suite report in the stable JSON schema; keys are emitted in
/// alphabetical order so that parsing and re-serializing with a stock
/// JSON library reproduces the bytes.
#[derive(Serialize, Deserialize)]
struct ReportJson {
    elapsed_ms: f64,
    identity: String,
    params: BTreeMap<String, i64>,
    passed: bool,
    witness: Option<String>,
}

impl From<&VerifyReport> for ReportJson {
    fn from(report: &VerifyReport) -> Self {
        Self {
            elapsed_ms: report.elapsed.as_secs_f64() * 1e3,
            identity: report.identity_id.clone(),
            params: report.parameters.clone(),
            passed: report.passed,
            witness: report.witness.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Series { kind, order } => cmd_series(kind, order),
        Command::Continuants { max_n } => cmd_continuants(max_n),
        Command::Extract {
            depth,
            order,
            corrupt_b,
        } => cmd_extract(depth, order, corrupt_b),
        Command::Verify {
            max_n,
            max_k,
            max_final_n,
            max_x,
            depth,
            order,
            format,
            out,
            corrupt_b,
        } => cmd_verify(SuiteConfig {
            max_n,
            max_k,
            max_final_n,
            max_x,
            max_depth: depth,
            series_order: order,
            output_path: out,
            format: format.into(),
            corrupt_b,
        }),
    }
}

fn cmd_series(kind: SeriesKind, order: usize) -> Result<ExitCode> {
    if order == 0 {
        return Err(Error::InvalidConfig("order must be at least 1".to_string()));
    }
    let series = match kind {
        SeriesKind::Sinq => sin_q(order),
        SeriesKind::Cosq => cos_q(order),
        SeriesKind::Tanq => tan_q(order),
    };
    let mut out = String::new();
    for m in 0..order {
        writeln!(out, "z^{m}: {}", series.coeff(m)).expect("string write");
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_continuants(max_n: i64) -> Result<ExitCode> {
    if max_n < 1 {
        return Err(Error::InvalidConfig("max-n must be at least 1".to_string()));
    }
    let pairs = continuant_pairs(max_n);
    let mut out = String::new();
    for n in 1..=max_n {
        let pair = &pairs[(n + 1) as usize];
        writeln!(out, "b_{n} = {}", b_coeff(n)?).expect("string write");
        writeln!(out, "A_{n} = {}", render_zpoly(&pair.a)).expect("string write");
        writeln!(out, "B_{n} = {}", render_zpoly(&pair.b)).expect("string write");
        if n < max_n {
            out.push('\n');
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn render_zpoly(p: &ZPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (m, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let part = if m == 0 {
            format!("{c}")
        } else if c.is_one() {
            format!("z^{m}")
        } else if c.neg().is_one() {
            format!("-z^{m}")
        } else {
            format!("({c})*z^{m}")
        };
        parts.push(part);
    }
    let mut joined = String::new();
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            joined.push_str(part);
        } else if let Some(rest) = part.strip_prefix('-') {
            joined.push_str(" - ");
            joined.push_str(rest);
        } else {
            joined.push_str(" + ");
            joined.push_str(part);
        }
    }
    joined
}

fn cmd_extract(depth: usize, order: Option<usize>, corrupt_b: Option<i64>) -> Result<ExitCode> {
    if depth == 0 {
        return Err(Error::InvalidConfig("depth must be at least 1".to_string()));
    }
    let needed = 2 * depth + 2;
    let order = order.unwrap_or(needed);
    if order < needed {
        return Err(Error::InvalidConfig(format!(
            "order {order} is too small for depth {depth}; at least {needed} is needed"
        )));
    }
    let f = tan_q(order - 1).shift_z(1).neg();
    let extracted = extract_cf_coeffs(&f, depth)?;
    let mut out = String::new();
    let mut failed = false;
    for (index, value) in extracted.iter().enumerate() {
        let n = index as i64 + 1;
        let mut formula = b_coeff(n)?;
        if corrupt_b == Some(n) {
            formula = formula.add(&LaurentPoly::q_pow(1));
        }
        if value == &formula {
            writeln!(out, "b_{n} = {value}, MATCH").expect("string write");
        } else {
            failed = true;
            writeln!(out, "b_{n} extracted = {value}").expect("string write");
            writeln!(out, "b_{n} formula = {formula}").expect("string write");
            writeln!(out, "b_{n} difference = {}, MISMATCH", value.sub(&formula))
                .expect("string write");
        }
    }
    print!("{out}");
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_verify(config: SuiteConfig) -> Result<ExitCode> {
    let reports = run_suite(&config)?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    let body = match config.format {
        ReportFormat::Text => render_text(&reports),
        ReportFormat::Json => render_json(&reports),
    };
    match &config.output_path {
        Some(path) => {
            fs::write(path, &body).map_err(|err| {
                Error::InvalidConfig(format!("cannot write {}: {err}", path.display()))
            })?;
            println!("wrote {} reports to {}", reports.len(), path.display());
        }
        None => print!("{body}"),
    }
    Ok(if failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn render_text(reports: &[VerifyReport]) -> String {
    let mut out = String::new();
    for report in reports {
        let params = report
            .parameters
            .iter()
            .map(|(key, value)| format!("{key}={value}"))
            .collect::<Vec<_>>()
            .join(" ");
        if report.passed {
            writeln!(out, "PASS {} {params}", report.identity_id).expect("string write");
        } else {
            writeln!(
                out,
                "FAIL {} {params} witness: {}",
                report.identity_id,
                report.witness.as_deref().unwrap_or("")
            )
            .expect("string write");
        }
    }
    let passed = reports.len() - reports.iter().filter(|r| !r.passed).count();
    writeln!(
        out,
        "{} checks: {} passed, {} failed",
        reports.len(),
        passed,
        reports.len() - passed
    )
    .expect("string write");
    out
}

fn render_json(reports: &[VerifyReport]) -> String {
    let rows: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
    let mut body = serde_json::to_string_pretty(&rows).expect("reports serialize");
    body.push('\n');
    body
}
