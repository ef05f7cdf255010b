//! `plsym`: tables, classification, verification suites, simulation and
//! figure-data export. Exit codes: 0 pass, 1 check failure, 2 usage error.

mod export;
mod report;
mod simulate;
mod tables;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use plsym::liealg::{classify, AlgebraElement, LieError};
use plsym::solutions::FamilyId;
use plsym::symexpr::{Expr, ExprError, Rational};
use plsym::numgrid::NumError;

use report::{render, Format, Report, Verdict};

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Lie(LieError::Theta(_) | LieError::ZeroElement) => 2,
            _ => 1,
        }
    }
}

/// Σ αₖXₖ as text.
pub fn combo(alpha: &[Expr; 5]) -> String {
    let mut parts = Vec::new();
    for (k, a) in alpha.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let x = format!("X{}", k + 1);
        parts.push(match a.to_string().as_str() {
            "1" => x,
            "-1" => format!("-{x}"),
            s if a.len() > 1 => format!("({s})*{x}"),
            s => format!("{s}*{x}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Accepts integers, fractions `p/q` and decimals `0.25`.
fn rational(s: &str) -> Result<Rational, String> {
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("not a number: {s}"));
        }
        let digits: Rational = format!("{int}{frac}").parse().map_err(|_| format!("not a number: {s}"))?;
        let scale = num_pow10(frac.len());
        return Ok(digits / scale);
    }
    s.parse().map_err(|_| format!("not a rational number: {s}"))
}

fn num_pow10(n: usize) -> Rational {
    format!("1{}", "0".repeat(n)).parse().expect("power of ten")
}

fn param(s: &str) -> Result<(String, f64), String> {
    let (n, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s}"))?;
    Ok((n.trim().to_string(), v.trim().parse().map_err(|_| format!("bad value in {s}"))?))
}

fn family_id(s: &str) -> Result<FamilyId, String> {
    FamilyId::parse(s).ok_or_else(|| format!("unknown family {s}; expected S1..S6"))
}

#[derive(Parser)]
#[command(name = "plsym", version, about = "Symmetry, reduction and conservation-law checks for a porous-media population model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized zero testing and sampling.
    #[arg(long, global = true, default_value_t = 0x5eed_0001)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Print a computed table; --check compares it with the transcription.
    Tables {
        #[arg(value_enum)]
        which: tables::Which,
        #[arg(long)]
        check: bool,
    },
    /// Reduce an element a1X1 + … + a5X5 to its optimal-system representative.
    Classify {
        /// Coefficients a1..a5: integers, fractions p/q or decimals.
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        a1: Rational,
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        a2: Rational,
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        a3: Rational,
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        a4: Rational,
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        a5: Rational,
        #[arg(long, value_parser = rational, default_value = "1/2")]
        theta: Rational,
        /// Replay the adjoint matrix on the input and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(value_enum, default_value_t = verify::Scope::All)]
        scope: verify::Scope,
        /// Fix h (symbolic when omitted).
        #[arg(long, value_parser = rational, allow_negative_numbers = true)]
        h: Option<Rational>,
        /// Fix theta (symbolic when omitted; 1/2 for the round-trip test).
        #[arg(long, value_parser = rational)]
        theta: Option<Rational>,
        /// Number of random elements in the classification round trip.
        #[arg(long, default_value_t = 1000)]
        round_trips: usize,
        /// File listing check names (one per line) whose failure is a
        /// documented discrepancy; replaces the built-in list.
        #[arg(long)]
        expectations: Option<PathBuf>,
    },
    /// Integrate a family's closed form with the explicit scheme.
    Simulate {
        #[arg(value_parser = family_id)]
        family: FamilyId,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        #[arg(long, allow_negative_numbers = true)]
        h: Option<f64>,
        /// Family parameter, e.g. --param c3=1 (repeatable).
        #[arg(long = "param", value_parser = param)]
        params: Vec<(String, f64)>,
        /// Nodes per side.
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Time step (0.9 of the stability bound when omitted).
        #[arg(long)]
        dt: Option<f64>,
        /// Repeat with dt/2 and dt/4 and report the error ratios.
        #[arg(long)]
        dt_sweep: bool,
        /// Directory for initial.csv, final.csv and exact.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the data behind a figure as CSV panels.
    Export {
        #[arg(value_enum, ignore_case = true)]
        figure: export::Figure,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn classify_cmd(alpha: &[Rational], theta: &Rational, replay: bool, format: Format, out: &mut dyn Write) -> Result<bool, Failure> {
    let coords: [Rational; 5] = alpha.to_vec().try_into().map_err(|_| Failure::Usage("need five coefficients".into()))?;
    let a = AlgebraElement::from_rationals(&coords);
    let c = classify(&a, theta)?;
    let mut r = Report::new("classify");
    let eps: Vec<String> = c.eps.iter().map(|e| e.to_string()).collect();
    let rep = combo(&c.representative.alpha);
    let detail = format!("case {}, representative {rep}, scale {}, gamma {}, eps = [{}]", c.case, c.scale, c.gamma, eps.join(", "));
    let listed = if c.is_listed() { Verdict::Pass } else { Verdict::Fail };
    r.push("representative", listed, detail, "optimal system theorem");
    if replay {
        let got = c.replay(&a);
        let v = if c.verify(&a) { Verdict::Pass } else { Verdict::Fail };
        r.push("adjoint matrix replay", v, format!("scale * alpha * A(eps) = {}", combo(&got)), "general adjoint transformation matrix");
    }
    if format == Format::Text {
        writeln!(out, "case {}: {rep}", c.case)?;
        writeln!(out, "scale {}  gamma {}", c.scale, c.gamma)?;
        for (k, e) in eps.iter().enumerate() {
            writeln!(out, "eps{} = {e}", k + 1)?;
        }
        if replay {
            writeln!(out, "replay: {} ({})", r.checks[1].verdict, r.checks[1].detail)?;
        }
    } else {
        render(&[r.clone()], format, out)?;
    }
    Ok(r.ok())
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<bool, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Tables { which, check } => tables::cmd_tables(which, check, format, out),
        Command::Classify { a1, a2, a3, a4, a5, theta, verify } => classify_cmd(&[a1, a2, a3, a4, a5], &theta, verify, format, out),
        Command::Verify { scope, h, theta, round_trips, expectations } => {
            let expected: Vec<String> = match expectations {
                Some(p) => std::fs::read_to_string(p)?.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect(),
                None => verify::EXPECTED.iter().map(|s| s.to_string()).collect(),
            };
            let s = verify::Settings { h, theta, seed: cli.seed, round_trips };
            let reports = verify::run(scope, &s, &expected)?;
            render(&reports, format, out)?;
            Ok(reports.iter().all(Report::ok))
        }
        Command::Simulate { family, theta, h, params, n, steps, dt, dt_sweep, out: dir } => {
            let a = simulate::SimArgs { family, theta, h, params, n, steps, dt, dt_sweep, out: dir };
            let r = simulate::cmd_simulate(&a)?;
            render(&[r.clone()], format, out)?;
            Ok(r.ok())
        }
        Command::Export { figure, out: dir } => {
            let r = export::cmd_export(figure, &dir)?;
            render(&[r.clone()], format, out)?;
            Ok(r.ok())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
