//! The command layer behind the `affschur` binary.
//!
//! Every command prints one JSON document (to stdout or `--out`). Matrices and
//! permutations are given as JSON, either inline or as a path to a file, in
//! the formats used by their `serde` implementations:
//! `{"n":2,"entries":[[1,2,1],[2,1,1]]}` and `{"r":3,"window":[2,1,3]}`.
//!
//! Exit status: `0` on success, `1` when a verification report has
//! violations, and a distinct code per error kind otherwise (see
//! [`CliError::exit_code`]).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use crate::affweyl::{AffError, AffPerm};
use crate::hall::{HallError, SegmentRep};
use crate::hecke::{KlCache, KlCacheError};
use crate::matrix::AffMatrix;
use crate::schur::{SchurElt, SchurError};
use crate::transfer::{f_constants, g_table, h_constants, TransferError};
use crate::verify::{self, Params, VerifyError};
use crate::workspace::{Caps, Workspace};

#[derive(Debug, Parser)]
#[command(
    name = "affschur",
    version,
    about = "Canonical bases and structure constants of affine quantum Schur algebras"
)]
pub struct Cli {
    /// KL polynomial cache file, read if present and written back afterwards.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest length of a longest double coset element.
    #[arg(long, global = true)]
    pub cap_length: Option<usize>,
    /// Largest total dimension of a module in Hall counts.
    #[arg(long, global = true)]
    pub cap_dim: Option<usize>,
    /// Largest level r of a Schur algebra.
    #[arg(long, global = true)]
    pub cap_r: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    /// The basis `[A]`.
    Standard,
    /// The canonical basis `θ_{A,r}`.
    Canonical,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kazhdan–Lusztig polynomial P_{y,w}.
    Kl {
        #[arg(long)]
        y: String,
        #[arg(long)]
        w: String,
    },
    /// Canonical basis element θ_{A,r} in the [B] basis.
    Theta {
        #[arg(long)]
        a: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Product of two basis elements, expanded in the same basis.
    Mult {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value = "standard")]
        basis: Basis,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Structure constants g_{A,B,C,r} of the canonical basis.
    GTable {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Structure constants f_{A,B,C} of the positive part.
    FTable {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Structure constants h_{A,B,C} of the modified algebra.
    HTable {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Hall polynomial φ^C_{A,B}.
    Hall {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Runs a named property check.
    Verify {
        /// One of the names listed by `affschur verify --help`.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::CHECKS))]
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("too small: {0}")]
    TooSmall(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "invalid-input",
            CliError::TooSmall(_) => "too-small",
            CliError::Cap(_) => "cap-exceeded",
            CliError::Io(_) => "io",
            CliError::Compute(_) => "computation",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::TooSmall(_) => 3,
            CliError::Cap(_) => 4,
            CliError::Io(_) => 5,
            CliError::Compute(_) => 6,
        }
    }
}

impl From<AffError> for CliError {
    fn from(e: AffError) -> Self {
        match e {
            AffError::RankTooSmall(_) => CliError::TooSmall(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SchurError> for CliError {
    fn from(e: SchurError) -> Self {
        match e {
            SchurError::TooSmall { .. } => CliError::TooSmall(e.to_string()),
            SchurError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            SchurError::Aff(a) => a.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<TransferError> for CliError {
    fn from(e: TransferError) -> Self {
        match e {
            TransferError::Schur(s) => s.into(),
            TransferError::Matrix(_)
            | TransferError::NotPositive(_)
            | TransferError::NotStripped(_) => CliError::Input(e.to_string()),
            TransferError::NoStabilization { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<HallError> for CliError {
    fn from(e: HallError) -> Self {
        match e {
            HallError::TooLarge { .. } => CliError::Cap(e.to_string()),
            HallError::Schur(s) => s.into(),
            HallError::Field(_) | HallError::Interpolation(_) => CliError::Compute(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Schur(s) => s.into(),
            VerifyError::Transfer(t) => t.into(),
            VerifyError::Hall(h) => h.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<KlCacheError> for CliError {
    fn from(e: KlCacheError) -> Self {
        CliError::Io(e.to_string())
    }
}

/// The JSON document of a command and whether it reports success.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub ok: bool,
}

/// Parses a JSON value given inline or as a file path.
fn read_json<T: DeserializeOwned>(what: &str, arg: &str) -> Result<T, CliError> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{what} file {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn read_matrix(what: &str, arg: &str, n: Option<usize>) -> Result<AffMatrix, CliError> {
    let a: AffMatrix = read_json(what, arg)?;
    if let Some(n) = n {
        if n < 2 {
            return Err(CliError::TooSmall(format!("n = {n}, need n >= 2")));
        }
        if a.n() != n {
            return Err(CliError::Input(format!(
                "{what} has period {}, but --n {n} was given",
                a.n()
            )));
        }
    }
    Ok(a)
}

/// `--r` if given, otherwise `σ(A)`.
fn level(a: &AffMatrix, r: Option<usize>) -> Result<usize, CliError> {
    let r = match r {
        Some(r) => r,
        None => usize::try_from(a.sigma())
            .map_err(|_| CliError::Input(format!("{a} has negative σ")))?,
    };
    if r < 2 {
        return Err(CliError::TooSmall(format!("r = {r}, need r >= 2")));
    }
    Ok(r)
}

fn workspace(cli: &Cli) -> Result<Workspace, CliError> {
    let defaults = Caps::default();
    let caps = Caps {
        max_r: cli.cap_r.unwrap_or(defaults.max_r),
        max_length: cli.cap_length.unwrap_or(defaults.max_length),
        max_dim: cli.cap_dim.unwrap_or(defaults.max_dim),
    };
    let kl = match &cli.cache {
        Some(path) if path.exists() => KlCache::load(path)?,
        _ => KlCache::new(),
    };
    Ok(Workspace::with_cache(caps, Arc::new(kl)))
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let ws = workspace(cli)?;
    let outcome = dispatch(&ws, &cli.command)?;
    if let Some(path) = &cli.cache {
        ws.kl().save(path)?;
    }
    Ok(outcome)
}

fn ok(json: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { json, ok: true })
}

fn dispatch(ws: &Workspace, cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Kl { y, w } => {
            let y: AffPerm = read_json("y", y)?;
            let w: AffPerm = read_json("w", w)?;
            if y.r() != w.r() {
                return Err(AffError::PeriodMismatch(y.r(), w.r()).into());
            }
            if w.r() < 2 {
                return Err(AffError::RankTooSmall(w.r()).into());
            }
            let p = ws.kl().kl_poly(&y, &w);
            ok(json!({ "command": "kl", "y": y, "w": w, "P": p }))
        }
        Command::Theta { a, n, r } => {
            let a = read_matrix("A", a, *n)?;
            let r = level(&a, *r)?;
            let alg = ws.algebra(a.n(), r)?;
            let theta = alg.theta(&a)?;
            ok(json!({ "command": "theta", "A": a, "r": r, "theta": *theta }))
        }
        Command::Mult { a, b, basis, n, r } => {
            let a = read_matrix("A", a, *n)?;
            let b = read_matrix("B", b, Some(a.n()))?;
            let r = level(&a, *r)?;
            match basis {
                Basis::Standard => {
                    let alg = ws.algebra(a.n(), r)?;
                    let prod = alg.mult(&SchurElt::basis(&a), &SchurElt::basis(&b))?;
                    ok(
                        json!({ "command": "mult", "basis": "standard", "A": a, "B": b, "product": prod }),
                    )
                }
                Basis::Canonical => {
                    let t = g_table(ws, &a, &b, r)?;
                    ok(
                        json!({ "command": "mult", "basis": "canonical", "A": a, "B": b, "product": t }),
                    )
                }
            }
        }
        Command::GTable { a, b, n, r } => {
            let a = read_matrix("A", a, *n)?;
            let b = read_matrix("B", b, Some(a.n()))?;
            let r = level(&a, *r)?;
            ok(serde_json::to_value(g_table(ws, &a, &b, r)?).expect("tables serialize"))
        }
        Command::FTable { a, b, n } => {
            let a = read_matrix("A", a, *n)?;
            let b = read_matrix("B", b, Some(a.n()))?;
            ok(serde_json::to_value(f_constants(ws, &a, &b)?).expect("tables serialize"))
        }
        Command::HTable { a, b, n } => {
            let a = read_matrix("A", a, *n)?;
            let b = read_matrix("B", b, Some(a.n()))?;
            ok(serde_json::to_value(h_constants(ws, &a, &b)?).expect("tables serialize"))
        }
        Command::Hall { a, b, c, n } => {
            let am = read_matrix("A", a, *n)?;
            let bm = read_matrix("B", b, Some(am.n()))?;
            let cm = read_matrix("C", c, Some(am.n()))?;
            let (ra, rb, rc) = (
                SegmentRep::from_matrix(&am)?,
                SegmentRep::from_matrix(&bm)?,
                SegmentRep::from_matrix(&cm)?,
            );
            let phi = ws.hall().poly(&ra, &rb, &rc)?;
            ok(json!({ "command": "hall", "A": am, "B": bm, "C": cm, "phi": phi }))
        }
        Command::Verify {
            name,
            n,
            r,
            big_n,
            k,
            m,
            samples,
            seed,
        } => {
            for (flag, v) in [("n", n), ("r", r)] {
                if v.is_some_and(|v| v < 2) {
                    return Err(CliError::TooSmall(format!("--{flag} must be at least 2")));
                }
            }
            let params = Params {
                n: *n,
                r: *r,
                big_n: *big_n,
                k: *k,
                m: *m,
                samples: *samples,
                seed: *seed,
            };
            let report = verify::run(ws, name, &params)?;
            let passed = report.passed;
            Ok(Outcome {
                json: serde_json::to_value(report).expect("reports serialize"),
                ok: passed,
            })
        }
    }
}

fn write_output(path: Option<&Path>, json: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(json).expect("JSON values serialize");
    match path {
        Some(p) => {
            fs::write(p, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(CliError::Io(e.to_string()))
            }
            _ => Ok(()),
        },
    }
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|o| {
        write_output(cli.out.as_deref(), &o.json)?;
        Ok(o.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let doc = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("JSON values serialize")
            );
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("affschur").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn theta_command() {
        let cli = parse(&["theta", "--a", r#"{"n":2,"entries":[[1,2,1],[2,1,1]]}"#]);
        let out = execute(&cli).unwrap();
        assert!(out.ok);
        assert_eq!(out.json["r"], 2);
        assert_eq!(out.json["theta"]["terms"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn distinct_errors() {
        let bad = parse(&["theta", "--a", r#"{"n":2,"entries":[[1,2,-1]]}"#]);
        assert_eq!(execute(&bad).unwrap_err().kind(), "invalid-input");
        let small = parse(&["theta", "--a", r#"{"n":2,"entries":[[1,2,1]]}"#]);
        assert_eq!(execute(&small).unwrap_err().kind(), "too-small");
        let big = parse(&[
            "--cap-r",
            "2",
            "theta",
            "--a",
            r#"{"n":2,"entries":[[1,1,3]]}"#,
        ]);
        assert_eq!(execute(&big).unwrap_err().kind(), "cap-exceeded");
    }

    #[test]
    fn verify_flags() {
        let cli = parse(&[
            "verify",
            "thm-4.8",
            "--k",
            "-1",
            "--samples",
            "3",
            "--N",
            "3",
        ]);
        let out = execute(&cli).unwrap();
        assert!(out.ok, "{}", out.json);
        assert_eq!(out.json["params"]["k"], json!([-1]));
        assert!(Cli::try_parse_from(["affschur", "verify", "thm-9.9"]).is_err());
    }
}
