//! Command-line front end. [`run`] parses an argument list, executes one
//! subcommand and returns the exit code with the rendered document.
//!
//! Exit codes: `0` success, `1` invalid input, `2` a verification failure.
//! The default output is JSON with keys in a fixed order; `--text` renders
//! the same document as an indented listing.

mod commands;
mod text;

use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::families::FamilyId;
use crate::tower::{DEFAULT_ITERATIONS, DEFAULT_PRECISION_BITS};

pub use commands::{expand, family, picf, pell, tower, variety};

#[derive(Parser, Debug)]
#[command(name = "picf", version, about = "Periodic integer continued fractions of square roots and tower generators")]
struct Cli {
    /// Render an indented text listing instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Worker threads for the brute-force search.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Add the wall-clock time in milliseconds to the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Regular continued fraction of sqrt(m).
    Expand { m: u64 },
    /// Every pre-period-one expansion of +-sqrt(m) with the given period.
    Picf {
        m: u64,
        #[arg(long, value_name = "L")]
        period: usize,
    },
    /// Integer points of the (1, l) variety, optionally checked by brute force.
    Variety {
        m: u64,
        l: usize,
        #[arg(long, value_name = "B")]
        brute: Option<u64>,
    },
    /// Fundamental solution of x^2 - m y^2 = +-1.
    Pell { m: u64 },
    /// Expansions, regular form and Pell data of a family member.
    #[command(allow_negative_numbers = true)]
    Family { id: FamilyId, s: i64, t: i64 },
    /// The period-3 expansion of the tower generator X_n.
    Tower {
        n: u32,
        #[arg(long, value_name = "P", default_value_t = DEFAULT_PRECISION_BITS)]
        precision: u32,
        #[arg(long, value_name = "I", default_value_t = DEFAULT_ITERATIONS)]
        iters: usize,
    },
}

#[derive(Serialize)]
struct ErrorDoc {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct Envelope {
    command: &'static str,
    inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    erratum_candidates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

struct Output {
    result: Option<Value>,
    errata: Vec<String>,
    error: Option<Error>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result types serialize to JSON")
}

fn finish<T: Serialize>(r: commands::Outcome<T>) -> Output {
    match r {
        Ok((res, errata)) => Output { result: Some(to_value(&res)), errata, error: None },
        Err(e) => Output { result: None, errata: vec![], error: Some(e) },
    }
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Expand { .. } => "expand",
            Cmd::Picf { .. } => "picf",
            Cmd::Variety { .. } => "variety",
            Cmd::Pell { .. } => "pell",
            Cmd::Family { .. } => "family",
            Cmd::Tower { .. } => "tower",
        }
    }

    fn inputs(&self) -> Value {
        match self {
            Cmd::Expand { m } | Cmd::Pell { m } => json!({ "m": m }),
            Cmd::Picf { m, period } => json!({ "m": m, "period": period }),
            Cmd::Variety { m, l, brute } => json!({ "m": m, "l": l, "brute": brute }),
            Cmd::Family { id, s, t } => json!({ "family": id.to_string(), "s": s, "t": t }),
            Cmd::Tower { n, precision, iters } => {
                json!({ "n": n, "precision_bits": precision, "iterations": iters })
            }
        }
    }

    fn execute(&self) -> Output {
        match *self {
            Cmd::Expand { m } => finish(expand(m)),
            Cmd::Picf { m, period } => finish(picf(m, period)),
            Cmd::Variety { m, l, brute } => finish(variety(m, l, brute)),
            Cmd::Pell { m } => finish(pell(m)),
            Cmd::Family { id, s, t } => finish(family(id, s, t)),
            Cmd::Tower { n, precision, iters } => match tower(n, precision, iters) {
                Ok(report) => Output {
                    result: Some(to_value(&report)),
                    errata: vec![],
                    error: commands::tower_failure(&report).map(Error::Verification),
                },
                Err(e) => Output { result: None, errata: vec![], error: Some(e) },
            },
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    if e.is_verification() {
        "verification_failure"
    } else {
        "invalid_input"
    }
}

fn render(env: &Envelope, as_text: bool) -> String {
    let mut out = if as_text {
        text::render(&to_value(env))
    } else {
        serde_json::to_string_pretty(env).expect("envelope serializes to JSON")
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return (code, e.render().to_string());
        }
    };
    let start = Instant::now();
    let output = match cli.threads {
        Some(0) => Output {
            result: None,
            errata: vec![],
            error: Some(Error::OutOfRange("--threads must be at least 1".into())),
        },
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| cli.cmd.execute()),
            Err(e) => Output { result: None, errata: vec![], error: Some(Error::OutOfRange(e.to_string())) },
        },
        None => cli.cmd.execute(),
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let code = match &output.error {
        None => 0,
        Some(e) if e.is_verification() => 2,
        Some(_) => 1,
    };
    let env = Envelope {
        command: cli.cmd.name(),
        inputs: cli.cmd.inputs(),
        result: output.result,
        erratum_candidates: output.errata,
        error: output.error.map(|e| ErrorDoc { kind: error_kind(&e), message: e.to_string() }),
        timing_ms: cli.timing.then_some((elapsed * 1e3).round() / 1e3),
    };
    (code, render(&env, cli.text))
}
