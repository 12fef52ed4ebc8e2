//! `prolongkit`: prolongations, category operations and verification
//! suites for differential modules over Q(x, t).
//!
//! Every run writes one JSON report to stdout and a one-line summary to
//! stderr. Exit status: 0 pass, 1 a check failed, 2 bad input or usage.

mod commands;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prolongkit::random::DEFAULT_SEED;
use serde_json::{json, Value};

use commands::{BinaryOp, VerifyInput};
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "prolongkit", version, about = "Exact prolongation calculus over Q(x, t)")]
struct Cli {
    /// Add wall-clock time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prolong a module along d/dt.
    Prolong {
        file: PathBuf,
        #[arg(short = 'i', default_value_t = 1)]
        i: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Binomial)]
        kind: KindArg,
    },
    /// Check a fundamental solution matrix of the i-th prolongation.
    Verify {
        /// Module file; required with --solution.
        file: Option<PathBuf>,
        #[arg(short = 'i', default_value_t = 0)]
        i: usize,
        #[arg(long, value_enum)]
        example: Option<Example>,
        /// Solution document with entries in x, t, theta (= x^t), logx.
        #[arg(long)]
        solution: Option<PathBuf>,
        /// Build the prolonged solution without binomial weights.
        #[arg(long)]
        strip_binomials: bool,
    },
    /// Run a property suite.
    Check(CheckArgs),
    /// Tensor product of two modules.
    Tensor { a: PathBuf, b: PathBuf },
    /// Dual module.
    Dual { a: PathBuf },
    /// Direct sum of two modules.
    Dsum { a: PathBuf, b: PathBuf },
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub name: CheckName,
    /// Dimension of random modules.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Highest prolongation order (conjugation).
    #[arg(short = 'i', long = "i", default_value_t = 3)]
    pub i: usize,
    #[arg(long, env = "PROLONGKIT_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random modules.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Run on this module instead of random ones.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Group for the hopf check; both when omitted.
    #[arg(long, value_enum)]
    pub group: Option<GroupArg>,
    /// Truncation order for the hopf check.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=12))]
    pub order: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Binomial,
    Lemma,
    Iterated,
}

impl KindArg {
    fn name(self) -> &'static str {
        match self {
            KindArg::Binomial => "binomial",
            KindArg::Lemma => "lemma",
            KindArg::Iterated => "iterated",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// d/dx y = (t/x) y with solution x^t.
    Xt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Conjugation,
    Embedding,
    Exactness,
    ProductRule,
    DualSwap,
    Hopf,
}

impl CheckName {
    fn name(self) -> &'static str {
        match self {
            CheckName::Conjugation => "conjugation",
            CheckName::Embedding => "embedding",
            CheckName::Exactness => "exactness",
            CheckName::ProductRule => "product-rule",
            CheckName::DualSwap => "dual-swap",
            CheckName::Hopf => "hopf",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Ga,
    Gm,
}

/// Name and raw arguments, echoed in error reports.
fn describe(c: &Command) -> (&'static str, Value) {
    match c {
        Command::Prolong { file, i, kind } => (
            "prolong",
            json!({"file": file, "i": i, "kind": kind.name()}),
        ),
        Command::Verify {
            file,
            i,
            example,
            solution,
            strip_binomials,
        } => (
            "verify",
            json!({
                "file": file,
                "i": i,
                "example": example.map(|_| "xt"),
                "solution": solution,
                "strip_binomials": strip_binomials,
            }),
        ),
        Command::Check(args) => ("check", json!({"check": args.name.name(), "file": args.file})),
        Command::Tensor { a, b } => ("tensor", json!({"a": a, "b": b})),
        Command::Dual { a } => ("dual", json!({"a": a})),
        Command::Dsum { a, b } => ("dsum", json!({"a": a, "b": b})),
    }
}

fn dispatch(command: &Command) -> commands::InputResult<Report> {
    match command {
        Command::Prolong { file, i, kind } => commands::prolong_cmd(file, *i, *kind),
        Command::Verify {
            file,
            i,
            example,
            solution,
            strip_binomials,
        } => commands::verify_cmd(VerifyInput {
            file: file.as_deref(),
            order: *i,
            example: *example,
            solution: solution.as_deref(),
            strip_binomials: *strip_binomials,
        }),
        Command::Check(args) => commands::check_cmd(args, args.seed),
        Command::Tensor { a, b } => commands::binary_cmd(BinaryOp::Tensor, a, b),
        Command::Dual { a } => commands::dual_cmd(a),
        Command::Dsum { a, b } => commands::binary_cmd(BinaryOp::Dsum, a, b),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = dispatch(&cli.command).unwrap_or_else(|msg| {
        let (name, inputs) = describe(&cli.command);
        Report::error(name, inputs, msg)
    });
    if cli.timings {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    // A closed pipe on either stream is not worth a panic.
    let _ = writeln!(io::stdout(), "{text}");
    let _ = writeln!(io::stderr(), "{}", report.summary);
    ExitCode::from(report.outcome.exit_code() as u8)
}
