//! Command-line front end for `gind-core`.
//!
//! [`run`] parses an argument list, dispatches one subcommand and returns the
//! exit code together with the rendered report, so the binary and the tests
//! share one code path.

mod commands;
mod report;
pub mod verify;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::Report;

pub const GRAMMAR: &str = "\
norm specs:
  l1 | l2 | linf | lp:P          lp norm, P >= 1 (lp:inf allowed)
  scale:C*SPEC                   x -> SPEC(C x), C a nonzero real
  lin:PATH*SPEC                  x -> SPEC(K x), K read from the JSON matrix at PATH
matrix files:
  {\"rows\": R, \"cols\": C, \"data\": [[e, ...], ...]} with e a number or [re, im]
exit codes:
  0 success (a negative verdict is still success), 1 failed check, 2 input error";

#[derive(Debug, Parser)]
#[command(name = "gind", version, about = "Generalized induced matrix norms", after_help = GRAMMAR)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// RNG seed; every report records it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the headline tolerance of theorem checks.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct Pair {
    /// Domain norm spec.
    #[arg(long)]
    pub from: String,
    /// Codomain norm spec.
    #[arg(long)]
    pub to: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a vector norm.
    Vecnorm {
        #[arg(long)]
        norm: String,
        /// JSON vector, inline or a file path.
        #[arg(long)]
        vector: String,
        #[command(flatten)]
        common: Common,
    },
    /// Dual norm and a dual vector.
    Dual {
        #[arg(long)]
        norm: String,
        #[arg(long)]
        vector: String,
        #[command(flatten)]
        common: Common,
    },
    /// Certified bounds on max{‖Ax‖_to : ‖x‖_from = 1}.
    Gind {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        pair: Pair,
        /// Maximize over real vectors only.
        #[arg(long)]
        real: bool,
        /// Skip exact formulas.
        #[arg(long)]
        generic: bool,
        #[command(flatten)]
        common: Common,
    },
    /// max ‖x‖_from / ‖x‖_to.
    Ratio {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Is the g-ind norm submultiplicative?
    AlgebraCheck {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        n: usize,
        /// Submultiplicativity samples for a positive verdict.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest scale making the g-ind norm submultiplicative.
    MinScale {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Do (from, to) and (from2, to2) induce proportional norms?
    Congruent {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        from2: String,
        #[arg(long)]
        to2: String,
        #[arg(long)]
        n: usize,
        /// Random matrices used to confirm a congruence factor.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Sharp constant for ‖A‖_{from,to} / ‖A‖_{from2,to2} and its witness.
    Extremal {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        from2: String,
        #[arg(long)]
        to2: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Sample ‖UAV‖ against ‖A‖ for unitaries U, V.
    UnitaryProbe {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compare ‖A‖ under K-, L-transformed norms with ‖LAK⁻¹‖ under the bases.
    TransformedCheck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        l: PathBuf,
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        common: Common,
    },
    /// Recover a vector-norm pair from an algebra norm on matrices.
    Recover {
        /// S, C, R or sigma; or give --from/--to for a g-ind oracle.
        #[arg(long)]
        oracle: Option<String>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Sampled lower bound on max ‖AB‖/(‖A‖‖B‖).
    Defect {
        /// C, R, S, sigma or m; or give --from/--to for a g-ind norm.
        #[arg(long)]
        norm: Option<String>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run every theorem check over a fixed family of norms.
    VerifyAll {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Vecnorm { common, .. }
            | Command::Dual { common, .. }
            | Command::Gind { common, .. }
            | Command::Ratio { common, .. }
            | Command::AlgebraCheck { common, .. }
            | Command::MinScale { common, .. }
            | Command::Congruent { common, .. }
            | Command::Extremal { common, .. }
            | Command::UnitaryProbe { common, .. }
            | Command::TransformedCheck { common, .. }
            | Command::Recover { common, .. }
            | Command::Defect { common, .. }
            | Command::VerifyAll { common, .. } => common,
        }
    }
}

/// Exit code plus what goes to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Core(gind_core::Error),
    Input(String),
    Io(String),
}

impl From<gind_core::Error> for CliError {
    fn from(e: gind_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{}: {e}", e.name()),
            CliError::Input(msg) => write!(f, "InvalidInput: {msg}"),
            CliError::Io(msg) => write!(f, "IoError: {msg}"),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return if code == EXIT_OK {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("{rendered}\n{GRAMMAR}\n"),
                }
            };
        }
    };
    let started = Instant::now();
    let common = cli.command.common().clone();
    let result = commands::dispatch(&cli.command);
    let (mut report, passed) = match result {
        Ok(pair) => pair,
        Err(e) => {
            let usage = matches!(
                &e,
                CliError::Input(_)
                    | CliError::Core(
                        gind_core::Error::ParseError { .. } | gind_core::Error::InvalidExponent(_)
                    )
            );
            let mut stderr = format!("error: {e}\n");
            if usage {
                stderr.push_str(GRAMMAR);
                stderr.push('\n');
            }
            return Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr,
            };
        }
    };
    report.runtime_ms = started.elapsed().as_millis() as u64;
    let rendered = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let code = if passed { EXIT_OK } else { EXIT_CHECK_FAILED };
    match &common.out {
        Some(path) => match std::fs::write(path, &rendered) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: {}\n", CliError::Io(format!("{}: {e}", path.display()))),
            },
        },
        None => Outcome {
            code,
            stdout: rendered,
            stderr: String::new(),
        },
    }
}
