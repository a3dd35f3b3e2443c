//! The `rmoore` command line, as a library so it can be driven in-process.
//!
//! ```text
//! rmoore run      <spec> <target> <word> [--trace] [--factor 2/1]
//! rmoore check    <spec> <target> [--max-len 8]
//! rmoore minimize <spec> <target> [-o out.json]
//! rmoore monoid   <spec> <target> [-o out.txt]
//! rmoore dot      <spec> <target> [-o out.dot]
//! rmoore verify   <spec>
//! rmoore fmt      <spec> [--check | --write]
//! ```

mod commands;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_check, cmd_dot, cmd_minimize, cmd_monoid, cmd_run, monoid_cap, MONOID_CAP_VAR};
pub use report::{RunReport, TraceRow};

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const UNKNOWN_TARGET: i32 = 2;
    pub const BAD_WORD: i32 = 3;
    pub const DIVERGENCE: i32 = 4;
    pub const INFINITE: i32 = 5;
    pub const MONOID_CAP: i32 = 6;
    pub const BUDGET: i32 = 7;
    pub const USAGE: i32 = 64;
}

/// A command's failure: the exit status and the message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

/// What a finished invocation printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "rmoore", version, about = "Evaluate, check and analyse Moore machine products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Target {
    /// Spec file (JSON)
    spec: PathBuf,
    /// Name of a machine or product in the spec
    target: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a target on a word
    Run {
        #[command(flatten)]
        target: Target,
        /// Whitespace-separated symbols; empty or `Λ` for the empty word
        word: String,
        /// Print one row per input letter with every factor's input word
        #[arg(long)]
        trace: bool,
        /// Follow one factor through nested products, e.g. `2/1`
        #[arg(long, value_name = "PATH")]
        factor: Option<String>,
    },
    /// Compare the recursion against the expanded product on all short words
    Check {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Give up after this many words
        #[arg(long, default_value_t = rmoore::product::DEFAULT_WORD_BUDGET)]
        budget: u64,
    },
    /// Minimize a finite target
    Minimize {
        #[command(flatten)]
        target: Target,
        /// Write the minimal machine as a spec document
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Transition monoid of the minimal machine
    Monoid {
        #[command(flatten)]
        target: Target,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of the minimal machine
    Dot {
        #[command(flatten)]
        target: Target,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every run directive in a spec
    Verify { spec: PathBuf },
    /// Print a spec in canonical form
    Fmt {
        spec: PathBuf,
        /// Exit 1 if the file is not canonical
        #[arg(long, conflicts_with = "write")]
        check: bool,
        /// Rewrite the file in place
        #[arg(long)]
        write: bool,
    },
}

/// Runs one invocation; `args` includes the program name.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: exit::OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: exit::USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let result = match cli.command {
        Command::Run {
            target,
            word,
            trace,
            factor,
        } => commands::run_text(&target.spec, &target.target, &word, trace, factor.as_deref()),
        Command::Check {
            target,
            max_len,
            budget,
        } => cmd_check(&target.spec, &target.target, max_len, budget),
        Command::Minimize { target, out } => cmd_minimize(&target.spec, &target.target, out.as_deref()),
        Command::Monoid { target, out } => cmd_monoid(&target.spec, &target.target, out.as_deref()),
        Command::Dot { target, out } => cmd_dot(&target.spec, &target.target, out.as_deref()),
        Command::Verify { spec } => commands::cmd_verify(&spec),
        Command::Fmt { spec, check, write } => commands::cmd_fmt(&spec, check, write),
    };
    match result {
        Ok(stdout) => Outcome {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        },
        Err((stdout, failure)) => Outcome {
            code: failure.code,
            stdout,
            stderr: format!("error: {}\n", failure.message),
        },
    }
}
