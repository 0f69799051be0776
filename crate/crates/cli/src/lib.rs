// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Command-line front end for `tokswap-core`.
//!
//! Exit codes: 0 success, 1 infeasible or rejected, 2 input error,
//! 3 search budget exceeded.

mod commands;
pub mod format;
mod gen;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use tokswap_core::Error;

pub use format::{InstanceFile, ReductionMeta, SolutionFile};

#[derive(Debug, Parser)]
#[command(name = "tokswap", version, about = "Token swapping and routing via matchings")]
pub struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Let the exhaustive oracle expand frontiers in parallel.
    #[arg(long, global = true)]
    pub parallel: bool,
    /// Maximum number of states the exhaustive oracle may store.
    #[arg(long, global = true, value_name = "STATES")]
    pub node_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and write the solution.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two parallel steps suffice.
    Decide2 {
        #[arg(short, long)]
        input: PathBuf,
        /// Write the witness here when one exists.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay a solution against an instance.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
    },
    /// Generate an instance from a hardness construction.
    Reduce {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Step budget for `--to rvm` (at least 3).
        #[arg(long)]
        budget: Option<usize>,
        /// Also write `OUTPUT.meta` for `map-solution`.
        #[arg(long)]
        emit_map: bool,
    },
    /// Turn a source witness into a solution of a generated instance.
    MapSolution {
        #[arg(long)]
        reduction: PathBuf,
        /// Triple numbers (3DM) or signed literals (SAT), whitespace separated.
        #[arg(long)]
        witness: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count ordered two-step solutions by exhaustive enumeration.
    Count2 {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Generate a random instance on a graph family.
    Gen {
        #[arg(long, value_enum)]
        family: GenFamily,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Ts)]
        kind: Kind,
        /// Edge probability for `--family random`.
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print the graph in DOT format instead of an instance file.
        #[arg(long)]
        dot: bool,
    },
    /// Time a solver over random instances of growing size.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Oracle,
    Lollipop,
    Starpath,
    PathOe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    #[value(name = "3dm")]
    ThreeDm,
    #[value(name = "3sat")]
    ThreeSat,
    Sepsat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Ts,
    Rvm,
    Rvm3,
    C2rvm,
    C3rvm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    Path,
    Cycle,
    Lollipop,
    Starpath,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Ts,
    Rvm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lollipop,
    Starpath,
    PathOe,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn rejected(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => 3,
            Error::Unreachable | Error::Unsatisfied { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::input(format!("malformed JSON: {e}"))
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::json!({ "error": f.message, "exit_code": f.code }));
            } else {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}
