//! `quotvol` command-line driver: reads a versioned JSON job (stdin or
//! `--file`), applies flag overrides, runs it and prints JSON, LaTeX or plain
//! text. Exit codes: 0 success, 2 input error, 3 computation error.

pub mod compute;
pub mod error;
pub mod job;
pub mod output;
pub mod render;

use std::ffi::OsString;
use std::io;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;

use crate::compute::{run_job, TimingDoc};
use crate::error::CliError;
use crate::job::{Command, Format, Overrides, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "quotvol",
    version,
    about = "Exact volumes of Quot spaces on Riemann surfaces"
)]
pub struct Cli {
    /// Job to run; defaults to the "command" field of the input document.
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Read the JSON job from this file instead of standard input.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub g: Option<u32>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Splitting type, comma separated, e.g. `--l 1,-1`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub l: Option<Vec<i64>>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Evaluate the volume at this value of 𝔱 ("num/den").
    #[arg(long, allow_hyphen_values = true)]
    pub ttilde: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Add wall-time metadata; output is then no longer reproducible.
    #[arg(long)]
    pub timing: bool,
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides {
            command: self.command,
            suite: self.suite,
            g: self.g,
            r: self.r,
            l: self.l.clone(),
            d: self.d,
            n: self.n,
            ttilde: self.ttilde.clone(),
            format: self.format,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (including the program name). `stdin` is only
/// consulted when no `--file` is given; it returns `None` when standard input
/// is a terminal.
pub fn run<I, T>(args: I, stdin: impl FnOnce() -> io::Result<Option<String>>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("quotvol: {e}\n"),
        },
    }
}

fn execute(
    cli: &Cli,
    stdin: impl FnOnce() -> io::Result<Option<String>>,
) -> Result<String, CliError> {
    let text =
        match &cli.file {
            Some(path) => Some(std::fs::read_to_string(path).map_err(|e| {
                CliError::input("/", format!("cannot read {}: {e}", path.display()))
            })?),
            None => stdin()?,
        };
    let spec = job::load(text.as_deref(), &cli.overrides())?;
    let start = Instant::now();
    let mut doc = run_job(&spec)?;
    if cli.timing {
        doc.timing = Some(TimingDoc {
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(output::render(&doc, spec.format()))
}
