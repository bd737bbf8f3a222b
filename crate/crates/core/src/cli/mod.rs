//! The `cubical` command line.
//!
//! Exit codes: 0 on success, 1 when the run completed with a negative
//! finding (not special, obstruction, ...), 2 on bad input.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const CLI_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "cubical", version, about = "Special square complexes, labelings, path languages and cubical portraits")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Dot,
}

#[derive(Debug, Args)]
pub struct ComplexArgs {
    /// Complex file (JSON).
    #[arg(long)]
    pub complex: PathBuf,
    /// Comma-separated symbol order replacing the canonical one.
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a complex file.
    Validate(ComplexArgs),
    /// Build the Salvetti complex of a defining graph.
    Salvetti {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Check the four specialness pathologies.
    Special(ComplexArgs),
    /// Construct the canonical labeling, or verify a candidate one.
    Label {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        labeling: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The edge-path automaton.
    AutomatonEdge {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The reduced-path automaton.
    AutomatonRed {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Accepted words by length.
    Enumerate {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        depth: usize,
        /// Enumerate all edge paths instead of reduced ones.
        #[arg(long)]
        edge: bool,
    },
    /// Reduce a word by deleting innermost cancellations.
    Reduce {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        word: String,
    },
    /// Normal form of a reduced word.
    Nf {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        word: String,
    },
    /// Endpoint of a word in the universal cover.
    Endpoint {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        word: String,
    },
    /// Whether two words end at the same vertex.
    SameEndpoint {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        other: String,
    },
    /// Type of the endpoint of `w` relative to the basepoint and `v`.
    Type {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Vertices of a ball around the basepoint.
    Ball {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        depth: usize,
    },
    /// Check the cubical-portrait conditions.
    PortraitValidate {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        portrait: PathBuf,
        /// Target complex, if different from the source.
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        depth: usize,
        /// Check only the reduced-tree conditions.
        #[arg(long)]
        reduced: bool,
    },
    /// Complete a reduced-tree portrait to the edge tree.
    PortraitExtend {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        portrait: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        depth: usize,
    },
    /// Solve for a portrait extending a seed.
    Solve {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        depth: usize,
        /// `canonical` or `random:<seed>`.
        #[arg(long, default_value = "canonical")]
        search: String,
    },
    /// Candidate local actions at a reduced word.
    Taus {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        v: String,
    },
    /// Synthesize a ball-fixing generator with a prescribed local action at `v`.
    MakeA {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        v: String,
        /// Comma-separated `s=t` pairs; unspecified labels are fixed.
        #[arg(long, default_value = "")]
        tau: String,
        #[arg(long)]
        depth: usize,
    },
    /// One peeling step for a portrait fixing a ball.
    Peel {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        portrait: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        depth: usize,
    },
    /// Deck-group generators as loop words.
    Generators(ComplexArgs),
    /// The generating-set manifest.
    A0 {
        #[command(flatten)]
        c: ComplexArgs,
        #[arg(long)]
        depth: usize,
    },
}

/// Outcome of one subcommand.
#[derive(Debug, Clone)]
pub struct Report {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn ok(text: String, json: Value) -> Self {
        Report { code: 0, text, json }
    }

    pub fn finding(text: String, json: Value) -> Self {
        Report { code: 1, text, json }
    }
}

/// Bad input; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut body = json!({ "schema_version": CLI_SCHEMA_VERSION, "exit": report.code });
                body["result"] = report.json;
                format!("{}\n", serde_json::to_string_pretty(&body).expect("json"))
            } else {
                report.text
            };
            Outcome { code: report.code, stdout, stderr: String::new() }
        }
        Err(InputError(message)) => {
            let stderr = if cli.json {
                let body = json!({ "schema_version": CLI_SCHEMA_VERSION, "exit": 2, "error": message });
                format!("{}\n", serde_json::to_string_pretty(&body).expect("json"))
            } else {
                format!("error: {message}\n")
            };
            Outcome { code: 2, stdout: String::new(), stderr }
        }
    }
}
