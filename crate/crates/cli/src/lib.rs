//! Front end for `relhom-core`: argument parsing, input documents and reports.

pub mod codec;
pub mod commands;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use codec::{CliError, CliResult, InputDocument};

#[derive(Debug, Parser)]
#[command(name = "relhom", version, about = "Relative homological checks over finite pointed categories")]
pub struct Cli {
    /// Worker threads for exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Emit a JSON report on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Finab,
    Fingrp,
    Pset,
    Tablecat,
}

impl Backend {
    pub fn tag(self) -> &'static str {
        match self {
            Backend::Finab => "finab",
            Backend::Fingrp => "fingrp",
            Backend::Pset => "pset",
            Backend::Tablecat => "tablecat",
        }
    }

    pub fn parse(tag: &str) -> CliResult<Self> {
        <Backend as ValueEnum>::from_str(tag, false)
            .map_err(|_| CliError::input(format!("backend: unknown backend `{tag}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Holds,
    Fails,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Homological,
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridDirection {
    FirstFromLast,
    LastFromFirst,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corpus {
    Tablecat,
}

#[derive(Debug, Clone, Args)]
pub struct Target {
    #[arg(long, value_enum)]
    pub backend: Backend,
    /// Class selector: iso, split_epi, regular_epi, normal_epi, all, or a
    /// backend-specific one (coprime_kernel:P, forgetful_split_preimage,
    /// explicit:ARROW,...).
    #[arg(long)]
    pub class: String,
    /// Bound on object size (ignored for table categories).
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    /// Category-table document, required for the tablecat backend.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Directory receiving one document per witness found.
    #[arg(long)]
    pub witness_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check axioms exhaustively up to the size bound.
    Check {
        #[command(flatten)]
        target: Target,
        /// Comma-separated axiom ids, or `all`.
        #[arg(long)]
        axioms: String,
        #[arg(long, value_enum, default_value = "holds")]
        expect: Expect,
    },
    /// Print the least counterexample to one axiom, if any.
    Search {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        axiom: String,
    },
    /// Build the connecting morphism of a snake diagram.
    Snake {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "homological")]
        mode: Mode,
        /// Overrides the document's class.
        #[arg(long)]
        class: Option<String>,
    },
    /// Check the row implication of a 3×3 grid.
    #[command(name = "3x3")]
    Grid {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        direction: GridDirection,
        #[arg(long)]
        class: Option<String>,
    },
    /// Per-node E-exactness of a sequence.
    Exact {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        class: Option<String>,
    },
    /// Check the implications between the axioms over a category corpus.
    VerifyTheorems {
        #[arg(long, value_enum)]
        corpus: Corpus,
        #[arg(long, default_value_t = 6)]
        max_morphisms: usize,
    },
    /// Re-evaluate a witness document.
    Recheck {
        #[arg(long)]
        input: PathBuf,
    },
}

/// What a command prints and how it exits.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub code: i32,
}

/// Runs the parsed command line; returns the process exit code.
pub fn run(cli: Cli, argv: &[String]) -> i32 {
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global() {
        eprintln!("warning: worker pool already initialised: {e}");
    }
    let start = std::time::Instant::now();
    match commands::execute(&cli.command) {
        Ok(mut out) => {
            if cli.json {
                let report = out.json.as_object_mut().expect("reports are objects");
                report.insert("command".into(), argv.iter().skip(1).cloned().collect::<Vec<_>>().into());
                report.insert("engine-version".into(), env!("CARGO_PKG_VERSION").into());
                if cli.timing {
                    report.insert("wall-time-ms".into(), (start.elapsed().as_millis() as u64).into());
                }
                println!("{}", serde_json::to_string_pretty(&out.json).expect("reports serialize"));
            } else {
                print!("{}", out.text);
                if cli.timing {
                    println!("wall time: {} ms", start.elapsed().as_millis());
                }
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
