//! `knotcalc`: exact knot invariants from the command line.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use knotcalc::skein::{SkeinConfig, SkeinError, SkeinMemo};
use serde::Serialize;
use thiserror::Error;

use crate::input::InputArgs;

#[derive(Parser, Debug)]
#[command(name = "knotcalc", version, about = "Exact knot and link invariants")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text", env = "KNOTCALC_FORMAT")]
    format: Format,
    /// Largest diagram the skein engines will take on.
    #[arg(long, global = true, env = "KNOTCALC_MAX_CROSSINGS")]
    max_crossings: Option<usize>,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, env = "KNOTCALC_WORKERS")]
    workers: Option<usize>,
    /// Entries kept per memo table.
    #[arg(long, global = true, env = "KNOTCALC_MEMO_ENTRIES")]
    memo_entries: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of one diagram.
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated invariant names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        which: Vec<String>,
    },
    /// Recompute the 6_1 cabling chain and check every identity in it.
    #[command(name = "verify-paper")]
    VerifyChain {
        /// Expected values to check against instead of the bundled ones.
        #[arg(long)]
        expected: Option<PathBuf>,
        /// Knot table to take the diagrams from.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// The bundled knot table.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
    /// Build the framed 2-cable of a knot and check the cabling identities.
    Cable {
        #[command(flatten)]
        input: InputArgs,
        /// Target linking number of the two components.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        framing: i64,
        /// Comma-separated subset of `king,hat,jprime`, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum TableAction {
    /// Print every entry.
    List {
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Recompute every stored invariant and print the disagreements.
    Verify {
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl From<knotcalc::Error> for CliError {
    fn from(e: knotcalc::Error) -> Self {
        match e {
            knotcalc::Error::Skein(SkeinError::ResourceLimit { .. } | SkeinError::TooLarge { .. }) => {
                CliError::Resource(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SkeinError> for CliError {
    fn from(e: SkeinError) -> Self {
        knotcalc::Error::from(e).into()
    }
}

/// Exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok = 0,
    VerifyFailed = 1,
    InputError = 2,
    ResourceLimit = 3,
}

/// What a command produced: the deterministic payload, its text rendering,
/// and whether it counts as success.
pub struct Output {
    pub report: serde_json::Value,
    pub text: String,
    pub outcome: Outcome,
    /// Printed to stderr after the report, in both formats.
    pub note: Option<String>,
}

#[derive(Serialize)]
struct Diagnostics {
    elapsed_ms: u128,
    workers: usize,
    memo: MemoReport,
}

#[derive(Serialize)]
struct MemoReport {
    bracket: knotcalc::skein::MemoStats,
    lambda: knotcalc::skein::MemoStats,
    conway: knotcalc::skein::MemoStats,
}

pub struct Ctx {
    pub memo: SkeinMemo,
    pub cfg: SkeinConfig,
}

fn run(cli: &Cli, ctx: &Ctx) -> Result<Output, CliError> {
    match &cli.command {
        Command::Invariants { input, which } => commands::invariants(ctx, input, which),
        Command::VerifyChain { expected, table } => commands::verify_chain(ctx, expected.as_deref(), table.as_deref()),
        Command::Table { action } => match action {
            TableAction::List { table } => commands::table_list(table.as_deref()),
            TableAction::Verify { table } => commands::table_verify(ctx, table.as_deref()),
        },
        Command::Cable {
            input,
            framing,
            checks,
        } => commands::cable(ctx, input, *framing, checks),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = SkeinConfig::default();
    if let Some(n) = cli.max_crossings {
        cfg.max_crossings = n;
    }
    if let Some(n) = cli.memo_entries {
        cfg.memo_entries = n;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Outcome::InputError as u8);
        }
    };
    let ctx = Ctx {
        memo: SkeinMemo::new(),
        cfg,
    };
    let start = Instant::now();
    let result = pool.install(|| run(&cli, &ctx));
    let diagnostics = Diagnostics {
        elapsed_ms: start.elapsed().as_millis(),
        workers: pool.current_num_threads(),
        memo: MemoReport {
            bracket: ctx.memo.bracket_stats(),
            lambda: ctx.memo.lambda_stats(),
            conway: ctx.memo.conway_stats(),
        },
    };
    let out = match result {
        Ok(out) => out,
        Err(e) => {
            let code = match e {
                CliError::Input(_) => Outcome::InputError,
                CliError::Resource(_) => Outcome::ResourceLimit,
            };
            eprintln!("error: {e}");
            return ExitCode::from(code as u8);
        }
    };
    match cli.format {
        Format::Json => {
            let doc = serde_json::json!({ "report": out.report, "diagnostics": diagnostics });
            println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
        }
        Format::Text => {
            print!("{}", out.text);
            eprintln!(
                "# {} ms on {} workers; bracket memo {} hits / {} misses",
                diagnostics.elapsed_ms, diagnostics.workers, diagnostics.memo.bracket.hits, diagnostics.memo.bracket.misses
            );
        }
    }
    if let Some(n) = &out.note {
        eprintln!("{n}");
    }
    ExitCode::from(out.outcome as u8)
}
