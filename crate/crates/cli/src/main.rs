//! `matroid-depth`: depth measures, decompositions and verification suites for small matroids.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a cap was exceeded.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matroid_depth::{caps, set_caps, Error};

pub const CAPS_ENV: &str = "MATROID_DEPTH_CAPS";

#[derive(Parser, Debug)]
#[command(name = "matroid-depth", version, about = "Depth parameters of small matroids", long_about = None)]
pub struct Cli {
    /// Lower a cap, e.g. `--caps cstar_n=8`. Repeatable; applied after MATROID_DEPTH_CAPS.
    #[arg(long = "caps", value_name = "K=V", global = true)]
    pub caps: Vec<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; outputs do not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
pub struct InputArg {
    /// Matroid JSON, matrix text (`gfP m n`) or graph text (`graph V E`); `-` reads stdin.
    #[arg(long)]
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute depth measures with replayable witnesses.
    Depth {
        #[command(flatten)]
        input: InputArg,
        /// Measure name (C, D, CD, CSTAR, DSTAR, CSTAR_D, C_DSTAR, CSTAR_DSTAR). Default: all.
        #[arg(long = "measure")]
        measures: Vec<String>,
        /// Also report field-level values for matrix inputs.
        #[arg(long)]
        matrix_level: bool,
        /// Omit witnesses from the JSON output.
        #[arg(long)]
        no_witness: bool,
    },
    /// Build an optimal decomposition and verify it.
    Decompose {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum)]
        kind: DecompKind,
    },
    /// Re-verify a decomposition file written by `decompose`.
    CheckDecomp {
        /// Decomposition JSON; `-` reads stdin.
        #[arg(long)]
        decomposition: String,
    },
    /// Minimum primal, dual and incidence tree-depth under row operations.
    SparsifyTd {
        #[command(flatten)]
        input: InputArg,
    },
    /// Run theorem checks over exhaustive families.
    Verify {
        /// Check id, or `all`. Repeatable.
        #[arg(long = "check", default_value = "all")]
        checks: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// List the registered checks and exit.
        #[arg(long)]
        list: bool,
    },
    /// Emit a fixture as matroid JSON or as matrix/graph text.
    Gen {
        /// fano, uniform, free, loops, cycle, fat_cycle, d_graph, k3n, complete, path.
        name: String,
        /// Fixture parameter, e.g. `--param n=4`. Repeatable.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        /// Emit matrix or graph text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Show a depth witness as a tree, with the restriction-closure trace for CSTAR.
    Explain {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value = "CSTAR")]
        measure: String,
    },
    /// Probe open questions on small instances; reports outcomes without asserting them.
    Explore {
        #[command(subcommand)]
        probe: Probe,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompKind {
    BranchDepth,
    BranchWidth,
    TreeDepth,
    TreeWidth,
    Cstar,
}

#[derive(Subcommand, Debug)]
pub enum Probe {
    /// Field-level against matroid-level c*d*-depth for all small matrices.
    Csdsd {
        #[arg(long, default_value = "gf2")]
        field: String,
        #[arg(long, default_value_t = 2)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
    },
    /// Least cd-depth over small extensions against c*d-depth.
    Closure {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        budget: usize,
    },
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Io(String),
    /// The report was written but some values hit a cap.
    Capped(String),
    /// The report was written but some check failed.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Checks => 1,
            Failure::Lib(e) if e.is_cap() => 3,
            Failure::Capped(_) => 3,
            Failure::Lib(_) | Failure::Io(_) => 2,
        }
    }
}

fn configure(cli: &Cli) -> Result<(), Failure> {
    let mut c = caps();
    if let Ok(env) = std::env::var(CAPS_ENV) {
        c = c.with_overrides(&env)?;
    }
    for o in &cli.caps {
        c = c.with_overrides(o)?;
    }
    set_caps(c);
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    configure(cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Failure::Lib(Error::input("--jobs must be at least 1")));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Failure::Io(e.to_string()))?;
    pool.install(|| commands::dispatch(cli))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("error: {e}"),
                Failure::Capped(e) => eprintln!("cap exceeded: {e}"),
                Failure::Checks => eprintln!("some checks failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
