mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

/// (d,h)-decompositions, discharging and structure checks for embedded graphs.
///
/// Input is read from FILE or standard input, as embedded-graph JSON (EGF) or
/// graph6. Results are printed as a single JSON document.
#[derive(Debug, Parser)]
#[command(name = "dhdecomp", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Input {
    /// Input file; standard input when absent or `-`
    pub file: Option<PathBuf>,
    /// Run on every file in DIR instead, printing one JSON object keyed by file name
    #[arg(long, value_name = "DIR", conflicts_with = "file")]
    pub each: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Constructive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    TorusGrid,
    HoneycombTorus,
    RandomRotation,
    Cycle,
    Complete,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace faces and report the Euler characteristic
    Faces {
        #[command(flatten)]
        input: Input,
        /// Also write a Graphviz rendering
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Degeneracy, peeling order and the induced acyclic orientation
    Degeneracy {
        #[command(flatten)]
        input: Input,
    },
    /// Find a (d,h)-decomposition
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        h: usize,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        /// Print the reduction trace to standard error
        #[arg(long)]
        trace: bool,
        /// Hand irreducible remainders with at most this many edges to the exact solver (constructive only)
        #[arg(long, default_value_t = 20)]
        fallback_edges: usize,
        /// Disable the exact fallback (constructive only)
        #[arg(long)]
        no_fallback: bool,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Check a decomposition against a graph
    Verify {
        #[command(flatten)]
        input: Input,
        /// Decomposition JSON: {"d", "h", "H": [[a, b]], "arcs": [[tail, head]]}
        #[arg(long, value_name = "FILE")]
        decomposition: PathBuf,
    },
    /// Search for forbidden and reducible configurations
    Detect {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Whether the graph has neither an i-cycle nor a j-cycle
    Member {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Run the discharging rules with exact charges
    Discharge {
        #[command(flatten)]
        input: Input,
    },
    /// Check the ten structural properties and list violations
    Audit {
        #[command(flatten)]
        input: Input,
    },
    /// Generate an embedded test graph as EGF
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Average degree for random_rotation
        #[arg(long, default_value_t = 3.0)]
        avg_degree: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the configuration catalogs and reduction rules
    Catalog {
        /// Include skeleton edges, degree marks and extension recipes
        #[arg(long)]
        dump: bool,
    },
}

/// Pretty JSON on stdout; a closed pipe is not an error.
fn emit(value: &serde_json::Value) {
    let mut out = std::io::stdout().lock();
    if serde_json::to_writer_pretty(&mut out, value).is_ok() {
        let _ = writeln!(out);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(value) => {
            emit(&value);
            ExitCode::SUCCESS
        }
        Err(CliError::Domain { message, detail }) => {
            let mut body = serde_json::json!({ "error": message });
            if let (Some(obj), Some(detail)) = (body.as_object_mut(), detail.as_object()) {
                obj.extend(detail.clone());
            }
            emit(&body);
            ExitCode::from(2)
        }
        Err(CliError::Batch { results, failed, code }) => {
            emit(&results);
            eprintln!("dhdecomp: {failed} input(s) did not succeed");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("dhdecomp: {e}");
            ExitCode::from(1)
        }
    }
}
