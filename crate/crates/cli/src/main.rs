mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "hcseq", version, about = "Admissible operation sequences on finite lattices")]
struct Cli {
    /// Print JSON instead of a human-readable report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Catalog lattice: ONE, B2, C<n>, M<k>, N5, or products such as B2xC3.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,

    /// Lattice file (omitted with --builtin), then sequence files.
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the lattice axioms and modularity.
    Validate(Input),
    /// Atoms, coatoms, splitting pairs and the product decomposition.
    Analyze(Input),
    /// Classify and list all admissible sequences.
    Enumerate {
        #[command(flatten)]
        input: Input,
        /// Search directly on the box [0, CAP]^m instead of decomposing.
        #[arg(long)]
        oracle: bool,
        /// Presentation degree bound for --oracle (derived when omitted).
        #[arg(long, requires = "oracle")]
        cap: Option<u32>,
        /// Search node limit.
        #[arg(long, env = "HCSEQ_BUDGET")]
        budget: Option<u64>,
    },
    /// Check a sequence or table against every axiom.
    Check(Input),
    /// Compare two sequences in both directions.
    Compare(Input),
    /// Build and verify the first K+1 members of the infinite family.
    Family {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: u32,
        /// Directory for h<j>.json files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower central series and vanishing arity of a sequence.
    Lcs(Input),
    /// All admissible sequences of presentation degree at most CAP.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Derived from the decomposition when omitted.
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, env = "HCSEQ_BUDGET")]
        budget: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let message = e.render().to_string();
            let body = json!({ "error": "Usage", "message": message.trim_end(), "exit_code": 2 });
            eprintln!("{body}");
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli.command) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"
            } else {
                out.text
            };
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = e.exit_code();
            let body = json!({ "error": e.kind(), "message": e.to_string(), "exit_code": code });
            eprintln!("{body}");
            ExitCode::from(code)
        }
    }
}
