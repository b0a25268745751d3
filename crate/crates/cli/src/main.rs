use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use coact_cli::{run, CliError, Command, Options, EXIT_INVALID};
use coact_core::ToleranceConfig;

/// Property checks for coactions of finite-dimensional C*-Hopf algebras.
///
/// INPUT is a JSON file or the name of a built-in catalog entry.
#[derive(Parser)]
#[command(name = "coact", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Include the runtime in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Equality tolerance, overriding the input file.
    #[arg(long, global = true, value_name = "EQ_TOL")]
    tol: Option<f64>,
    /// Relative rank threshold, overriding the input file.
    #[arg(long, global = true)]
    rank_tol: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every object in the input.
    Validate { input: String },
    /// Decide freeness by three independent routes.
    Free { input: String },
    /// Outerness verdict: outer, not_outer with a witness, or inconclusive.
    Outer { input: String },
    /// Saturation through Murray-von Neumann equivalence.
    Saturated { input: String },
    /// Build the crossed product and its dual coaction.
    Crossed {
        input: String,
        /// Write the crossed product with its dual coaction as a new input file.
        #[arg(long, value_name = "OUT")]
        emit: Option<PathBuf>,
    },
    /// Relative commutant of A in the crossed product, and its iterated counterpart.
    Commutant { input: String },
    /// Properties of the canonical conditional expectation.
    CondExp { input: String },
    /// Search central projections p with e.p = 1/N. Diagnostic only.
    RokhlinDiagnostic { input: String },
    /// Run the check matrix on the given inputs, or on the built-in catalog.
    Suite { inputs: Vec<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match (cli.tol, cli.rank_tol) {
        (None, None) => None,
        (eq, rank) => {
            let d = ToleranceConfig::default();
            match ToleranceConfig::new(rank.unwrap_or(d.rank_tol), eq.unwrap_or(d.eq_tol)) {
                Ok(t) => Some(t),
                Err(e) => return fail(&CliError::from(e)),
            }
        }
    };
    let opts = Options { json: cli.json, timing: cli.timing, tol };
    let (command, sources) = match cli.command {
        Cmd::Validate { input } => (Command::Validate, vec![input]),
        Cmd::Free { input } => (Command::Free, vec![input]),
        Cmd::Outer { input } => (Command::Outer, vec![input]),
        Cmd::Saturated { input } => (Command::Saturated, vec![input]),
        Cmd::Crossed { input, emit } => (Command::Crossed { emit }, vec![input]),
        Cmd::Commutant { input } => (Command::Commutant, vec![input]),
        Cmd::CondExp { input } => (Command::CondExp, vec![input]),
        Cmd::RokhlinDiagnostic { input } => (Command::RokhlinDiagnostic, vec![input]),
        Cmd::Suite { inputs } => (Command::Suite, inputs),
    };
    match run(&command, &sources, &opts) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    let code = e.exit_code();
    debug_assert!(code == EXIT_INVALID || code == coact_cli::EXIT_INTERNAL);
    ExitCode::from(code as u8)
}
