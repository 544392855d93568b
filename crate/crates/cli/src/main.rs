use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use detsing::{run, Command, Options};
use detsing_core::polyring::MonomialOrdering;

#[derive(Parser)]
#[command(
    name = "detsing",
    version,
    about = "Analyze determinantal singularities given by a presentation matrix"
)]
struct Cli {
    /// Model file.
    model: PathBuf,
    #[command(subcommand)]
    command: Cmd,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Working monomial order for Gröbner computations.
    #[arg(long, value_enum, default_value_t = Ordering::Grevlex, global = true)]
    ordering: Ordering,
    /// Abort (exit 3) when a Gröbner basis element exceeds this degree.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ordering {
    Grevlex,
    Lex,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full pipeline: strata, invariants, hyperplanes and family.
    Analyze,
    /// The s × s minors of the matrix.
    Minors {
        #[arg(long)]
        size: usize,
    },
    /// Krull dimension of a stratum.
    Dim {
        #[arg(long)]
        stratum: usize,
    },
    /// Colength of a zero-dimensional stratum.
    Colength {
        #[arg(long)]
        stratum: usize,
    },
    /// Isolated-singularity check on every stratum.
    EidsCheck,
    /// Solve the Euler system for the polar multiplicities.
    EulerSolve,
    /// Cut the model by a hyperplane through the origin.
    Slice {
        #[arg(long)]
        hyperplane: String,
    },
    /// Screen the hyperplanes of the model file.
    ScreenHyperplanes,
    /// Check every parameter sample and compare invariants.
    FamilyScan,
    /// Check the multiplicity identity against supplied values.
    Consistency,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Analyze => Command::Analyze,
            Cmd::Minors { size } => Command::Minors { size },
            Cmd::Dim { stratum } => Command::Dim { stratum },
            Cmd::Colength { stratum } => Command::Colength { stratum },
            Cmd::EidsCheck => Command::EidsCheck,
            Cmd::EulerSolve => Command::EulerSolve,
            Cmd::Slice { hyperplane } => Command::Slice { hyperplane },
            Cmd::ScreenHyperplanes => Command::ScreenHyperplanes,
            Cmd::FamilyScan => Command::FamilyScan,
            Cmd::Consistency => Command::Consistency,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&cli.model) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.model.display());
            return ExitCode::from(1);
        }
    };
    let options = Options {
        ordering: match cli.ordering {
            Ordering::Grevlex => MonomialOrdering::GrevLex,
            Ordering::Lex => MonomialOrdering::Lex,
        },
        max_degree: cli.max_degree,
    };
    match run(&cli.command.into(), &text, &options) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", cli.model.display());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
