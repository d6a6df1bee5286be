use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod render;

use render::Report;

#[derive(Parser, Debug)]
#[command(name = "lietower", version, about = "Lie models and rational completion towers of simplicial sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(clap::Args, Debug, Clone)]
struct Flags {
    /// Truncation order N: brackets longer than N are dropped.
    #[arg(long, global = true, default_value_t = 4)]
    truncation: u32,
    /// Last stage n_max of the tower.
    #[arg(long, global = true, default_value_t = 5)]
    stages: u32,
    /// Homotopy degrees 1..=d_max.
    #[arg(long, global = true, default_value_t = 4)]
    degrees: usize,
    /// Homological degree cutoff D for minimal models.
    #[arg(long, global = true, default_value_t = 3)]
    cutoff: i32,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Global model and, for reduced inputs, the based component.
    Model { input: PathBuf },
    /// Simplicial homology against the homology of the indecomposables.
    Homology { input: PathBuf },
    /// Homotopy dimensions of every stage of the completion tower.
    Tower { input: PathBuf },
    /// The group H₀ of the last stage with its BCH product.
    Pi { input: PathBuf },
    /// Minimal model of the last stage within the degree cutoff.
    Minimal { input: PathBuf },
    /// Runs the invariant suite on the bundled fixtures.
    Verify,
    /// Prints the model of the standard n-simplex.
    DumpSimplexModel { n: usize },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] lietower::Error),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("invalid flag: {0}")]
    Flag(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !e.is_input_error() => 2,
            CliError::Verify(_) => 2,
            _ => 1,
        }
    }
}

fn validate(f: &Flags) -> Result<(), CliError> {
    if f.truncation == 0 {
        return Err(CliError::Flag("--truncation must be at least 1".into()));
    }
    if f.stages < 2 {
        return Err(CliError::Flag("--stages must be at least 2".into()));
    }
    if f.degrees == 0 {
        return Err(CliError::Flag("--degrees must be at least 1".into()));
    }
    if f.cutoff < 0 {
        return Err(CliError::Flag("--cutoff must be non-negative".into()));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    validate(&cli.flags)?;
    let f = &cli.flags;
    let load = |p: &PathBuf| lietower::simpset::load_simplicial_set_file(p);
    Ok(match &cli.command {
        Command::Model { input } => render::model(&load(input)?, f.truncation)?,
        Command::Homology { input } => render::homology(&load(input)?, f.truncation, f.degrees)?,
        Command::Tower { input } => {
            Report::Tower(lietower::tower::tower_homotopy(&load(input)?, f.stages, f.degrees)?)
        }
        Command::Pi { input } => render::pi(&load(input)?, f.stages)?,
        Command::Minimal { input } => render::minimal(&load(input)?, f.stages, f.cutoff)?,
        Command::Verify => {
            let r = lietower::verify::run_suite();
            if !r.passed() {
                let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                eprint!("{}", Report::Verify(r.clone()).human());
                return Err(CliError::Verify(failed.join(", ")));
            }
            Report::Verify(r)
        }
        Command::DumpSimplexModel { n } => render::simplex_model(*n, f.truncation)?,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; clap would use 2
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = execute(&cli).and_then(|report| {
        let text = match cli.flags.format {
            Format::Human => report.human(),
            Format::Machine => report.machine(),
        };
        match &cli.flags.output {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e)),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
