mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::StudyConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Solver(#[from] isocolloc::Error),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver(e) if !e.is_config() => 3,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "iso-colloc", version, about = "Convergence studies for isogeometric collocation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Errors and observed orders of one scheme over a mesh sequence.
    Convergence(Overrides),
    /// Second derivative of the Galerkin error on one mesh, with surrogate points.
    Residual(Overrides),
    /// L2 errors of several schemes (comma-separated --scheme) side by side.
    Compare(Overrides),
}

#[derive(Args)]
struct Overrides {
    /// JSON study file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
    /// Comma-separated element counts, e.g. 8,16,32,64.
    #[arg(long, value_delimiter = ',')]
    meshes: Option<Vec<usize>>,
    #[arg(long)]
    seed: Option<u64>,
    /// Perturb interior knots randomly (needs a seed).
    #[arg(long)]
    perturb: bool,
    /// CSV destination; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Overrides {
    fn resolve(self) -> Result<StudyConfig, CliError> {
        let mut c = match &self.config {
            Some(path) => StudyConfig::from_file(path)?,
            None => StudyConfig::default(),
        };
        if let Some(s) = self.scheme {
            c.scheme = Some(s);
            c.schemes = None;
        }
        c.problem = self.problem.or(c.problem);
        c.degree = self.degree.or(c.degree);
        c.meshes = self.meshes.or(c.meshes);
        c.seed = self.seed.or(c.seed);
        c.perturb |= self.perturb;
        c.out = self.out.or(c.out);
        Ok(c)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (cfg, cmd): (StudyConfig, fn(&StudyConfig) -> Result<commands::Output, CliError>) = match cli.command {
        Command::Convergence(o) => (o.resolve()?, commands::convergence),
        Command::Residual(o) => (o.resolve()?, commands::residual),
        Command::Compare(o) => (o.resolve()?, commands::compare),
    };
    let out = cmd(&cfg)?;
    match &cfg.out {
        Some(path) => {
            let err = |source| CliError::Output { path: path.clone(), source };
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(err)?;
            }
            std::fs::write(path, &out.csv).map_err(err)?;
            print!("{}", out.summary);
        }
        None => {
            std::io::stdout()
                .write_all(out.csv.as_bytes())
                .map_err(|source| CliError::Output { path: "stdout".into(), source })?;
            eprint!("{}", out.summary);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("iso-colloc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
