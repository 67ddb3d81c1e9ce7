use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use esdg_rhd::runner::{convergence, parse_config, parse_resolutions, run, RunConfig};
use esdg_rhd::InterfaceFlux;

#[derive(Parser)]
#[command(name = "esdg", version, about = "Entropy-stable DG solver for relativistic hydrodynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flux {
    Lf,
    Ec,
}

#[derive(clap::Args)]
struct Overrides {
    /// Interface flux
    #[arg(long, value_enum)]
    flux: Option<Flux>,
    /// Turn off both limiters
    #[arg(long)]
    no_limiter: bool,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration and write solution, entropy and manifest files
    Run {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Tabulate density errors against the exact solution
    Converge {
        config: PathBuf,
        /// Comma-separated cell counts, e.g. 32,64,128
        #[arg(long)]
        resolutions: String,
        #[command(flatten)]
        overrides: Overrides,
    },
}

fn load(path: &PathBuf, o: &Overrides) -> Result<RunConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut config = parse_config(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(f) = o.flux {
        config.flux = match f {
            Flux::Lf => InterfaceFlux::LaxFriedrichs,
            Flux::Ec => InterfaceFlux::EntropyConservative,
        };
    }
    if o.no_limiter {
        config.tvb = false;
        config.bounds = false;
    }
    if let Some(out) = &o.out {
        config.output = out.clone();
    }
    Ok(config)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, overrides } => {
            let cfg = load(&config, &overrides)?;
            let summary = run(&cfg).with_context(|| format!("running {}", cfg.problem))?;
            println!(
                "{}: {} steps to t = {} in {:.2} s",
                cfg.problem, summary.steps, summary.t_final, summary.wall_time_s
            );
            for f in &summary.files {
                println!("  wrote {}", f.display());
            }
        }
        Command::Converge { config, resolutions, overrides } => {
            let cfg = load(&config, &overrides)?;
            let res = parse_resolutions(&resolutions)?;
            let report = convergence(&cfg, &res).with_context(|| format!("convergence study of {}", cfg.problem))?;
            print!("{report}");
        }
    }
    Ok(())
}
