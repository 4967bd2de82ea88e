use anyhow::Result;
use clap::{Parser, Subcommand};
use laguerre_harness::commands;
use laguerre_harness::config::ExperimentConfig;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(version, about = "Verification harness for Laguerre-expansion harmonic analysis")]
struct Cli {
    /// Experiment configuration file (flat `key = value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV reports (overrides the config).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 keeps the library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Glob over criterion names; only matching suites run.
    #[arg(long, global = true)]
    filter: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full property battery and gate on the results.
    Verify,
    /// Dump kernel value tables.
    Kernels {
        #[arg(long, default_value = "heat")]
        which: String,
    },
    /// Dump Luxemburg norms of the test families.
    Norms,
    /// Dump operator norm-ratio tables with refinement ratios.
    Operators,
    /// Re-read a summary file and print pass/fail lines.
    Report,
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = load_config(cli)?;
    let work = || -> Result<bool> {
        match &cli.command {
            Command::Verify => commands::cmd_verify(&cfg, cli.filter.as_deref()),
            Command::Kernels { which } => {
                commands::cmd_kernels(&cfg, which)?;
                Ok(true)
            }
            Command::Norms => {
                commands::cmd_norms(&cfg)?;
                Ok(true)
            }
            Command::Operators => {
                commands::cmd_operators(&cfg)?;
                Ok(true)
            }
            Command::Report => commands::cmd_report(&cfg.out),
        }
    };
    if cli.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()?;
        pool.install(work)
    } else {
        work()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    match run(&cli) {
        Ok(true) => {
            eprintln!("done in {:.1?}", started.elapsed());
            ExitCode::SUCCESS
        }
        Ok(false) => {
            eprintln!("suite failures after {:.1?}", started.elapsed());
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
