use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use conj::{construct, exponent_csv, load_bundle, simulate_csv, verify, CliError, CliResult, RunConfig, EXIT_VERIFY};
use conjcodes::Budget;

/// Construct, verify and simulate concatenated conjugate code pairs.
///
/// Enumeration budgets can be raised with the CONJ_BUDGET environment
/// variable. Exit codes: 0 success, 1 verification failure, 2 bad config or
/// bundle, 3 budget exceeded.
#[derive(Parser)]
#[command(name = "conj", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Overrides {
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Overrides {
    fn load(&self) -> CliResult<RunConfig> {
        let mut cfg = RunConfig::load(&self.config)?;
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(e) = self.epsilon {
            cfg.epsilon = e;
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the ensemble, sieve it, concatenate and write a bundle.
    Construct(Overrides),
    /// Re-run the exhaustive checks on a bundle directory.
    Verify { bundle: PathBuf },
    /// Random coding exponent sweeps for the configured channels.
    Exponent {
        #[command(flatten)]
        o: Overrides,
        /// Report E_r in bits instead of q-ary units.
        #[arg(long)]
        bits: bool,
    },
    /// Monte Carlo decoding error estimates for both sides of a bundle.
    Simulate {
        #[command(flatten)]
        o: Overrides,
        /// Bundle directory (defaults to the output directory).
        #[arg(long)]
        bundle: Option<PathBuf>,
        /// Index of the first trial, for resuming a campaign.
        #[arg(long, default_value_t = 0)]
        offset: u64,
    },
}

fn out_dir(cfg: &RunConfig) -> CliResult<PathBuf> {
    cfg.out.clone().ok_or_else(|| CliError::config("no output directory: pass --out or set \"out\""))
}

fn emit(cfg: &RunConfig, name: &str, csv: &str) -> CliResult<()> {
    print!("{csv}");
    if let Some(dir) = &cfg.out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::config(e.to_string()))?;
        std::fs::write(dir.join(name), csv).map_err(|e| CliError::config(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let budget = Budget::from_env();
    match cli.command {
        Command::Construct(o) => {
            let cfg = o.load()?;
            println!("{}", construct(&cfg, &out_dir(&cfg)?, budget)?);
        }
        Command::Verify { bundle } => {
            let b = load_bundle(&bundle)?;
            let results = verify(&b, budget)?;
            for r in &results {
                println!("{r}");
            }
            println!("config {}", b.meta.config_hash);
            let failed: Vec<_> = results.iter().filter(|r| r.outcome.is_err()).map(|r| r.name).collect();
            if !failed.is_empty() {
                return Err(CliError { code: EXIT_VERIFY, message: format!("failed: {}", failed.join(", ")) });
            }
        }
        Command::Exponent { o, bits } => {
            let cfg = o.load()?;
            emit(&cfg, "exponent.csv", &exponent_csv(&cfg, bits)?)?;
        }
        Command::Simulate { o, bundle, offset } => {
            let cfg = o.load()?;
            let dir = match bundle {
                Some(b) => b,
                None => out_dir(&cfg)?,
            };
            let b = load_bundle(&dir)?;
            if b.meta.config_hash != cfg.hash() {
                eprintln!("note: bundle was built from config {}", b.meta.config_hash);
            }
            emit(&cfg, "simulate.csv", &simulate_csv(&cfg, &b, offset, budget)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
