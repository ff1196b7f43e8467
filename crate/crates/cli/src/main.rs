use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};
use crashskew::garchs::{FitOptions, Stationarity};
use crashskew::ShockForm;

mod commands;
mod config;
mod inputs;
mod output;

use config::Config;

#[derive(Parser)]
#[command(name = "crashskew", version, about = "Conditional-skewness crash-risk estimation and regressions")]
struct Cli {
    /// Flat `key = value` file providing defaults for any flag (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a GARCH-S return series.
    Simulate(SimulateArgs),
    /// Write a seed-pinned synthetic bundle: returns, case and death counts, search volumes.
    Fixture(FixtureArgs),
    /// Fit GARCH-S and export the conditional skewness path.
    Estimate(EstimateArgs),
    /// Run skewness regressions.
    Regress(RegressArgs),
    /// Granger causality between skewness and fear sentiment.
    Granger(GrangerArgs),
    /// Descriptive statistics with an optional before/after split.
    Stats(StatsArgs),
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[arg(long)]
    alpha0: Option<f64>,
    #[arg(long)]
    alpha1: Option<f64>,
    #[arg(long)]
    alpha2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta2: Option<f64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Number of returns after burn-in.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// cubed or squared.
    #[arg(long)]
    shock_form: Option<ShockForm>,
    /// Accept parameters that are strictly but not covariance stationary.
    #[arg(long)]
    strict_stationarity: bool,
    /// First synthetic trading date.
    #[arg(long)]
    start: Option<NaiveDate>,
    /// Output CSV file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FixtureArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    start: Option<NaiveDate>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// cubed (default) or squared.
    #[arg(long)]
    shock_form: Option<ShockForm>,
    /// Number of optimizer starts.
    #[arg(long)]
    starts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    returns: Option<PathBuf>,
    #[command(flatten)]
    fit: FitArgs,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct SkewArgs {
    /// Previously exported `date,h,s,eta` file.
    #[arg(long)]
    skew: Option<PathBuf>,
    /// Returns to estimate skewness from when no skew file is given.
    #[arg(long)]
    returns: Option<PathBuf>,
    #[command(flatten)]
    fit: FitArgs,
}

#[derive(Args)]
struct RegressArgs {
    #[command(flatten)]
    skew: SkewArgs,
    #[arg(long)]
    cases: Option<PathBuf>,
    #[arg(long)]
    deaths: Option<PathBuf>,
    #[arg(long)]
    global_cases: Option<PathBuf>,
    #[arg(long)]
    global_deaths: Option<PathBuf>,
    #[arg(long)]
    volume: Option<PathBuf>,
    /// log1p (default) or skip.
    #[arg(long)]
    zero_policy: Option<crashskew::ingest::ZeroPolicy>,
    /// Reference window for the fear dummy: YEAR or START:END.
    #[arg(long)]
    fear_window: Option<String>,
    /// Comma-separated model labels, or `all`.
    #[arg(long)]
    models: Option<String>,
    /// Heteroskedasticity-consistent (HC1) standard errors.
    #[arg(long)]
    hc1: bool,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct GrangerArgs {
    #[command(flatten)]
    skew: SkewArgs,
    #[arg(long)]
    volume: Option<PathBuf>,
    #[arg(long)]
    fear_window: Option<String>,
    /// Test the fear dummy instead of the fear-sentiment level.
    #[arg(long)]
    dummy: bool,
    /// Largest lag considered by BIC.
    #[arg(long)]
    pmax: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    returns: Option<PathBuf>,
    /// Optional `date,h,s,eta` file for the skewness comparison.
    #[arg(long)]
    skew: Option<PathBuf>,
    /// First date of the second subsample.
    #[arg(long)]
    split_date: Option<NaiveDate>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl FitArgs {
    fn resolve(&self, cfg: &Config) -> Result<FitOptions> {
        let d = FitOptions::default();
        Ok(FitOptions {
            shock_form: cfg.pick_or(self.shock_form, "shock_form", d.shock_form)?,
            starts: cfg.pick_or(self.starts, "starts", d.starts)?,
            tolerance: cfg.pick_or(self.tolerance, "tolerance", d.tolerance)?,
            max_iter: cfg.pick_or(self.max_iter, "max_iter", d.max_iter)?,
            seed: cfg.pick_or(self.seed, "seed", d.seed)?,
        })
    }
}

fn stationarity(strict: bool) -> Stationarity {
    if strict {
        Stationarity::Strict
    } else {
        Stationarity::Covariance
    }
}

fn run(cli: Cli) -> Result<()> {
    let cfg = Config::load(cli.config.as_deref())?;
    let written = match cli.command {
        Command::Simulate(a) => commands::simulate::run(&a, &cfg)?,
        Command::Fixture(a) => commands::fixture::run(&a, &cfg)?,
        Command::Estimate(a) => commands::estimate::run(&a, &cfg)?,
        Command::Regress(a) => commands::regress::run(&a, &cfg)?,
        Command::Granger(a) => commands::granger::run(&a, &cfg)?,
        Command::Stats(a) => commands::stats::run(&a, &cfg)?,
    };
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}

/// 1 for numerical failures, 2 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    use crashskew::Error as E;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::NonConvergence { .. } | E::Degenerate(_) | E::RankDeficient(_) => 1,
                _ => 2,
            };
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
