//! Synthetic input bundle with known structure.
//!
//! Returns come from the GARCH-S simulator. The daily case growth on each trading
//! day is `-CASE_LOADING * eta^3` plus noise, so next-day conditional skewness
//! falls when cases grow. Deaths load weakly on the same shock; global series and
//! search volumes are independent mean-reverting noise.

use std::path::PathBuf;

use anyhow::Result;
use chrono::{Days, NaiveDate};
use crashskew::garchs::{simulate_garchs_with, SimulateOptions};
use crashskew::ingest::CountSeries;
use crashskew::sentiment::VolumeSeries;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::simulate::DEFAULT_PARAMS;
use crate::config::Config;
use crate::output::Outputs;
use crate::FixtureArgs;

const CASE_LOADING: f64 = 0.02;
const DEATH_LOADING: f64 = 0.005;
const MEAN_REVERSION: f64 = 0.05;

struct CountSpec {
    file: &'static str,
    level: f64,
    loading: f64,
    noise: f64,
}

const COUNTS: [CountSpec; 4] = [
    CountSpec { file: "cases.csv", level: 20_000.0, loading: CASE_LOADING, noise: 0.15 },
    CountSpec { file: "deaths.csv", level: 800.0, loading: DEATH_LOADING, noise: 0.05 },
    CountSpec { file: "global_cases.csv", level: 200_000.0, loading: 0.0, noise: 0.03 },
    CountSpec { file: "global_deaths.csv", level: 5_000.0, loading: 0.0, noise: 0.04 },
];

/// Mean-reverting log level whose increment on trading days is driven by `shock`.
fn counts<R: Rng>(spec: &CountSpec, days: &[NaiveDate], shock: impl Fn(NaiveDate) -> f64, rng: &mut R) -> Vec<u64> {
    let base = spec.level.ln();
    let noise = Normal::new(0.0, spec.noise).expect("positive sd");
    let mut level = base;
    days.iter()
        .map(|&d| {
            level += -spec.loading * shock(d) - MEAN_REVERSION * (level - base) + noise.sample(rng);
            (level.exp() - 1.0).round().max(0.0) as u64
        })
        .collect()
}

pub fn run(a: &FixtureArgs, cfg: &Config) -> Result<Vec<PathBuf>> {
    let n = cfg.pick_or(a.n, "n", 800)?;
    let seed = cfg.pick_or(a.seed, "seed", 20_200_123)?;
    let start = cfg.pick_or(a.start, "start", NaiveDate::from_ymd_opt(2019, 1, 2).expect("valid date"))?;
    let out_dir = cfg.require_path(a.out_dir.clone(), "out_dir")?;

    let opts = SimulateOptions { start, ..SimulateOptions::default() };
    let sim = simulate_garchs_with(&DEFAULT_PARAMS, n, seed, &opts)?;
    let trading = sim.returns.dates();
    let eta_on: std::collections::HashMap<NaiveDate, f64> =
        trading.iter().copied().zip(sim.eta.iter().copied()).collect();
    let shock = |d: NaiveDate| eta_on.get(&d).map_or(0.0, |e| e * e * e);

    let first = trading[0] - Days::new(1);
    let last = *trading.last().expect("n >= 2");
    let days: Vec<NaiveDate> = first.iter_days().take_while(|d| *d <= last).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut outputs = Outputs::new(&out_dir);
    let mut buf = Vec::new();
    sim.returns.write_csv(&mut buf)?;
    outputs.add("returns.csv", buf);
    for spec in &COUNTS {
        let c = CountSeries::from_start(first, counts(spec, &days, shock, &mut rng));
        let mut buf = Vec::new();
        c.write_csv(&mut buf)?;
        outputs.add(spec.file, buf);
    }

    let noise = Normal::new(0.0, 0.2).expect("positive sd");
    let base = 3000f64.ln();
    let mut x = base;
    let volumes = days
        .iter()
        .map(|_| {
            x = base + 0.9 * (x - base) + noise.sample(&mut rng);
            x.exp().round()
        })
        .collect();
    let mut buf = Vec::new();
    VolumeSeries { dates: days.clone(), volumes }.write_csv(&mut buf)?;
    outputs.add("volume.csv", buf);

    let conf = format!(
        "# crashskew fixture --seed {seed} --n {n} --start {start}\n\
         returns = returns.csv\n\
         cases = cases.csv\n\
         deaths = deaths.csv\n\
         global_cases = global_cases.csv\n\
         global_deaths = global_deaths.csv\n\
         volume = volume.csv\n\
         seed = {seed}\n"
    );
    outputs.add("fixture.conf", conf);
    outputs.commit()
}
