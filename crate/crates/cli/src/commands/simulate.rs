use std::path::PathBuf;

use anyhow::{bail, Result};
use crashskew::garchs::{simulate_garchs_with, SimulateOptions};
use crashskew::{GarchSParams, ShockForm};

use crate::config::Config;
use crate::output::Outputs;
use crate::{stationarity, ParamArgs, SimulateArgs};

/// Parameters used when a flag and the config are both silent.
pub const DEFAULT_PARAMS: GarchSParams =
    GarchSParams { mu: 3e-4, alpha0: 4e-6, alpha1: 0.09, alpha2: 0.88, beta0: -0.02, beta1: 0.05, beta2: 0.6 };

impl ParamArgs {
    pub fn resolve(&self, cfg: &Config) -> Result<GarchSParams> {
        let d = DEFAULT_PARAMS;
        Ok(GarchSParams {
            mu: cfg.pick_or(self.mu, "mu", d.mu)?,
            alpha0: cfg.pick_or(self.alpha0, "alpha0", d.alpha0)?,
            alpha1: cfg.pick_or(self.alpha1, "alpha1", d.alpha1)?,
            alpha2: cfg.pick_or(self.alpha2, "alpha2", d.alpha2)?,
            beta0: cfg.pick_or(self.beta0, "beta0", d.beta0)?,
            beta1: cfg.pick_or(self.beta1, "beta1", d.beta1)?,
            beta2: cfg.pick_or(self.beta2, "beta2", d.beta2)?,
        })
    }
}

pub fn run(a: &SimulateArgs, cfg: &Config) -> Result<Vec<PathBuf>> {
    let params = a.params.resolve(cfg)?;
    let opts = SimulateOptions {
        shock_form: cfg.pick_or(a.shock_form, "shock_form", ShockForm::Cubed)?,
        start: cfg.pick_or(a.start, "start", SimulateOptions::default().start)?,
        stationarity: stationarity(cfg.switch(a.strict_stationarity, "strict_stationarity")?),
    };
    let n = cfg.pick_or(a.n, "n", 1000)?;
    let seed = cfg.pick_or(a.seed, "seed", 0)?;
    let out = cfg.require_path(a.out.clone(), "out")?;
    let Some(name) = out.file_name().map(|s| s.to_string_lossy().into_owned()) else {
        bail!(crashskew::Error::InvalidInput(format!("`{}` is not a file path", out.display())));
    };
    let dir = out.parent().map(PathBuf::from).unwrap_or_default();

    let sim = simulate_garchs_with(&params, n, seed, &opts)?;
    let mut buf = Vec::new();
    sim.returns.write_csv(&mut buf)?;
    let mut outputs = Outputs::new(dir);
    outputs.add(name, buf);
    outputs.commit()
}

