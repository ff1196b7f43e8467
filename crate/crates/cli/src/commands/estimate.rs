use std::path::PathBuf;

use anyhow::{Context, Result};
use crashskew::garchs::fit_garchs;
use crashskew::garchs::report::{markdown_table, summary_kv, write_paths_csv};

use crate::config::Config;
use crate::inputs::{ensure_exist, returns};
use crate::output::Outputs;
use crate::EstimateArgs;

pub fn run(a: &EstimateArgs, cfg: &Config) -> Result<Vec<PathBuf>> {
    let path = cfg.require_path(a.returns.clone(), "returns")?;
    ensure_exist(&[Some(&path)])?;
    let opts = a.fit.resolve(cfg)?;
    let out_dir = cfg.require_path(a.out_dir.clone(), "out_dir")?;

    let r = returns(&path)?;
    let fit = fit_garchs(&r, &opts).context("fitting GARCH-S")?;

    let mut outputs = Outputs::new(out_dir);
    outputs.add("fit_summary.txt", summary_kv(&fit));
    outputs.add("fit_table.md", markdown_table(&fit));
    let mut buf = Vec::new();
    write_paths_csv(r.dates(), &fit, &mut buf)?;
    outputs.add("skew_series.csv", buf);
    outputs.commit()
}
