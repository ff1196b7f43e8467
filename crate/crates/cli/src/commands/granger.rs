use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use crashskew::granger::{granger_causality, markdown_table, results_csv, DEFAULT_P_MAX};
use crashskew::Error;

use super::skew_source;
use crate::config::Config;
use crate::inputs::{ensure_exist, panel, parse_window, resolve_skew, sentiment, PanelInputs, SkewSource};
use crate::output::Outputs;
use crate::GrangerArgs;

/// Rows where both series are present; they must form one unbroken block so lags stay meaningful.
fn paired(a: &[Option<f64>], b: &[Option<f64>]) -> Result<(Vec<f64>, Vec<f64>)> {
    let rows: Vec<usize> = (0..a.len()).filter(|&i| a[i].is_some() && b[i].is_some()).collect();
    if rows.windows(2).any(|w| w[1] != w[0] + 1) {
        bail!(Error::InvalidInput("skewness and sentiment overlap with gaps; lags would span missing days".into()));
    }
    Ok((rows.iter().map(|&i| a[i].unwrap()).collect(), rows.iter().map(|&i| b[i].unwrap()).collect()))
}

pub fn run(a: &GrangerArgs, cfg: &Config) -> Result<Vec<PathBuf>> {
    let source = skew_source(&a.skew, cfg)?;
    let volume = cfg.require_path(a.volume.clone(), "volume")?;
    ensure_exist(&[Some(&volume)])?;
    let window = cfg.pick::<String>(a.fear_window.clone(), "fear_window")?.map(|w| parse_window(&w)).transpose()?;
    let label = if cfg.switch(a.dummy, "dummy")? { "D_fear" } else { "fearSent" };
    let p_max = cfg.pick_or(a.pmax, "pmax", DEFAULT_P_MAX)?;
    let out_dir = cfg.require_path(a.out_dir.clone(), "out_dir")?;

    let (skew, _) = resolve_skew(&source)?;
    let Some(&first) = skew.dates.first() else {
        bail!(Error::InvalidInput("skewness series is empty".into()));
    };
    let sent = sentiment(&volume, window, first)?;
    let panel = panel(&PanelInputs { skew: &skew, growth: vec![], sentiment: Some(&sent) })?;
    let (s, f) = paired(panel.column("skew").expect("skew column"), panel.column(label).expect("sentiment column"))?;

    let hint = || format!("lag bound {p_max} is too large for {} paired observations; try a smaller --pmax", s.len());
    let forward = granger_causality((label, &f), ("skew", &s), p_max).with_context(hint)?;
    let backward = granger_causality(("skew", &s), (label, &f), p_max).with_context(hint)?;
    let results = [forward, backward];

    let mut md = markdown_table(&results);
    md.push_str(&format!("\nObservations: {}. Lag bound: {p_max}.", s.len()));
    if let SkewSource::Estimate(_, opts) = &source {
        md.push_str(&format!(" Skewness estimated in run (shock form: {}, seed = {}).", opts.shock_form, opts.seed));
    }
    md.push('\n');
    let mut outputs = Outputs::new(out_dir);
    outputs.add("granger.csv", results_csv(&results));
    outputs.add("granger.md", md);
    outputs.commit()
}
