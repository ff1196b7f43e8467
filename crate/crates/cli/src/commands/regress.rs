use std::path::PathBuf;

use anyhow::{bail, Result};
use crashskew::ingest::ZeroPolicy;
use crashskew::regress::report::{markdown_table, results_csv};
use crashskew::regress::{model_catalog, run_model_with, CovarianceKind, ModelSpec};
use crashskew::Error;

use super::skew_source;
use crate::config::Config;
use crate::inputs::{ensure_exist, growth, panel, parse_window, resolve_skew, sentiment, PanelInputs, SkewSource};
use crate::output::Outputs;
use crate::RegressArgs;

/// Requested models in catalog order.
fn select(models: &str) -> Result<Vec<(&'static str, ModelSpec)>> {
    let catalog = model_catalog();
    if models.trim() == "all" {
        return Ok(catalog);
    }
    let wanted: Vec<&str> = models.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if wanted.is_empty() {
        bail!(Error::InvalidInput("no model labels given".into()));
    }
    let available: Vec<&str> = catalog.iter().map(|(l, _)| *l).collect();
    for w in &wanted {
        if !available.contains(w) {
            bail!(Error::UnknownLabel(format!("{w}; available models: {}", available.join(", "))));
        }
    }
    Ok(catalog.into_iter().filter(|(l, _)| wanted.contains(l)).collect())
}

pub fn run(a: &RegressArgs, cfg: &Config) -> Result<Vec<PathBuf>> {
    let models = select(&cfg.pick_or(a.models.clone(), "models", "all".to_string())?)?;
    let source = skew_source(&a.skew, cfg)?;
    let count_inputs = [
        ("rCases", cfg.path(a.cases.clone(), "cases")?, "--cases"),
        ("rDeaths", cfg.path(a.deaths.clone(), "deaths")?, "--deaths"),
        ("rGlobalCases", cfg.path(a.global_cases.clone(), "global_cases")?, "--global-cases"),
        ("rGlobalDeaths", cfg.path(a.global_deaths.clone(), "global_deaths")?, "--global-deaths"),
    ];
    let volume = cfg.path(a.volume.clone(), "volume")?;
    let paths: Vec<Option<&PathBuf>> = count_inputs.iter().map(|c| c.1.as_ref()).chain([volume.as_ref()]).collect();
    ensure_exist(&paths)?;
    let policy = cfg.pick_or(a.zero_policy, "zero_policy", ZeroPolicy::default())?;
    let window = cfg.pick::<String>(a.fear_window.clone(), "fear_window")?.map(|w| parse_window(&w)).transpose()?;
    let cov = if cfg.switch(a.hc1, "hc1")? { CovarianceKind::Hc1 } else { CovarianceKind::Classical };
    let out_dir = cfg.require_path(a.out_dir.clone(), "out_dir")?;

    // Every requested model must find its inputs before any work starts.
    for (label, spec) in &models {
        for t in &spec.terms {
            let vars = std::iter::once(t.variable.as_str()).chain(t.interact_with.as_ref().map(|(b, _)| b.as_str()));
            for v in vars {
                let missing = match v {
                    "fearSent" | "D_fear" => volume.is_none().then_some("--volume"),
                    _ => count_inputs.iter().find(|c| c.0 == v).and_then(|c| c.1.is_none().then_some(c.2)),
                };
                if let Some(flag) = missing {
                    bail!(Error::InvalidInput(format!("model {label} uses {v}; pass {flag}")));
                }
            }
        }
    }

    let (skew, fit) = resolve_skew(&source)?;
    let Some(&first) = skew.dates.first() else {
        bail!(Error::InvalidInput("skewness series is empty".into()));
    };
    let mut growth_series = Vec::new();
    for (label, path, _) in &count_inputs {
        if let Some(p) = path {
            growth_series.push(growth(p, label, policy, first)?);
        }
    }
    let sent = volume.as_ref().map(|p| sentiment(p, window, first)).transpose()?;
    let panel = panel(&PanelInputs { skew: &skew, growth: growth_series, sentiment: sent.as_ref() })?;

    let mut outputs = Outputs::new(out_dir);
    for (label, spec) in &models {
        let result = run_model_with(&panel, spec, cov).map_err(|e| anyhow::Error::new(e).context(format!("model {label}")))?;
        let mut md = format!("## {label}\n\n");
        md.push_str(&markdown_table(&[(label, &result)]));
        md.push_str(&run_footer(&source, fit.is_some(), cov));
        outputs.add(format!("regress_{label}.md"), md);
        outputs.add(format!("regress_{label}.csv"), results_csv(&[(label, &result)]));
    }
    outputs.commit()
}

fn run_footer(source: &SkewSource, estimated: bool, cov: CovarianceKind) -> String {
    let se = match cov {
        CovarianceKind::Classical => "classical",
        CovarianceKind::Hc1 => "HC1",
    };
    match source {
        SkewSource::Estimate(_, opts) if estimated => format!(
            "Standard errors: {se}. Skewness estimated in run (shock form: {}, seed = {}).\n",
            opts.shock_form, opts.seed
        ),
        _ => format!("Standard errors: {se}. Skewness read from file.\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_selection() {
        assert_eq!(select("all").unwrap().len(), 24);
        let two: Vec<&str> = select("eq5, eq2").unwrap().iter().map(|m| m.0).collect();
        assert_eq!(two, ["eq2", "eq5"]);
        let err = select("eq99").unwrap_err().to_string();
        assert!(err.contains("eq99") && err.contains("eq16_1"));
    }
}
