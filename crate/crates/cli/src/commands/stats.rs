use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use chrono::NaiveDate;
use crashskew::ingest::{descriptive_stats, welch_t_test, DescriptiveStats, WelchTest};
use crashskew::Error;

use crate::config::Config;
use crate::inputs::{ensure_exist, returns, skew};
use crate::output::Outputs;
use crate::StatsArgs;

fn split(dates: &[NaiveDate], values: &[f64], at: NaiveDate) -> (Vec<f64>, Vec<f64>) {
    let k = dates.partition_point(|d| *d < at);
    (values[..k].to_vec(), values[k..].to_vec())
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| format!("{x:?}"))
}

pub fn run(a: &StatsArgs, cfg: &Config) -> Result<Vec<PathBuf>> {
    let path = cfg.require_path(a.returns.clone(), "returns")?;
    let skew_path = cfg.path(a.skew.clone(), "skew")?;
    ensure_exist(&[Some(&path), skew_path.as_ref()])?;
    let split_date = cfg.pick(a.split_date, "split_date")?;
    let out_dir = cfg.require_path(a.out_dir.clone(), "out_dir")?;

    let r = returns(&path)?;
    let dates = r.dates();
    let mut rows: Vec<(String, DescriptiveStats)> = vec![("full".into(), descriptive_stats(r.values())?)];
    let mut tests: Vec<(&str, WelchTest)> = Vec::new();
    if let Some(at) = split_date {
        let (first, last) = (dates[0], dates[dates.len() - 1]);
        if at <= first || at > last {
            bail!(Error::InvalidInput(format!("split date {at} must fall after {first} and no later than {last}")));
        }
        let (pre, post) = split(dates, r.values(), at);
        rows.push((format!("before {at}"), descriptive_stats(&pre)?));
        rows.push((format!("from {at}"), descriptive_stats(&post)?));
        tests.push(("return", welch_t_test(&pre, &post)?));
        if let Some(p) = &skew_path {
            let s = skew(p)?;
            let (pre, post) = split(&s.dates, &s.s, at);
            if pre.len() < 2 || post.len() < 2 {
                bail!(Error::InvalidInput("skewness series has fewer than two values on one side of the split".into()));
            }
            tests.push(("skewness", welch_t_test(&pre, &post)?));
        }
    }

    let mut csv = String::from("sample,n,mean,std,min,max,skewness\n");
    let mut md = String::from("| Sample | N | Mean | Std. dev. | Min | Max | Skewness |\n|---|---|---|---|---|---|---|\n");
    for (name, d) in &rows {
        let _ = writeln!(csv, "{name},{},{:?},{:?},{:?},{:?},{}", d.n, d.mean, d.std, d.min, d.max, opt(d.skewness));
        let sk = d.skewness.map_or_else(|| "NA".to_string(), |x| format!("{x:.4}"));
        let _ = writeln!(md, "| {name} | {} | {:.6} | {:.6} | {:.6} | {:.6} | {sk} |", d.n, d.mean, d.std, d.min, d.max);
    }
    let mut outputs = Outputs::new(out_dir);
    if !tests.is_empty() {
        let mut tcsv = String::from("variable,t_stat,p_value,df\n");
        let _ = writeln!(md, "\n| Mean difference | t-statistic | p-value | df |\n|---|---|---|---|");
        for (name, t) in &tests {
            let _ = writeln!(tcsv, "{name},{:?},{:?},{:?}", t.t, t.p_value, t.df);
            let _ = writeln!(md, "| {name} | {:.2} | {:.3} | {:.1} |", t.t, t.p_value, t.df);
        }
        outputs.add("stats_tests.csv", tcsv);
    }
    outputs.add("stats.csv", csv);
    outputs.add("stats.md", md);
    outputs.commit()
}
