//! Text, markdown and CSV renderings of a GARCH-S fit.

use std::fmt::Write as _;
use std::io::{Read, Write};

use chrono::NaiveDate;

use super::{information_criteria, GarchSFit, GarchSParams, NUM_PARAMS};
use crate::dist::{normal_two_sided, significance_stars};
use crate::error::{Error, Result};
use crate::ingest::{fmt_f64, parse_float, read_rows, sort_unique};

/// Information-criteria convention, with the values the same log-likelihood gives when
/// one fewer observation is counted, since published tables often divide by N - 1.
pub fn ic_note(loglik: f64, n_obs: usize) -> String {
    let (aic, sic) = information_criteria(loglik, NUM_PARAMS, n_obs.saturating_sub(1).max(1));
    format!(
        "aic = (-2*loglik + 2k)/N and sic = (-2*loglik + k*ln N)/N with k = {NUM_PARAMS}, N = {}; \
dividing by N - 1 instead gives aic = {aic:.4}, sic = {sic:.4}",
        n_obs
    )
}

/// Flat `key = value` summary. Values use shortest round-trip formatting.
pub fn summary_kv(fit: &GarchSFit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "shock_form = {}", fit.shock_form);
    let _ = writeln!(out, "seed = {}", fit.seed);
    let _ = writeln!(out, "n_obs = {}", fit.n_obs);
    let _ = writeln!(out, "converged = {}", fit.converged);
    let _ = writeln!(out, "iterations = {}", fit.iterations);
    let _ = writeln!(out, "best_start = {}", fit.best_start);
    let _ = writeln!(out, "loglik = {}", fmt_f64(fit.loglik));
    let _ = writeln!(out, "aic = {}", fmt_f64(fit.aic));
    let _ = writeln!(out, "sic = {}", fmt_f64(fit.sic));
    for (i, (name, value)) in GarchSParams::NAMES.iter().zip(fit.params.to_array()).enumerate() {
        let _ = writeln!(out, "{name} = {}", fmt_f64(value));
        let _ = writeln!(out, "{name}.stderr = {}", opt(fit.stderr[i]));
        let _ = writeln!(out, "{name}.tstat = {}", opt(fit.tstat[i]));
    }
    let _ = writeln!(out, "note = {}", ic_note(fit.loglik, fit.n_obs));
    out
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_else(|| "unavailable".into())
}

/// Reads the parameter values back out of a [`summary_kv`] document.
pub fn params_from_kv(text: &str) -> Result<GarchSParams> {
    let mut values = [f64::NAN; NUM_PARAMS];
    for line in text.lines() {
        let Some((k, v)) = line.split_once('=') else { continue };
        if let Some(i) = GarchSParams::NAMES.iter().position(|n| *n == k.trim()) {
            values[i] = v.trim().parse().map_err(|_| Error::InvalidInput(format!("bad value for {}", k.trim())))?;
        }
    }
    if let Some(i) = values.iter().position(|v| v.is_nan()) {
        return Err(Error::InvalidInput(format!("missing `{}`", GarchSParams::NAMES[i])));
    }
    Ok(GarchSParams::from_slice(&values))
}

fn cell(value: f64, tstat: Option<f64>) -> String {
    match tstat {
        Some(t) => format!("{value:.6}{} ({t:.2})", significance_stars(normal_two_sided(t))),
        None => format!("{value:.6} (n/a)"),
    }
}

/// Two-column-pair markdown table with t-statistics in parentheses.
pub fn markdown_table(fit: &GarchSFit) -> String {
    let p = fit.params.to_array();
    let c = |i: usize| cell(p[i], fit.tstat[i]);
    let mut out = String::new();
    let _ = writeln!(out, "GARCH-S estimates (shock form: {}, seed: {}, N = {})", fit.shock_form, fit.seed, fit.n_obs);
    let _ = writeln!(out);
    let _ = writeln!(out, "| Parameter | Value | Parameter | Value |");
    let _ = writeln!(out, "|---|---|---|---|");
    let _ = writeln!(out, "| mu | {} | beta0 | {} |", c(0), c(4));
    let _ = writeln!(out, "| alpha0 | {} | beta1 | {} |", c(1), c(5));
    let _ = writeln!(out, "| alpha1 | {} | beta2 | {} |", c(2), c(6));
    let _ = writeln!(out, "| alpha2 | {} | AIC | {:.4} |", c(3), fit.aic);
    let _ = writeln!(out, "| Log-likelihood | {:.3} | SIC | {:.4} |", fit.loglik, fit.sic);
    let _ = writeln!(out);
    let _ = writeln!(out, "Notes: ***, **, * denote significance at 1%, 5%, 10%; t-statistics in parentheses.");
    let _ = writeln!(out, "Converged: {} after {} iterations.", fit.converged, fit.iterations);
    let _ = writeln!(out, "Information criteria: {}.", ic_note(fit.loglik, fit.n_obs));
    out
}

/// `date,h,s,eta` export of the filtered paths.
pub fn write_paths_csv<W: Write>(dates: &[NaiveDate], fit: &GarchSFit, mut out: W) -> std::io::Result<()> {
    writeln!(out, "date,h,s,eta")?;
    let p = &fit.paths;
    for (i, d) in dates.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{}",
            d.format("%Y-%m-%d"),
            fmt_f64(p.h[i]),
            fmt_f64(p.s[i]),
            fmt_f64(p.eta[i])
        )?;
    }
    Ok(())
}

/// Dated conditional skewness read from a `date,h,s,eta` file.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewSeries {
    pub dates: Vec<NaiveDate>,
    pub s: Vec<f64>,
}

pub fn load_skew_csv<R: Read>(source: R) -> Result<SkewSeries> {
    let mut text = String::new();
    let mut source = source;
    source
        .read_to_string(&mut text)
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("").trim();
    if header != "date,h,s,eta" {
        return Err(Error::BadHeader { expected: "date,h,s,eta".into(), found: header.into() });
    }
    // Reuse the two-column reader on the `s` column.
    let projected: String = std::iter::once("date,s".to_string())
        .chain(text.lines().skip(1).map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() == 4 {
                format!("{},{}", f[0], f[2])
            } else {
                l.to_string()
            }
        }))
        .collect::<Vec<_>>()
        .join("\n");
    let mut rows = read_rows(projected.as_bytes(), "s")?;
    sort_unique(&mut rows)?;
    let s = rows.iter().map(parse_float).collect::<Result<Vec<_>>>()?;
    Ok(SkewSeries { dates: rows.iter().map(|r| r.date).collect(), s })
}
