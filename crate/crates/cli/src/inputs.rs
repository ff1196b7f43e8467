//! Loading input files and assembling the regression panel.

use std::fs::File;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use chrono::{Days, NaiveDate};
use crashskew::garchs::report::{load_skew_csv, SkewSeries};
use crashskew::garchs::{fit_garchs, FitOptions};
use crashskew::ingest::{
    align_panel, load_count_csv, load_return_csv, log_growth, DatedSeries, PanelRequest, ZeroPolicy,
};
use crashskew::sentiment::{load_volume_csv, DateRange, SentimentSeries, VolumeSeries};
use crashskew::{AlignedPanel, GarchSFit, ReturnSeries};

pub fn ensure_exist(paths: &[Option<&PathBuf>]) -> Result<()> {
    for p in paths.iter().flatten() {
        if !p.is_file() {
            bail!(crashskew::Error::InvalidInput(format!("input file {} does not exist", p.display())));
        }
    }
    Ok(())
}

fn open(path: &Path) -> Result<File> {
    File::open(path).with_context(|| format!("opening {}", path.display()))
}

pub fn returns(path: &Path) -> Result<ReturnSeries> {
    load_return_csv(open(path)?).with_context(|| format!("loading returns from {}", path.display()))
}

pub fn volumes(path: &Path) -> Result<VolumeSeries> {
    load_volume_csv(open(path)?).with_context(|| format!("loading search volumes from {}", path.display()))
}

pub fn skew(path: &Path) -> Result<SkewSeries> {
    load_skew_csv(open(path)?).with_context(|| format!("loading skewness series from {}", path.display()))
}

/// Either a precomputed `date,h,s,eta` file or an in-run estimate from returns.
pub enum SkewSource {
    File(PathBuf),
    Estimate(PathBuf, FitOptions),
}

pub fn resolve_skew(source: &SkewSource) -> Result<(SkewSeries, Option<GarchSFit>)> {
    match source {
        SkewSource::File(p) => Ok((skew(p)?, None)),
        SkewSource::Estimate(p, opts) => {
            let r = returns(p)?;
            let fit = fit_garchs(&r, opts).context("estimating conditional skewness")?;
            let s = SkewSeries { dates: r.dates().to_vec(), s: fit.paths.s.clone() };
            Ok((s, Some(fit)))
        }
    }
}

/// `2020` for a calendar year or `START:END` with ISO dates.
pub fn parse_window(text: &str) -> Result<DateRange> {
    if let Ok(year) = text.parse::<i32>() {
        return Ok(DateRange::year(year));
    }
    let Some((a, b)) = text.split_once(':') else {
        bail!(crashskew::Error::InvalidInput(format!("fear window `{text}` is neither YEAR nor START:END")));
    };
    let parse = |s: &str| {
        NaiveDate::parse_from_str(s.trim(), "%Y-%m-%d")
            .map_err(|_| crashskew::Error::InvalidInput(format!("bad date `{s}` in fear window")))
    };
    let (start, end) = (parse(a)?, parse(b)?);
    if end < start {
        bail!(crashskew::Error::InvalidInput("fear window ends before it starts".into()));
    }
    Ok(DateRange::new(start, end))
}

/// Calendar 2020 when the volumes cover it, otherwise the whole volume sample.
pub fn default_window(v: &VolumeSeries) -> Result<DateRange> {
    let (Some(&first), Some(&last)) = (v.dates.first(), v.dates.last()) else {
        bail!(crashskew::Error::InvalidInput("search-volume file has no rows".into()));
    };
    let y2020 = DateRange::year(2020);
    if first <= y2020.end && last >= y2020.start {
        Ok(y2020)
    } else {
        Ok(DateRange::new(first, last))
    }
}

pub fn sentiment(path: &Path, window: Option<DateRange>, first_trading: NaiveDate) -> Result<SentimentSeries> {
    let v = volumes(path)?;
    let window = match window {
        Some(w) => w,
        None => default_window(&v)?,
    };
    let padded = v.extend_back_with_zeros(first_trading);
    Ok(SentimentSeries::build(&padded, window)?)
}

/// Count file converted to a labelled log-growth series, zero-padded back to `first_trading`.
pub fn growth(path: &Path, label: &str, policy: ZeroPolicy, first_trading: NaiveDate) -> Result<DatedSeries> {
    let counts = load_count_csv(open(path)?).with_context(|| format!("loading counts from {}", path.display()))?;
    let padded = counts.extend_back_with_zeros(first_trading - Days::new(1));
    Ok(DatedSeries::from_growth(label, &log_growth(&padded, policy)?))
}

pub struct PanelInputs<'a> {
    pub skew: &'a SkewSeries,
    pub growth: Vec<DatedSeries>,
    pub sentiment: Option<&'a SentimentSeries>,
}

/// Trading-day panel with every available column at lag 0; models apply their own lags.
pub fn panel(inputs: &PanelInputs) -> Result<AlignedPanel> {
    let dates = inputs.skew.dates.clone();
    let mut series = vec![DatedSeries::dense("skew", dates.clone(), &inputs.skew.s)];
    series.extend(inputs.growth.iter().cloned());
    if let Some(s) = inputs.sentiment {
        series.extend(s.to_dated_series());
    }
    let requests: Vec<PanelRequest> = series.iter().map(|s| PanelRequest::column(s.label.clone(), 0)).collect();
    Ok(align_panel(&dates, &series, &requests)?)
}
