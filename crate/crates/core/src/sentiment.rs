//! Fear-sentiment index from daily search volumes.
//!
//! `fearSent = ln(volume + 1)`; `D_fear` is 1 on days whose volume is strictly
//! above the median volume of a reference window. Keyword selection and
//! aggregation into a single volume column happen upstream of this crate.

use std::io::{Read, Write};

use chrono::{Days, NaiveDate};

use crate::error::{Error, Result};
use crate::ingest::{fmt_f64, parse_float, read_rows, sort_unique, DatedSeries};

/// Inclusive calendar date range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DateRange {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl DateRange {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Self {
        Self { start, end }
    }

    pub fn contains(&self, d: NaiveDate) -> bool {
        self.start <= d && d <= self.end
    }

    /// January 1 to December 31 of `year`.
    pub fn year(year: i32) -> Self {
        Self {
            start: NaiveDate::from_ymd_opt(year, 1, 1).expect("valid year"),
            end: NaiveDate::from_ymd_opt(year, 12, 31).expect("valid year"),
        }
    }
}

/// Daily search volume, one aggregated column.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeSeries {
    pub dates: Vec<NaiveDate>,
    pub volumes: Vec<f64>,
}

impl VolumeSeries {
    /// Prepends zero-volume calendar days back to `first`.
    pub fn extend_back_with_zeros(&self, first: NaiveDate) -> Self {
        let Some(&start) = self.dates.first() else {
            return self.clone();
        };
        let pad = (start - first).num_days().max(0) as u64;
        let mut dates: Vec<NaiveDate> = (0..pad).map(|i| first + Days::new(i)).collect();
        dates.extend_from_slice(&self.dates);
        let mut volumes = vec![0.0; pad as usize];
        volumes.extend_from_slice(&self.volumes);
        Self { dates, volumes }
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "date,volume")?;
        for (d, v) in self.dates.iter().zip(&self.volumes) {
            writeln!(out, "{},{}", d.format("%Y-%m-%d"), fmt_f64(*v))?;
        }
        Ok(())
    }
}

/// Reads a `date,volume` CSV.
pub fn load_volume_csv<R: Read>(source: R) -> Result<VolumeSeries> {
    let mut rows = read_rows(source, "volume")?;
    sort_unique(&mut rows)?;
    let mut volumes = Vec::with_capacity(rows.len());
    for row in &rows {
        let v = parse_float(row)?;
        if v < 0.0 {
            return Err(Error::MalformedRow {
                line: row.line,
                message: format!("negative volume {v}"),
            });
        }
        volumes.push(v);
    }
    if volumes.is_empty() {
        return Err(Error::TooShort { needed: 1, got: 0 });
    }
    Ok(VolumeSeries { dates: rows.iter().map(|r| r.date).collect(), volumes })
}

pub fn fear_sentiment(volume: f64) -> Result<f64> {
    if !volume.is_finite() || volume < 0.0 {
        return Err(Error::InvalidInput(format!(
            "search volume must be finite and non-negative, got {volume}"
        )));
    }
    Ok(volume.ln_1p())
}

/// Median with the midpoint convention for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

/// 1 where the volume is strictly above the median of the window's volumes.
pub fn fear_dummy(dates: &[NaiveDate], volumes: &[f64], window: DateRange) -> Result<Vec<u8>> {
    if dates.len() != volumes.len() {
        return Err(Error::InvalidInput("dates and volumes differ in length".into()));
    }
    let reference: Vec<f64> = dates
        .iter()
        .zip(volumes)
        .filter(|(d, _)| window.contains(**d))
        .map(|(_, v)| *v)
        .collect();
    let med = median(&reference).ok_or_else(|| {
        Error::InvalidInput(format!(
            "reference window {}..{} selects no observations",
            window.start, window.end
        ))
    })?;
    Ok(volumes.iter().map(|&v| u8::from(v > med)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentimentSeries {
    pub dates: Vec<NaiveDate>,
    pub fear_sent: Vec<f64>,
    pub d_fear: Vec<u8>,
}

impl SentimentSeries {
    pub fn build(volumes: &VolumeSeries, window: DateRange) -> Result<Self> {
        let fear_sent = volumes
            .volumes
            .iter()
            .map(|&v| fear_sentiment(v))
            .collect::<Result<Vec<_>>>()?;
        let d_fear = fear_dummy(&volumes.dates, &volumes.volumes, window)?;
        Ok(Self { dates: volumes.dates.clone(), fear_sent, d_fear })
    }

    /// Panel inputs labelled `fearSent` and `D_fear`.
    pub fn to_dated_series(&self) -> [DatedSeries; 2] {
        [
            DatedSeries::dense("fearSent", self.dates.clone(), &self.fear_sent),
            DatedSeries::dense(
                "D_fear",
                self.dates.clone(),
                &self.d_fear.iter().map(|&d| f64::from(d)).collect::<Vec<_>>(),
            ),
        ]
    }
}
