//! Trading-day alignment of mixed-calendar series.
//!
//! Every output column lives on the trading-day index. A request for label `L`
//! at lag `k` reads, on trading day `i`, the value of `L` on the calendar date
//! of trading day `i - k`. Lags therefore count trading days, and a calendar
//! series is sampled on each trading day's own date (growth accumulated over a
//! weekend lands on Monday's calendar value).

use std::collections::{BTreeMap, HashMap};

use chrono::NaiveDate;

use super::series::DatedSeries;
use crate::error::{Error, Result};

/// Columnar table on trading days. Missing cells are `None`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlignedPanel {
    dates: Vec<NaiveDate>,
    columns: BTreeMap<String, Vec<Option<f64>>>,
}

/// Column label for `label` lagged by `lag` trading days.
pub fn lagged_label(label: &str, lag: usize) -> String {
    if lag == 0 {
        label.to_string()
    } else {
        format!("{label}_lag{lag}")
    }
}

/// Column label for the product of two columns.
pub fn interaction_label(a: &str, b: &str) -> String {
    format!("{a}:{b}")
}

/// One output column of [`align_panel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PanelRequest {
    /// `label` shifted by `lag` trading days, stored under [`lagged_label`].
    Column { label: String, lag: usize },
    /// Elementwise product of two previously produced output columns,
    /// stored under [`interaction_label`].
    Interaction(String, String),
}

impl PanelRequest {
    pub fn column(label: impl Into<String>, lag: usize) -> Self {
        Self::Column { label: label.into(), lag }
    }
}

impl AlignedPanel {
    pub fn new(dates: Vec<NaiveDate>) -> Self {
        Self { dates, columns: BTreeMap::new() }
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.columns.keys().map(String::as_str)
    }

    pub fn column(&self, label: &str) -> Option<&[Option<f64>]> {
        self.columns.get(label).map(Vec::as_slice)
    }

    pub fn insert_column(&mut self, label: impl Into<String>, values: Vec<Option<f64>>) -> Result<()> {
        let label = label.into();
        if values.len() != self.dates.len() {
            return Err(Error::InvalidInput(format!(
                "column `{label}` has {} rows, panel has {}",
                values.len(),
                self.dates.len()
            )));
        }
        self.columns.insert(label, values);
        Ok(())
    }

    pub fn insert_dense(&mut self, label: impl Into<String>, values: &[f64]) -> Result<()> {
        self.insert_column(label, values.iter().copied().map(Some).collect())
    }

    /// Adds `a:b` as the elementwise product; returns the new label.
    pub fn add_interaction(&mut self, a: &str, b: &str) -> Result<String> {
        let ca = self.column(a).ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
        let cb = self.column(b).ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
        let product = ca
            .iter()
            .zip(cb)
            .map(|(x, y)| Some((*x)? * (*y)?))
            .collect();
        let label = interaction_label(a, b);
        self.columns.insert(label.clone(), product);
        Ok(label)
    }

    /// Row mask: true where every listed column is present.
    pub fn usable_rows(&self, labels: &[&str]) -> Result<Vec<bool>> {
        let cols = labels
            .iter()
            .map(|l| self.column(l).ok_or_else(|| Error::UnknownLabel(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..self.len()).map(|i| cols.iter().all(|c| c[i].is_some())).collect())
    }
}

/// Builds a trading-day panel from labelled series.
pub fn align_panel(
    trading: &[NaiveDate],
    series: &[DatedSeries],
    requests: &[PanelRequest],
) -> Result<AlignedPanel> {
    let lookup: HashMap<&str, HashMap<NaiveDate, Option<f64>>> = series
        .iter()
        .map(|s| {
            let m = s.dates.iter().copied().zip(s.values.iter().copied()).collect();
            (s.label.as_str(), m)
        })
        .collect();

    let mut panel = AlignedPanel::new(trading.to_vec());
    for req in requests {
        match req {
            PanelRequest::Column { label, lag } => {
                let by_date = lookup
                    .get(label.as_str())
                    .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
                if *lag >= trading.len() {
                    return Err(Error::LagTooLong {
                        label: label.clone(),
                        lag: *lag,
                        available: trading.len(),
                    });
                }
                let values = (0..trading.len())
                    .map(|i| {
                        let src = i.checked_sub(*lag)?;
                        by_date.get(&trading[src]).copied().flatten()
                    })
                    .collect();
                panel.columns.insert(lagged_label(label, *lag), values);
            }
            PanelRequest::Interaction(a, b) => {
                panel.add_interaction(a, b)?;
            }
        }
    }
    Ok(panel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::series::weekdays_from;
    use chrono::Days;

    fn d(s: &str) -> NaiveDate {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
    }

    #[test]
    fn identity_alignment() {
        let dates = weekdays_from(d("2020-01-06"), 3);
        let s = DatedSeries::dense("x", dates.clone(), &[1.0, 2.0, 3.0]);
        let p = align_panel(&dates, &[s], &[PanelRequest::column("x", 0)]).unwrap();
        assert_eq!(p.column("x").unwrap(), &[Some(1.0), Some(2.0), Some(3.0)]);
    }

    #[test]
    fn lag_one_shifts() {
        let dates = weekdays_from(d("2020-01-06"), 3);
        let s = DatedSeries::dense("x", dates.clone(), &[1.0, 2.0, 3.0]);
        let p = align_panel(&dates, &[s], &[PanelRequest::column("x", 1)]).unwrap();
        assert_eq!(p.column("x_lag1").unwrap(), &[None, Some(1.0), Some(2.0)]);
    }

    #[test]
    fn interaction_product() {
        let dates = weekdays_from(d("2020-01-06"), 2);
        let a = DatedSeries::dense("a", dates.clone(), &[1.0, 2.0]);
        let b = DatedSeries::dense("b", dates.clone(), &[3.0, 4.0]);
        let p = align_panel(
            &dates,
            &[a, b],
            &[
                PanelRequest::column("a", 0),
                PanelRequest::column("b", 0),
                PanelRequest::Interaction("a".into(), "b".into()),
            ],
        )
        .unwrap();
        assert_eq!(p.column("a:b").unwrap(), &[Some(3.0), Some(8.0)]);
    }

    #[test]
    fn calendar_series_sampled_on_trading_dates() {
        // Friday 2020-01-10, Monday 2020-01-13.
        let trading = vec![d("2020-01-10"), d("2020-01-13")];
        let cal: Vec<NaiveDate> = (0..5).map(|i| d("2020-01-09") + Days::new(i)).collect();
        let s = DatedSeries::dense("g", cal, &[9.0, 10.0, 11.0, 12.0, 13.0]);
        let p = align_panel(
            &trading,
            &[s],
            &[PanelRequest::column("g", 0), PanelRequest::column("g", 1)],
        )
        .unwrap();
        assert_eq!(p.column("g").unwrap(), &[Some(10.0), Some(13.0)]);
        assert_eq!(p.column("g_lag1").unwrap(), &[None, Some(10.0)]);
        assert_eq!(p.usable_rows(&["g", "g_lag1"]).unwrap(), vec![false, true]);
    }

    #[test]
    fn uncovered_dates_are_missing() {
        let trading = weekdays_from(d("2020-01-06"), 3);
        let s = DatedSeries::dense("x", vec![trading[2]], &[5.0]);
        let p = align_panel(&trading, &[s], &[PanelRequest::column("x", 0)]).unwrap();
        assert_eq!(p.column("x").unwrap(), &[None, None, Some(5.0)]);
    }

    #[test]
    fn errors() {
        let dates = weekdays_from(d("2020-01-06"), 2);
        let s = DatedSeries::dense("x", dates.clone(), &[1.0, 2.0]);
        assert_eq!(
            align_panel(&dates, std::slice::from_ref(&s), &[PanelRequest::column("y", 0)]).unwrap_err(),
            Error::UnknownLabel("y".into())
        );
        assert!(matches!(
            align_panel(&dates, &[s], &[PanelRequest::column("x", 2)]).unwrap_err(),
            Error::LagTooLong { lag: 2, .. }
        ));
    }
}
