use std::io::{Read, Write};

use chrono::{Days, NaiveDate};

use super::csv::{parse_float, read_rows, sort_unique};
use crate::error::{Error, Result};

/// Date-indexed daily returns on trading days.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

impl ReturnSeries {
    /// Validates length, ordering and finiteness.
    pub fn new(dates: Vec<NaiveDate>, values: Vec<f64>) -> Result<Self> {
        if dates.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "{} dates but {} values",
                dates.len(),
                values.len()
            )));
        }
        if values.len() < 2 {
            return Err(Error::TooShort { needed: 2, got: values.len() });
        }
        for w in dates.windows(2) {
            if w[1] <= w[0] {
                return Err(if w[1] == w[0] {
                    Error::DuplicateDate(w[1])
                } else {
                    Error::InvalidInput(format!("dates not ascending at {}", w[1]))
                });
            }
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite return at {}", dates[i])));
        }
        Ok(Self { dates, values })
    }

    /// Series on synthetic weekday dates starting at `start` (moved forward to a weekday).
    pub fn on_weekdays(start: NaiveDate, values: Vec<f64>) -> Result<Self> {
        let dates = weekdays_from(start, values.len());
        Self::new(dates, values)
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Writes the `date,return` CSV form read back by [`load_return_csv`].
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "date,return")?;
        for (d, v) in self.dates.iter().zip(&self.values) {
            writeln!(out, "{},{}", d.format("%Y-%m-%d"), fmt_f64(*v))?;
        }
        Ok(())
    }
}

/// `n` consecutive Monday–Friday dates from `start` onward.
pub fn weekdays_from(start: NaiveDate, n: usize) -> Vec<NaiveDate> {
    use chrono::Datelike;
    let mut out = Vec::with_capacity(n);
    let mut d = start;
    while out.len() < n {
        if d.weekday().number_from_monday() <= 5 {
            out.push(d);
        }
        d = d + Days::new(1);
    }
    out
}

/// Shortest round-trip representation of a finite float.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

pub fn load_return_csv<R: Read>(source: R) -> Result<ReturnSeries> {
    let mut rows = read_rows(source, "return")?;
    sort_unique(&mut rows)?;
    let values = rows.iter().map(parse_float).collect::<Result<Vec<_>>>()?;
    let dates = rows.iter().map(|r| r.date).collect();
    ReturnSeries::new(dates, values)
}

/// Daily counts on consecutive calendar dates.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSeries {
    dates: Vec<NaiveDate>,
    counts: Vec<u64>,
}

impl CountSeries {
    pub fn new(dates: Vec<NaiveDate>, counts: Vec<u64>) -> Result<Self> {
        if dates.len() != counts.len() {
            return Err(Error::InvalidInput(format!(
                "{} dates but {} counts",
                dates.len(),
                counts.len()
            )));
        }
        check_consecutive(&dates)?;
        Ok(Self { dates, counts })
    }

    /// Consecutive series starting at `start`.
    pub fn from_start(start: NaiveDate, counts: Vec<u64>) -> Self {
        let dates = (0..counts.len() as u64).map(|i| start + Days::new(i)).collect();
        Self { dates, counts }
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Prepends zero-count days so the series starts on or before `first`.
    /// Days before the first reported count are treated as zero-case days.
    pub fn extend_back_with_zeros(&self, first: NaiveDate) -> Self {
        let Some(&start) = self.dates.first() else {
            return self.clone();
        };
        if first >= start {
            return self.clone();
        }
        let pad = (start - first).num_days() as usize;
        let mut counts = vec![0; pad];
        counts.extend_from_slice(&self.counts);
        Self::from_start(first, counts)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "date,count")?;
        for (d, c) in self.dates.iter().zip(&self.counts) {
            writeln!(out, "{},{}", d.format("%Y-%m-%d"), c)?;
        }
        Ok(())
    }
}

fn check_consecutive(dates: &[NaiveDate]) -> Result<()> {
    for w in dates.windows(2) {
        if w[1] == w[0] {
            return Err(Error::DuplicateDate(w[1]));
        }
        if w[1] != w[0] + Days::new(1) {
            return Err(Error::CalendarGap { prev: w[0], next: w[1] });
        }
    }
    Ok(())
}

pub fn load_count_csv<R: Read>(source: R) -> Result<CountSeries> {
    let mut rows = read_rows(source, "count")?;
    sort_unique(&mut rows)?;
    let mut counts = Vec::with_capacity(rows.len());
    for row in &rows {
        let c: i64 = row.field.parse().map_err(|_| Error::MalformedRow {
            line: row.line,
            message: format!("invalid integer count `{}`", row.field),
        })?;
        if c < 0 {
            return Err(Error::NegativeCount { line: row.line, value: c });
        }
        counts.push(c as u64);
    }
    let dates = rows.iter().map(|r| r.date).collect();
    CountSeries::new(dates, counts)
}

/// How zero counts enter the log growth rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroPolicy {
    /// ln(c_t + 1) − ln(c_{t−1} + 1); always finite.
    #[default]
    Log1p,
    /// ln c_t − ln c_{t−1}; pairs containing a zero are missing.
    Skip,
}

impl std::str::FromStr for ZeroPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log1p" => Ok(Self::Log1p),
            "skip" => Ok(Self::Skip),
            other => Err(Error::InvalidInput(format!(
                "unknown zero policy `{other}` (expected log1p or skip)"
            ))),
        }
    }
}

/// Log growth rates, dated by the later day of each pair.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSeries {
    pub dates: Vec<NaiveDate>,
    pub values: Vec<Option<f64>>,
}

pub fn log_growth(counts: &CountSeries, zero_policy: ZeroPolicy) -> Result<GrowthSeries> {
    if counts.len() < 2 {
        return Err(Error::TooShort { needed: 2, got: counts.len() });
    }
    let values = counts
        .counts
        .windows(2)
        .map(|w| {
            let (prev, cur) = (w[0] as f64, w[1] as f64);
            match zero_policy {
                ZeroPolicy::Log1p => Some(cur.ln_1p() - prev.ln_1p()),
                ZeroPolicy::Skip if w[0] == 0 || w[1] == 0 => None,
                ZeroPolicy::Skip => Some(cur.ln() - prev.ln()),
            }
        })
        .collect();
    Ok(GrowthSeries { dates: counts.dates[1..].to_vec(), values })
}

/// A labelled series on arbitrary dates with optional gaps; the input unit of panel alignment.
#[derive(Debug, Clone, PartialEq)]
pub struct DatedSeries {
    pub label: String,
    pub dates: Vec<NaiveDate>,
    pub values: Vec<Option<f64>>,
}

impl DatedSeries {
    pub fn new(label: impl Into<String>, dates: Vec<NaiveDate>, values: Vec<Option<f64>>) -> Self {
        Self { label: label.into(), dates, values }
    }

    pub fn dense(label: impl Into<String>, dates: Vec<NaiveDate>, values: &[f64]) -> Self {
        Self::new(label, dates, values.iter().copied().map(Some).collect())
    }

    pub fn from_growth(label: impl Into<String>, growth: &GrowthSeries) -> Self {
        Self::new(label, growth.dates.clone(), growth.values.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> NaiveDate {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
    }

    #[test]
    fn loads_returns() {
        let s = load_return_csv("date,return\n2020-01-02,0.01\n2020-01-03,-0.02".as_bytes()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.values(), &[0.01, -0.02]);
    }

    #[test]
    fn sorts_returns_and_accepts_crlf() {
        let s = load_return_csv("date,return\r\n2020-01-03,-0.02\r\n2020-01-02,0.01\r\n".as_bytes())
            .unwrap();
        assert_eq!(s.dates(), &[d("2020-01-02"), d("2020-01-03")]);
        assert_eq!(s.values(), &[0.01, -0.02]);
    }

    #[test]
    fn duplicate_return_date() {
        let e = load_return_csv("date,return\n2020-01-02,0.01\n2020-01-02,0.03\n".as_bytes())
            .unwrap_err();
        assert_eq!(e, Error::DuplicateDate(d("2020-01-02")));
    }

    #[test]
    fn empty_returns_too_short() {
        let e = load_return_csv("date,return\n".as_bytes()).unwrap_err();
        assert_eq!(e, Error::TooShort { needed: 2, got: 0 });
    }

    #[test]
    fn malformed_row_reports_line() {
        let e = load_return_csv("date,return\n2020-01-02,0.01\n2020-01-03,abc\n".as_bytes())
            .unwrap_err();
        assert!(matches!(e, Error::MalformedRow { line: 3, .. }), "{e:?}");
        let e = load_return_csv("date,return\n2020-01-02,0.01\n2020-01-03,NaN\n".as_bytes())
            .unwrap_err();
        assert_eq!(e, Error::NonFinite { line: 3 });
        let e = load_return_csv("date,return\n2020/01/02,0.01\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::MalformedRow { line: 2, .. }));
    }

    #[test]
    fn header_required() {
        let e = load_return_csv("2020-01-02,0.01\n2020-01-03,0.02\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::BadHeader { .. }));
    }

    #[test]
    fn loads_counts() {
        let s = load_count_csv("date,count\n2020-01-01,10\n2020-01-02,12\n".as_bytes()).unwrap();
        assert_eq!(s.counts(), &[10, 12]);
    }

    #[test]
    fn count_gap_and_negative() {
        let e = load_count_csv("date,count\n2020-01-01,10\n2020-01-03,12\n".as_bytes()).unwrap_err();
        assert_eq!(e, Error::CalendarGap { prev: d("2020-01-01"), next: d("2020-01-03") });
        let e = load_count_csv("date,count\n2020-01-01,-5\n".as_bytes()).unwrap_err();
        assert_eq!(e, Error::NegativeCount { line: 2, value: -5 });
    }

    #[test]
    fn growth_examples() {
        let start = d("2020-01-01");
        let g = log_growth(&CountSeries::from_start(start, vec![100, 100]), ZeroPolicy::Log1p).unwrap();
        assert_eq!(g.values, vec![Some(0.0)]);
        let g = log_growth(&CountSeries::from_start(start, vec![100, 200]), ZeroPolicy::Log1p).unwrap();
        assert!((g.values[0].unwrap() - 0.68818).abs() < 1e-5);
        assert!((g.values[0].unwrap() - (201.0f64 / 101.0).ln()).abs() < 1e-14);
        let g = log_growth(&CountSeries::from_start(start, vec![0, 5]), ZeroPolicy::Log1p).unwrap();
        assert!((g.values[0].unwrap() - 1.79176).abs() < 1e-5);
        assert_eq!(g.dates, vec![d("2020-01-02")]);
    }

    #[test]
    fn growth_skip_policy() {
        let s = CountSeries::from_start(d("2020-01-01"), vec![0, 5, 10]);
        let g = log_growth(&s, ZeroPolicy::Skip).unwrap();
        assert_eq!(g.values[0], None);
        assert!((g.values[1].unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn growth_too_short() {
        let s = CountSeries::from_start(d("2020-01-01"), vec![3]);
        assert_eq!(log_growth(&s, ZeroPolicy::Log1p).unwrap_err(), Error::TooShort { needed: 2, got: 1 });
    }

    #[test]
    fn zero_padding() {
        let s = CountSeries::from_start(d("2020-01-03"), vec![4, 6]);
        let p = s.extend_back_with_zeros(d("2020-01-01"));
        assert_eq!(p.counts(), &[0, 0, 4, 6]);
        assert_eq!(p.dates()[0], d("2020-01-01"));
    }

    #[test]
    fn weekday_dates_skip_weekends() {
        // 2020-01-03 is a Friday.
        let ds = weekdays_from(d("2020-01-03"), 3);
        assert_eq!(ds, vec![d("2020-01-03"), d("2020-01-06"), d("2020-01-07")]);
    }

    #[test]
    fn return_csv_roundtrip() {
        let s = ReturnSeries::on_weekdays(d("2020-01-01"), vec![0.1, -1e-7, 0.0123456789]).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        assert_eq!(load_return_csv(buf.as_slice()).unwrap(), s);
    }
}
