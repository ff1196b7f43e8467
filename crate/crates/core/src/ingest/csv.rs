//! Two-column `date,<value>` CSV readers shared by every loader.

use std::io::Read;

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// A raw `(line, date, field)` triple, still unparsed on the value side.
pub(crate) struct RawRow {
    pub line: u64,
    pub date: NaiveDate,
    pub field: String,
}

pub(crate) fn read_rows<R: Read>(source: R, value_header: &str) -> Result<Vec<RawRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(source);

    let expected = format!("date,{value_header}");
    let headers = reader.headers().map_err(|e| csv_error(e, 1))?.clone();
    let found: Vec<&str> = headers.iter().collect();
    if found.len() != 2 || found[0] != "date" || found[1] != value_header {
        return Err(Error::BadHeader { expected, found: found.join(",") });
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(e, 0))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::MalformedRow {
                line,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let date = parse_date(&record[0]).ok_or_else(|| Error::MalformedRow {
            line,
            message: format!("invalid ISO-8601 date `{}`", &record[0]),
        })?;
        rows.push(RawRow { line, date, field: record[1].to_string() });
    }
    Ok(rows)
}

pub(crate) fn parse_date(s: &str) -> Option<NaiveDate> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").ok()
}

pub(crate) fn parse_float(row: &RawRow) -> Result<f64> {
    let v: f64 = row.field.parse().map_err(|_| Error::MalformedRow {
        line: row.line,
        message: format!("invalid number `{}`", row.field),
    })?;
    if !v.is_finite() {
        return Err(Error::NonFinite { line: row.line });
    }
    Ok(v)
}

/// Sort by date and reject duplicates.
pub(crate) fn sort_unique(rows: &mut [RawRow]) -> Result<()> {
    rows.sort_by_key(|r| r.date);
    for w in rows.windows(2) {
        if w[0].date == w[1].date {
            return Err(Error::DuplicateDate(w[1].date));
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error, fallback_line: u64) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(fallback_line);
    Error::MalformedRow { line, message: e.to_string() }
}
