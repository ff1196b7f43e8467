//! CSV and markdown renderings of regression results.

use std::fmt::Write as _;

use super::RegressionResult;
use crate::dist::significance_stars;
use crate::ingest::fmt_f64;

pub const CSV_HEADER: &str = "model,term,coef,stderr,tstat,p_value,n_used,r2";

/// One CSV row per coefficient, header included.
pub fn results_csv(results: &[(&str, &RegressionResult)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_HEADER}");
    for (label, r) in results {
        for i in 0..r.names.len() {
            let _ = writeln!(
                out,
                "{label},{},{},{},{},{},{},{}",
                r.names[i],
                fmt_f64(r.coef[i]),
                fmt_f64(r.stderr[i]),
                fmt_f64(r.tstat[i]),
                fmt_f64(r.p_values[i]),
                r.n_used,
                fmt_f64(r.r2)
            );
        }
    }
    out
}

/// `value*** (t)` cell.
pub fn coefficient_cell(r: &RegressionResult, i: usize) -> String {
    format!("{:.4}{} ({:.2})", r.coef[i], significance_stars(r.p_values[i]), r.tstat[i])
}

/// Side-by-side table: one column per model, one row per distinct term, then N and R².
pub fn markdown_table(results: &[(&str, &RegressionResult)]) -> String {
    let mut terms: Vec<&str> = Vec::new();
    for (_, r) in results {
        for n in &r.names {
            if !terms.contains(&n.as_str()) {
                terms.push(n);
            }
        }
    }
    let mut out = String::new();
    let _ = write!(out, "| Variables |");
    for (label, _) in results {
        let _ = write!(out, " {label} |");
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "|---|{}", "---|".repeat(results.len()));
    for term in &terms {
        let _ = write!(out, "| {term} |");
        for (_, r) in results {
            let cell = r.get(term).map(|i| coefficient_cell(r, i)).unwrap_or_default();
            let _ = write!(out, " {cell} |");
        }
        let _ = writeln!(out);
    }
    let _ = write!(out, "| N |");
    for (_, r) in results {
        let _ = write!(out, " {} |", r.n_used);
    }
    let _ = writeln!(out);
    let _ = write!(out, "| R² |");
    for (_, r) in results {
        let _ = write!(out, " {:.3} |", r.r2);
    }
    let _ = writeln!(out);
    let _ = writeln!(out);
    let _ = writeln!(out, "***, **, * denote significance at the 1%, 5% and 10% levels; t-statistics in parentheses.");
    out
}
