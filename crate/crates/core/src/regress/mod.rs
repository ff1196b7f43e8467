//! Declarative linear models over an aligned panel, estimated by OLS.

mod models;
mod ols;
pub mod report;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ingest::{interaction_label, lagged_label, AlignedPanel};

pub use models::{model_catalog, COLUMN_LABELS};
pub use ols::{ols_fit, CovarianceKind, DesignMatrix, RegressionResult};

/// Label of the constant column.
pub const INTERCEPT: &str = "Intercept";

/// One regressor: `variable` lagged by `lag` trading days, optionally multiplied by
/// another lagged variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub variable: String,
    pub lag: usize,
    pub interact_with: Option<(String, usize)>,
}

impl Term {
    pub fn new(variable: impl Into<String>, lag: usize) -> Self {
        Self { variable: variable.into(), lag, interact_with: None }
    }

    pub fn interaction(a: impl Into<String>, lag_a: usize, b: impl Into<String>, lag_b: usize) -> Self {
        Self { variable: a.into(), lag: lag_a, interact_with: Some((b.into(), lag_b)) }
    }

    pub fn label(&self) -> String {
        let base = lagged_label(&self.variable, self.lag);
        match &self.interact_with {
            Some((b, lag)) => interaction_label(&base, &lagged_label(b, *lag)),
            None => base,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub dependent: String,
    pub terms: Vec<Term>,
    pub intercept: bool,
}

impl ModelSpec {
    pub fn new(dependent: impl Into<String>, terms: Vec<Term>) -> Self {
        Self { dependent: dependent.into(), terms, intercept: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.terms.is_empty() && !self.intercept {
            return Err(Error::InvalidInput("model has no regressors".into()));
        }
        let mut seen = HashSet::new();
        for t in &self.terms {
            if !seen.insert(t) {
                return Err(Error::InvalidInput(format!("duplicate term `{}`", t.label())));
            }
        }
        Ok(())
    }
}

/// Response and regressors after lagging and listwise deletion.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    pub y: Vec<f64>,
    pub x: DesignMatrix,
    /// Panel row index of every retained observation.
    pub rows: Vec<usize>,
}

impl Design {
    pub fn n_used(&self) -> usize {
        self.y.len()
    }
}

fn shifted(panel: &AlignedPanel, label: &str, lag: usize) -> Result<Vec<Option<f64>>> {
    let col = panel.column(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    Ok((0..col.len()).map(|i| i.checked_sub(lag).and_then(|j| col[j])).collect())
}

/// Materializes lags and interactions, then drops every row with a missing value.
pub fn build_design(panel: &AlignedPanel, spec: &ModelSpec) -> Result<Design> {
    spec.validate()?;
    let y = shifted(panel, &spec.dependent, 0)?;
    let mut names = Vec::new();
    let mut raw = Vec::new();
    for t in &spec.terms {
        let a = shifted(panel, &t.variable, t.lag)?;
        let col = match &t.interact_with {
            Some((b, lag)) => {
                let b = shifted(panel, b, *lag)?;
                a.iter().zip(&b).map(|(x, y)| Some((*x)? * (*y)?)).collect()
            }
            None => a,
        };
        names.push(t.label());
        raw.push(col);
    }

    let rows: Vec<usize> = (0..panel.len())
        .filter(|&i| y[i].is_some() && raw.iter().all(|c| c[i].is_some()))
        .collect();
    if rows.is_empty() {
        return Err(Error::InsufficientData("every row has a missing value".into()));
    }
    let pick = |c: &[Option<f64>]| rows.iter().map(|&i| c[i].expect("filtered")).collect::<Vec<f64>>();
    let mut columns: Vec<Vec<f64>> = raw.iter().map(|c| pick(c)).collect();
    if spec.intercept {
        names.insert(0, INTERCEPT.to_string());
        columns.insert(0, vec![1.0; rows.len()]);
    }
    Ok(Design {
        y: pick(&y),
        x: DesignMatrix { names, columns, intercept: spec.intercept },
        rows,
    })
}

pub fn run_model(panel: &AlignedPanel, spec: &ModelSpec) -> Result<RegressionResult> {
    run_model_with(panel, spec, CovarianceKind::Classical)
}

pub fn run_model_with(panel: &AlignedPanel, spec: &ModelSpec, cov: CovarianceKind) -> Result<RegressionResult> {
    let d = build_design(panel, spec)?;
    ols_fit(&d.y, &d.x, cov)
}
