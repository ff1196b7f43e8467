//! Bivariate VAR lag selection by BIC and Granger non-causality F-tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::dist::{f_sf, significance_stars};
use crate::error::{Error, Result};
use crate::ingest::fmt_f64;
use crate::regress::{ols_fit, CovarianceKind, DesignMatrix};

/// Default upper bound of the lag search, in observations.
pub const DEFAULT_P_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct GrangerResult {
    /// `(cause, effect)`: the null is that `cause` does not Granger-cause `effect`.
    pub direction: (String, String),
    pub p: usize,
    pub f_stat: f64,
    pub p_value: f64,
    /// `(p, T_eff - 2p - 1)` with `T_eff = T - p`.
    pub df: (usize, usize),
    pub bic_by_lag: BTreeMap<usize, f64>,
    pub rss_restricted: f64,
    pub rss_unrestricted: f64,
}

/// Regressors for `y_t` on rows `start..T`: intercept, `y` lags `1..=p`, then `x` lags `1..=p` if requested.
fn lag_design(y: &[f64], x: &[f64], p: usize, start: usize, with_x: bool) -> DesignMatrix {
    let rows = start..y.len();
    let mut names = vec!["const".to_string()];
    let mut columns = vec![vec![1.0; rows.len()]];
    let mut push = |label: &str, s: &[f64]| {
        for l in 1..=p {
            names.push(format!("{label}_lag{l}"));
            columns.push(rows.clone().map(|t| s[t - l]).collect());
        }
    };
    push("y", y);
    if with_x {
        push("x", x);
    }
    DesignMatrix { names, columns, intercept: true }
}

fn check_lengths(y: &[f64], x: &[f64]) -> Result<()> {
    if y.len() != x.len() {
        return Err(Error::InvalidInput(format!("series lengths differ: {} vs {}", y.len(), x.len())));
    }
    if y.iter().chain(x).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("series contain non-finite values".into()));
    }
    Ok(())
}

/// Residuals of an OLS fit, recomputed from the coefficients.
fn residuals(y: &[f64], x: &DesignMatrix) -> Result<Vec<f64>> {
    let fit = ols_fit(y, x, CovarianceKind::Classical)?;
    Ok((0..y.len())
        .map(|t| y[t] - x.columns.iter().zip(&fit.coef).map(|(c, b)| c[t] * b).sum::<f64>())
        .collect())
}

/// Chooses the VAR order in `1..=p_max` minimizing
/// `ln det Sigma + ln(T*) k / T*`, all candidates fitted on the rows after the first `p_max`.
pub fn select_lag_bic(y: &[f64], x: &[f64], p_max: usize) -> Result<(usize, BTreeMap<usize, f64>)> {
    check_lengths(y, x)?;
    let t = y.len();
    if p_max == 0 || p_max > t / 4 {
        return Err(Error::InsufficientData(format!(
            "{t} observations allow a lag bound of at most {}; got {p_max}",
            t / 4
        )));
    }
    let t_star = (t - p_max) as f64;
    let mut bic = BTreeMap::new();
    for p in 1..=p_max {
        let design = lag_design(y, x, p, p_max, true);
        let swapped = lag_design(x, y, p, p_max, true);
        let ey = residuals(&y[p_max..], &design)?;
        let ex = residuals(&x[p_max..], &swapped)?;
        let s_yy = ey.iter().map(|e| e * e).sum::<f64>() / t_star;
        let s_xx = ex.iter().map(|e| e * e).sum::<f64>() / t_star;
        let s_xy = ey.iter().zip(&ex).map(|(a, b)| a * b).sum::<f64>() / t_star;
        let det = s_yy * s_xx - s_xy * s_xy;
        if !(det > 0.0) {
            return Err(Error::Degenerate(format!("singular residual covariance at lag {p}")));
        }
        let k = (2 * (1 + 2 * p)) as f64;
        bic.insert(p, det.ln() + t_star.ln() * k / t_star);
    }
    let best = *bic
        .iter()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(b.0)))
        .expect("at least one candidate")
        .0;
    Ok((best, bic))
}

/// F-test that the `p` lags of `x` add nothing to an AR(p) for `y`, on all `T - p` usable rows.
pub fn granger_f(y: &[f64], x: &[f64], p: usize) -> Result<GrangerResult> {
    check_lengths(y, x)?;
    if p == 0 {
        return Err(Error::InvalidInput("lag order must be at least 1".into()));
    }
    let t_eff = y.len().saturating_sub(p);
    if t_eff <= 2 * p + 1 {
        return Err(Error::InsufficientData(format!(
            "{} observations leave no residual degrees of freedom at lag {p}",
            y.len()
        )));
    }
    let df2 = t_eff - 2 * p - 1;
    let yy = &y[p..];
    let restricted = ols_fit(yy, &lag_design(y, x, p, p, false), CovarianceKind::Classical)?;
    let rss_r = restricted.rss;

    // Lags of a constant `x` lie in the span of the intercept.
    let x_sample = &x[..y.len() - 1];
    let rss_u = if x_sample.iter().all(|v| *v == x_sample[0]) {
        rss_r
    } else {
        ols_fit(yy, &lag_design(y, x, p, p, true), CovarianceKind::Classical)?.rss
    };
    let f_stat = (((rss_r - rss_u) / p as f64) / (rss_u / df2 as f64)).max(0.0);
    let (f_stat, p_value) = if rss_u > 0.0 {
        (f_stat, f_sf(f_stat, p as f64, df2 as f64))
    } else if rss_r > 0.0 {
        (f64::INFINITY, 0.0)
    } else {
        (0.0, 1.0)
    };
    Ok(GrangerResult {
        direction: ("x".into(), "y".into()),
        p,
        f_stat,
        p_value,
        df: (p, df2),
        bic_by_lag: BTreeMap::new(),
        rss_restricted: rss_r,
        rss_unrestricted: rss_u,
    })
}

/// Lag selection followed by the F-test of `cause -> effect`.
pub fn granger_causality(
    cause: (&str, &[f64]),
    effect: (&str, &[f64]),
    p_max: usize,
) -> Result<GrangerResult> {
    let (p, bic) = select_lag_bic(effect.1, cause.1, p_max)?;
    let mut r = granger_f(effect.1, cause.1, p)?;
    r.direction = (cause.0.to_string(), effect.0.to_string());
    r.bic_by_lag = bic;
    Ok(r)
}

pub const CSV_HEADER: &str = "cause,effect,p,f_stat,p_value,df1,df2";

pub fn results_csv(results: &[GrangerResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_HEADER}");
    for r in results {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.direction.0,
            r.direction.1,
            r.p,
            fmt_f64(r.f_stat),
            fmt_f64(r.p_value),
            r.df.0,
            r.df.1
        );
    }
    out
}

pub fn markdown_table(results: &[GrangerResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| Null hypothesis | Lag | F-statistic | p-value |");
    let _ = writeln!(out, "|---|---|---|---|");
    for r in results {
        let _ = writeln!(
            out,
            "| {} does not Granger-cause {} | {} | {:.4}{} | {:.4} |",
            r.direction.0,
            r.direction.1,
            r.p,
            r.f_stat,
            significance_stars(r.p_value),
            r.p_value
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "BIC by lag:");
    let _ = writeln!(out);
    for r in results {
        let trace: Vec<String> = r.bic_by_lag.iter().map(|(p, b)| format!("{p}: {b:.6}")).collect();
        let _ = writeln!(out, "- {} -> {}: {}", r.direction.0, r.direction.1, trace.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn noise(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.random::<f64>() - 0.5).collect()
    }

    #[test]
    fn zero_cause_gives_zero_f() {
        let y = noise(200, 1);
        let r = granger_f(&y, &vec![0.0; 200], 2).unwrap();
        assert_eq!(r.f_stat, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.rss_restricted, r.rss_unrestricted);
    }

    #[test]
    fn single_candidate() {
        let (p, bic) = select_lag_bic(&noise(100, 2), &noise(100, 3), 1).unwrap();
        assert_eq!(p, 1);
        assert_eq!(bic.len(), 1);
    }

    #[test]
    fn bound_too_large() {
        assert!(matches!(select_lag_bic(&noise(40, 2), &noise(40, 3), 11), Err(Error::InsufficientData(_))));
        assert!(matches!(granger_f(&noise(5, 2), &noise(5, 3), 2), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn rss_matches_direct_regressions() {
        let y = noise(120, 4);
        let x = noise(120, 5);
        let p = 3;
        let r = granger_f(&y, &x, p).unwrap();
        // Independent design built row by row.
        let rows: Vec<usize> = (p..120).collect();
        let mut cols_u: Vec<Vec<f64>> = vec![vec![1.0; rows.len()]];
        for l in 1..=p {
            cols_u.push(rows.iter().map(|&t| y[t - l]).collect());
        }
        let cols_r = cols_u.clone();
        for l in 1..=p {
            cols_u.push(rows.iter().map(|&t| x[t - l]).collect());
        }
        let name = |c: &Vec<Vec<f64>>| (0..c.len()).map(|i| i.to_string()).collect();
        let yy: Vec<f64> = rows.iter().map(|&t| y[t]).collect();
        let u = ols_fit(&yy, &DesignMatrix { names: name(&cols_u), columns: cols_u, intercept: true }, CovarianceKind::Classical).unwrap();
        let rr = ols_fit(&yy, &DesignMatrix { names: name(&cols_r), columns: cols_r, intercept: true }, CovarianceKind::Classical).unwrap();
        assert_eq!(r.rss_unrestricted, u.rss);
        assert_eq!(r.rss_restricted, rr.rss);
        assert_eq!(r.df, (3, 120 - 3 - 7));
    }

    #[test]
    fn report_has_two_rows() {
        let y = noise(300, 6);
        let x = noise(300, 7);
        let a = granger_causality(("fearSent", &x), ("skew", &y), 4).unwrap();
        let b = granger_causality(("skew", &y), ("fearSent", &x), 4).unwrap();
        let csv = results_csv(&[a.clone(), b.clone()]);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(1).unwrap().starts_with("fearSent,skew,"));
        let md = markdown_table(&[a, b]);
        assert!(md.contains("fearSent does not Granger-cause skew"));
    }
}
