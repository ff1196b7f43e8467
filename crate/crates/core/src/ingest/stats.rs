use crate::dist;
use crate::error::{Error, Result};

/// Which sample skewness to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SkewnessEstimator {
    /// g1 = m3 / m2^(3/2) with 1/n central moments.
    #[default]
    Moment,
    /// G1 = g1 · sqrt(n(n−1)) / (n−2).
    BiasCorrected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescriptiveStats {
    pub n: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Sample standard deviation, n−1 denominator.
    pub std: f64,
    /// `None` for a constant sample.
    pub skewness: Option<f64>,
}

pub fn descriptive_stats(values: &[f64]) -> Result<DescriptiveStats> {
    descriptive_stats_with(values, SkewnessEstimator::Moment)
}

pub fn descriptive_stats_with(values: &[f64], estimator: SkewnessEstimator) -> Result<DescriptiveStats> {
    let n = values.len();
    if n < 2 {
        return Err(Error::TooShort { needed: 2, got: n });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite value in sample".into()));
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let (m2, m3) = values.iter().fold((0.0, 0.0), |(s2, s3), &v| {
        let d = v - mean;
        (s2 + d * d, s3 + d * d * d)
    });
    let std = (m2 / (nf - 1.0)).sqrt();
    let (m2, m3) = (m2 / nf, m3 / nf);
    let skewness = if m2 > 0.0 {
        let g1 = m3 / m2.powf(1.5);
        match estimator {
            SkewnessEstimator::Moment => Some(g1),
            SkewnessEstimator::BiasCorrected if n > 2 => Some(g1 * (nf * (nf - 1.0)).sqrt() / (nf - 2.0)),
            SkewnessEstimator::BiasCorrected => None,
        }
    } else {
        None
    };
    // Rounding can push the mean one ulp outside [min, max] for near-constant data.
    let mean = mean.clamp(min, max);
    Ok(DescriptiveStats { n, mean, min, max, std, skewness })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchTest {
    pub t: f64,
    /// Two-sided.
    pub p_value: f64,
    pub df: f64,
}

/// Unequal-variance two-sample t-test with Welch–Satterthwaite degrees of freedom.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<WelchTest> {
    let (ma, va, na) = mean_var(a)?;
    let (mb, vb, nb) = mean_var(b)?;
    if va == 0.0 || vb == 0.0 {
        return Err(Error::Degenerate("zero variance sample in Welch test".into()));
    }
    let (qa, qb) = (va / na, vb / nb);
    let se2 = qa + qb;
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
    Ok(WelchTest { t, p_value: dist::student_t_two_sided(t, df), df })
}

fn mean_var(x: &[f64]) -> Result<(f64, f64, f64)> {
    if x.len() < 2 {
        return Err(Error::TooShort { needed: 2, got: x.len() });
    }
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0);
    Ok((m, v, n))
}
