//! Tail probabilities for the test statistics used across the crate.

use statrs::distribution::{ContinuousCDF, FisherSnedecor, Normal, StudentsT};

/// Two-sided p-value of a Student-t statistic.
pub fn student_t_two_sided(t: f64, df: f64) -> f64 {
    if t.is_nan() || df.is_nan() || df <= 0.0 {
        return f64::NAN;
    }
    let dist = StudentsT::new(0.0, 1.0, df).expect("positive degrees of freedom");
    (2.0 * dist.sf(t.abs())).min(1.0)
}

/// Upper-tail probability of an F(d1, d2) statistic.
pub fn f_sf(f: f64, d1: f64, d2: f64) -> f64 {
    if f.is_nan() || d1 <= 0.0 || d2 <= 0.0 {
        return f64::NAN;
    }
    if f <= 0.0 {
        return 1.0;
    }
    let dist = FisherSnedecor::new(d1, d2).expect("positive degrees of freedom");
    dist.sf(f).clamp(0.0, 1.0)
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

/// `***`, `**`, `*` at the 1%, 5% and 10% levels.
pub fn significance_stars(p_value: f64) -> &'static str {
    if p_value < 0.01 {
        "***"
    } else if p_value < 0.05 {
        "**"
    } else if p_value < 0.10 {
        "*"
    } else {
        ""
    }
}

/// Two-sided p-value of an asymptotically normal statistic.
pub fn normal_two_sided(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    (2.0 * normal_cdf(-z.abs())).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        // Reference values from standard tables.
        assert!((student_t_two_sided(2.0, 10.0) - 0.073388).abs() < 1e-6);
        assert!((f_sf(4.0, 2.0, 10.0) - 0.052922).abs() < 1e-6);
        assert_eq!(f_sf(0.0, 1.0, 20.0), 1.0);
        assert!((normal_cdf(1.96) - 0.975002).abs() < 1e-6);
        assert!((normal_two_sided(-1.96) - 0.049996).abs() < 1e-6);
        assert_eq!(significance_stars(0.0076), "***");
        assert_eq!(significance_stars(0.03), "**");
        assert_eq!(significance_stars(0.07), "*");
        assert_eq!(significance_stars(0.2995), "");
    }
}
