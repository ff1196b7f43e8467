use super::density::{ln_gamma_norm, ln_psi_sq, LN_SQRT_2PI};
use super::{GarchSParams, ShockForm};
use crate::error::{Error, Result};
use crate::ingest::ReturnSeries;

/// Conditional variance, conditional skewness and standardized residual per trading day.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredPaths {
    pub h: Vec<f64>,
    pub s: Vec<f64>,
    pub eta: Vec<f64>,
}

/// Centered sample variance (n − 1 denominator). Shifting by `mu` leaves it unchanged,
/// so it is also the variance of `r_t − mu` for every `mu`.
pub(crate) fn initial_variance(r: &[f64]) -> Result<f64> {
    if r.iter().all(|&x| x == r[0]) {
        return Err(Error::Degenerate("returns are constant".into()));
    }
    let n = r.len() as f64;
    let mean = r.iter().sum::<f64>() / n;
    let var = r.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    if !(var > 0.0) {
        return Err(Error::Degenerate("returns have zero variance".into()));
    }
    Ok(var)
}

/// Runs the variance and skewness recursions.
///
/// `h_1` is the sample variance of the demeaned returns and `s_1 = beta0 / (1 − beta2)`.
/// Parameters must be positive with `|beta2| < 1`; covariance stationarity is not
/// required to evaluate the recursion.
pub fn filter_paths(returns: &ReturnSeries, params: &GarchSParams, shock: ShockForm) -> Result<FilteredPaths> {
    params.validate_shape()?;
    let r = returns.values();
    let h1 = initial_variance(r)?;
    let n = r.len();
    let mut h = Vec::with_capacity(n);
    let mut s = Vec::with_capacity(n);
    let mut eta = Vec::with_capacity(n);
    let (mut ht, mut st) = (h1, params.skew_level());
    for (t, &rt) in r.iter().enumerate() {
        if t > 0 {
            let e_prev = r[t - 1] - params.mu;
            st = params.beta0 + params.beta1 * shock.apply(eta[t - 1]) + params.beta2 * st;
            ht = params.alpha0 + params.alpha1 * e_prev * e_prev + params.alpha2 * ht;
        }
        h.push(ht);
        s.push(st);
        eta.push((rt - params.mu) / ht.sqrt());
    }
    Ok(FilteredPaths { h, s, eta })
}

/// Negative Gram–Charlier log-likelihood, summed over all observations.
pub fn neg_log_likelihood(returns: &ReturnSeries, params: &GarchSParams, shock: ShockForm) -> Result<f64> {
    params.validate_shape()?;
    let r = returns.values();
    Ok(nll_unchecked(r, initial_variance(r)?, params, shock))
}

/// Hot loop of [`neg_log_likelihood`] without validation or allocation.
pub(crate) fn nll_unchecked(r: &[f64], h1: f64, p: &GarchSParams, shock: ShockForm) -> f64 {
    let (mut h, mut s) = (h1, p.skew_level());
    let mut eta_prev = 0.0;
    let mut total = 0.0;
    for (t, &rt) in r.iter().enumerate() {
        if t > 0 {
            let e_prev = r[t - 1] - p.mu;
            s = p.beta0 + p.beta1 * shock.apply(eta_prev) + p.beta2 * s;
            h = p.alpha0 + p.alpha1 * e_prev * e_prev + p.alpha2 * h;
        }
        let eta = (rt - p.mu) / h.sqrt();
        total += LN_SQRT_2PI + 0.5 * h.ln() + 0.5 * eta * eta - ln_psi_sq(eta, s) + ln_gamma_norm(s);
        eta_prev = eta;
    }
    total
}

/// Gaussian GARCH(1,1) negative log-likelihood with the same `h_1` convention.
pub fn gaussian_garch_nll(returns: &ReturnSeries, mu: f64, alpha0: f64, alpha1: f64, alpha2: f64) -> Result<f64> {
    let r = returns.values();
    Ok(gaussian_nll_unchecked(r, initial_variance(r)?, mu, alpha0, alpha1, alpha2))
}

pub(crate) fn gaussian_nll_unchecked(r: &[f64], h1: f64, mu: f64, a0: f64, a1: f64, a2: f64) -> f64 {
    let mut h = h1;
    let mut total = 0.0;
    for (t, &rt) in r.iter().enumerate() {
        if t > 0 {
            let e_prev = r[t - 1] - mu;
            h = a0 + a1 * e_prev * e_prev + a2 * h;
        }
        let e = rt - mu;
        total += LN_SQRT_2PI + 0.5 * h.ln() + 0.5 * e * e / h;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garchs::gc_log_density;
    use chrono::NaiveDate;

    fn series(v: &[f64]) -> ReturnSeries {
        ReturnSeries::on_weekdays(NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(), v.to_vec()).unwrap()
    }

    fn params() -> GarchSParams {
        GarchSParams { mu: 0.001, alpha0: 2e-5, alpha1: 0.1, alpha2: 0.8, beta0: -0.02, beta1: 0.05, beta2: 0.4 }
    }

    #[test]
    fn hand_unrolled_three_steps() {
        let r = [0.01, -0.02, 0.015];
        let p = params();
        let paths = filter_paths(&series(&r), &p, ShockForm::Cubed).unwrap();

        let mean: f64 = (0.01 - 0.02 + 0.015) / 3.0;
        let h1 = ((0.01 - mean).powi(2) + (-0.02 - mean).powi(2) + (0.015 - mean).powi(2)) / 2.0;
        let s1 = -0.02 / (1.0 - 0.4);
        let e1 = 0.01 - 0.001;
        let eta1 = e1 / h1.sqrt();
        let h2: f64 = 2e-5 + 0.1 * e1 * e1 + 0.8 * h1;
        let s2 = -0.02 + 0.05 * eta1 * eta1 * eta1 + 0.4 * s1;
        let e2 = -0.02 - 0.001;
        let eta2 = e2 / h2.sqrt();
        let h3: f64 = 2e-5 + 0.1 * e2 * e2 + 0.8 * h2;
        let s3 = -0.02 + 0.05 * eta2 * eta2 * eta2 + 0.4 * s2;
        let eta3 = (0.015 - 0.001) / h3.sqrt();

        let close = |a: f64, b: f64| (a - b).abs() <= 1e-14 * b.abs();
        for (got, want) in paths.h.iter().zip([h1, h2, h3]) {
            assert!(close(*got, want), "{got} vs {want}");
        }
        for (got, want) in paths.s.iter().zip([s1, s2, s3]) {
            assert!(close(*got, want), "{got} vs {want}");
        }
        for (got, want) in paths.eta.iter().zip([eta1, eta2, eta3]) {
            assert!(close(*got, want), "{got} vs {want}");
        }
    }

    #[test]
    fn collapsed_recursions() {
        let r = series(&[0.01, -0.03, 0.002, 0.02, -0.01]);
        let p = GarchSParams { alpha1: 0.0, alpha2: 0.0, beta1: 0.0, beta2: 0.0, ..params() };
        let paths = filter_paths(&r, &p, ShockForm::Cubed).unwrap();
        assert!(paths.h[1..].iter().all(|&h| h == p.alpha0));
        assert!(paths.s[1..].iter().all(|&s| s == p.beta0));
    }

    #[test]
    fn nll_decomposes_into_density_terms() {
        let r = series(&[0.01, -0.03, 0.002, 0.02, -0.01, 0.004]);
        for shock in [ShockForm::Cubed, ShockForm::Squared] {
            let p = params();
            let paths = filter_paths(&r, &p, shock).unwrap();
            let composed: f64 = paths
                .eta
                .iter()
                .zip(&paths.s)
                .zip(&paths.h)
                .map(|((e, s), h)| -gc_log_density(*e, *s) + 0.5 * h.ln())
                .sum();
            let direct = neg_log_likelihood(&r, &p, shock).unwrap();
            assert!((composed - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn zero_skew_is_gaussian() {
        let r = series(&[0.01, -0.03, 0.002, 0.02, -0.01, 0.004]);
        let p = GarchSParams { beta0: 0.0, beta1: 0.0, beta2: 0.0, ..params() };
        let gc = neg_log_likelihood(&r, &p, ShockForm::Cubed).unwrap();
        let gauss = gaussian_garch_nll(&r, p.mu, p.alpha0, p.alpha1, p.alpha2).unwrap();
        assert!((gc - gauss).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let r = series(&[0.01, 0.01, 0.01]);
        assert!(matches!(filter_paths(&r, &params(), ShockForm::Cubed), Err(Error::Degenerate(_))));
        let r = series(&[0.01, 0.02]);
        let bad = GarchSParams { alpha0: -1.0, ..params() };
        assert!(matches!(neg_log_likelihood(&r, &bad, ShockForm::Cubed), Err(Error::InvalidParams { .. })));
    }
}
