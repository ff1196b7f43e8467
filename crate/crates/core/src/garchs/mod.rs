//! GARCH with autoregressive conditional skewness (GARCH-S).
//!
//! ```text
//! r_t = mu + eps_t,             eps_t = sqrt(h_t) * eta_t
//! h_t = alpha0 + alpha1 * eps_{t-1}^2 + alpha2 * h_{t-1}
//! s_t = beta0  + beta1  * g(eta_{t-1}) + beta2 * s_{t-1}
//! ```
//!
//! `g(eta)` is `eta^3` ([`ShockForm::Cubed`], the default) or `eta^2`
//! ([`ShockForm::Squared`]). With all-positive skewness coefficients the squared
//! form can never push `s_t` below its starting level, so it cannot produce
//! negative conditional skewness from a positive-coefficient fit.
//!
//! Innovations follow a Gram–Charlier density truncated after the skewness
//! term, in its squared-polynomial form so it is a proper density for every
//! `s`; see [`gc_log_density`].

mod density;
mod filter;
mod fit;
pub mod report;
mod simulate;

pub use density::{gc_cdf, gc_density, gc_log_density};
pub use filter::{filter_paths, gaussian_garch_nll, neg_log_likelihood, FilteredPaths};
pub use fit::{
    fit_garch11, fit_garchs, information_criteria, Garch11Fit, GarchSFit, FitOptions, NUM_PARAMS,
};
pub use simulate::{simulate_garchs, simulate_garchs_with, SimulateOptions, Simulation, Stationarity};

use crate::error::{Error, Result};

/// Which function of the lagged standardized residual drives the skewness recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShockForm {
    #[default]
    Cubed,
    Squared,
}

impl ShockForm {
    #[inline]
    pub fn apply(self, eta: f64) -> f64 {
        match self {
            Self::Cubed => eta * eta * eta,
            Self::Squared => eta * eta,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Cubed => "cubed",
            Self::Squared => "squared",
        }
    }
}

impl std::fmt::Display for ShockForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ShockForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cubed" => Ok(Self::Cubed),
            "squared" => Ok(Self::Squared),
            other => Err(Error::InvalidInput(format!(
                "unknown shock form `{other}` (expected cubed or squared)"
            ))),
        }
    }
}

/// GARCH-S parameter vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GarchSParams {
    pub mu: f64,
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl GarchSParams {
    pub const NAMES: [&'static str; 7] = ["mu", "alpha0", "alpha1", "alpha2", "beta0", "beta1", "beta2"];

    pub fn to_array(self) -> [f64; 7] {
        [self.mu, self.alpha0, self.alpha1, self.alpha2, self.beta0, self.beta1, self.beta2]
    }

    pub fn from_slice(v: &[f64]) -> Self {
        Self {
            mu: v[0],
            alpha0: v[1],
            alpha1: v[2],
            alpha2: v[3],
            beta0: v[4],
            beta1: v[5],
            beta2: v[6],
        }
    }

    /// Unconditional mean of the skewness recursion when driven by a zero-mean shock.
    pub fn skew_level(&self) -> f64 {
        self.beta0 / (1.0 - self.beta2)
    }

    /// Checks positivity, covariance stationarity and skewness stability.
    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        if self.alpha1 + self.alpha2 >= 1.0 {
            return Err(Error::InvalidParams {
                name: "alpha1+alpha2",
                detail: format!("{} must be < 1", self.alpha1 + self.alpha2),
            });
        }
        Ok(())
    }

    /// Everything in [`validate`](Self::validate) except covariance stationarity.
    pub(crate) fn validate_shape(&self) -> Result<()> {
        for (name, v) in Self::NAMES.iter().zip(self.to_array()) {
            if !v.is_finite() {
                return Err(Error::InvalidParams { name, detail: "not finite".into() });
            }
        }
        if self.alpha0 <= 0.0 {
            return Err(Error::InvalidParams { name: "alpha0", detail: format!("{} must be > 0", self.alpha0) });
        }
        if self.alpha1 < 0.0 {
            return Err(Error::InvalidParams { name: "alpha1", detail: format!("{} must be >= 0", self.alpha1) });
        }
        if self.alpha2 < 0.0 {
            return Err(Error::InvalidParams { name: "alpha2", detail: format!("{} must be >= 0", self.alpha2) });
        }
        if self.beta2.abs() >= 1.0 {
            return Err(Error::InvalidParams { name: "beta2", detail: format!("|{}| must be < 1", self.beta2) });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> GarchSParams {
        GarchSParams { mu: 0.0, alpha0: 1e-5, alpha1: 0.1, alpha2: 0.85, beta0: 0.0, beta1: 0.03, beta2: 0.2 }
    }

    #[test]
    fn validation_names_offender() {
        assert!(base().validate().is_ok());
        let e = GarchSParams { alpha2: 0.95, ..base() }.validate().unwrap_err();
        assert!(matches!(e, Error::InvalidParams { name: "alpha1+alpha2", .. }));
        assert!(e.to_string().contains("alpha1+alpha2"));
        let e = GarchSParams { alpha0: 0.0, ..base() }.validate().unwrap_err();
        assert!(matches!(e, Error::InvalidParams { name: "alpha0", .. }));
        let e = GarchSParams { beta2: -1.0, ..base() }.validate().unwrap_err();
        assert!(matches!(e, Error::InvalidParams { name: "beta2", .. }));
    }

    #[test]
    fn shock_forms() {
        assert_eq!(ShockForm::Cubed.apply(-2.0), -8.0);
        assert_eq!(ShockForm::Squared.apply(-2.0), 4.0);
        assert_eq!("squared".parse::<ShockForm>().unwrap(), ShockForm::Squared);
        assert!("eta4".parse::<ShockForm>().is_err());
    }
}
