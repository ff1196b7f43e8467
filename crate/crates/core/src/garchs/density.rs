//! Gram–Charlier density truncated after the skewness term, squared-polynomial form:
//!
//! ```text
//! f(eta; s) = phi(eta) * psi(eta, s)^2 / Gamma(s)
//! psi      = 1 + (s / 6) * (eta^3 - 3 eta)
//! Gamma    = 1 + s^2 / 6
//! ```
//!
//! `eta^3 - 3 eta` is the third Hermite polynomial He3, and E[He3^2] = 6 under
//! the standard normal, which is where `Gamma` comes from.

use crate::dist::normal_cdf;

pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

#[inline]
pub(crate) fn ln_psi_sq(eta: f64, s: f64) -> f64 {
    let psi = 1.0 + s / 6.0 * (eta * eta * eta - 3.0 * eta);
    2.0 * psi.abs().ln()
}

#[inline]
pub(crate) fn ln_gamma_norm(s: f64) -> f64 {
    (s * s / 6.0).ln_1p()
}

/// `ln f(eta; s)`; NaN for non-finite inputs, `-inf` where `psi` vanishes.
#[inline]
pub fn gc_log_density(eta: f64, s: f64) -> f64 {
    if !eta.is_finite() || !s.is_finite() {
        return f64::NAN;
    }
    -LN_SQRT_2PI - 0.5 * eta * eta + ln_psi_sq(eta, s) - ln_gamma_norm(s)
}

pub fn gc_density(eta: f64, s: f64) -> f64 {
    gc_log_density(eta, s).exp()
}

/// Closed-form CDF of `f(.; s)`.
///
/// Uses `∫_{-∞}^x phi He_n = -phi(x) He_{n-1}(x)` and
/// `He3^2 = He6 + 9 He4 + 18 He2 + 6`, giving
/// `F(x) = Phi(x) - phi(x) [ (s/3) He2(x) + (s^2/36)(x^5 - x^3 + 6x) ] / Gamma(s)`.
pub fn gc_cdf(x: f64, s: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    let phi = (-LN_SQRT_2PI - 0.5 * x * x).exp();
    let x2 = x * x;
    let poly = s / 3.0 * (x2 - 1.0) + s * s / 36.0 * x * (x2 * x2 - x2 + 6.0);
    normal_cdf(x) - phi * poly / (1.0 + s * s / 6.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_standard_normal() {
        assert!((gc_log_density(0.0, 0.0) + 0.91894).abs() < 1e-5);
        assert!((gc_log_density(0.0, 0.0) + 0.5 * (2.0 * std::f64::consts::PI).ln()).abs() < 1e-15);
    }

    #[test]
    fn closed_form_point() {
        // eta = 1: He3(1) = -2, psi = 1 - s/3 = 5/6 at s = 0.5.
        let phi1 = (-0.5f64).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let expected = phi1.ln() + (25.0f64 / 36.0).ln() - (1.0 + 0.25 / 6.0f64).ln();
        assert!((gc_log_density(1.0, 0.5) - expected).abs() < 1e-14);
        assert!((expected + 1.82440).abs() < 1e-5);
    }

    #[test]
    fn joint_sign_flip_symmetry() {
        for &(e, s) in &[(0.3, 0.7), (-2.1, -0.4), (1.7, 1.0), (0.0, -0.9)] {
            assert_eq!(gc_log_density(-e, -s), gc_log_density(e, s));
        }
    }

    #[test]
    fn non_finite_inputs() {
        assert!(gc_log_density(f64::NAN, 0.0).is_nan());
        assert!(gc_log_density(0.0, f64::INFINITY).is_nan());
    }

    #[test]
    fn cdf_is_antiderivative() {
        for &s in &[-1.0, -0.3, 0.0, 0.6, 1.0] {
            assert!(gc_cdf(-12.0, s) < 1e-25);
            assert!((gc_cdf(12.0, s) - 1.0).abs() < 1e-15);
            for i in -30..=30 {
                let x = i as f64 * 0.2;
                let h = 1e-5;
                let numeric = (gc_cdf(x + h, s) - gc_cdf(x - h, s)) / (2.0 * h);
                assert!((numeric - gc_density(x, s)).abs() < 1e-8, "s={s} x={x}");
            }
        }
    }
}
