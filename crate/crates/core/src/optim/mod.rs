//! Derivative-free and quasi-Newton minimizers with finite-difference derivatives.

mod bfgs;
mod nelder_mead;
pub mod numdiff;

pub use bfgs::Bfgs;
pub use nelder_mead::NelderMead;

/// Outcome of a minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Best objective value after each accepted iteration, starting with the initial point.
    pub trace: Vec<f64>,
}

/// Objective values that are NaN are treated as +inf so comparisons stay total.
pub(crate) fn sanitize(f: f64) -> f64 {
    if f.is_nan() {
        f64::INFINITY
    } else {
        f
    }
}

pub(crate) fn relative_change(old: f64, new: f64) -> f64 {
    (old - new).abs() / old.abs().max(1.0)
}
