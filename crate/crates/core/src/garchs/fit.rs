//! Constrained maximum likelihood for GARCH(1,1) and GARCH-S.
//!
//! The optimizer works in unconstrained coordinates:
//!
//! ```text
//! mu     = scale * x0                 (scale = sample std of returns)
//! alpha0 = exp(x1)
//! p      = logistic(x2), w = logistic(x3), alpha1 = p w, alpha2 = p (1 − w)
//! beta0  = x4, beta1 = x5
//! beta2  = 0.999 tanh(x6)
//! ```
//!
//! so every iterate satisfies `alpha0 > 0`, `alpha1, alpha2 >= 0`,
//! `alpha1 + alpha2 < 1` and `|beta2| < 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::filter::{filter_paths, gaussian_nll_unchecked, initial_variance, nll_unchecked};
use super::{FilteredPaths, GarchSParams, ShockForm};
use crate::error::{Error, Result};
use crate::ingest::{descriptive_stats, ReturnSeries};
use crate::linalg::SquareMatrix;
use crate::optim::{numdiff, Bfgs, Minimum, NelderMead};

/// Number of GARCH-S parameters, used as `k` in the information criteria.
pub const NUM_PARAMS: usize = 7;

const MIN_OBS: usize = 100;
const BETA2_BOUND: f64 = 0.999;
// Keeps logistic(x) strictly below 1 in floating point.
const LOGIT_CLAMP: f64 = 30.0;
const HESSIAN_REL_STEP: f64 = 1e-4;
const PERTURBATION: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    pub shock_form: ShockForm,
    /// Number of optimizer starts; the first is the GARCH(1,1) seed, the rest are perturbations of it.
    pub starts: usize,
    /// Relative log-likelihood change that counts as converged.
    pub tolerance: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { shock_form: ShockForm::Cubed, starts: 3, tolerance: 1e-9, max_iter: 2000, seed: 0 }
    }
}

/// Gaussian GARCH(1,1) maximum-likelihood estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Garch11Fit {
    pub mu: f64,
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub loglik: f64,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GarchSFit {
    pub params: GarchSParams,
    pub loglik: f64,
    pub aic: f64,
    pub sic: f64,
    /// `None` where the observed information is unavailable.
    pub stderr: [Option<f64>; NUM_PARAMS],
    pub tstat: [Option<f64>; NUM_PARAMS],
    pub paths: FilteredPaths,
    pub converged: bool,
    pub iterations: usize,
    pub shock_form: ShockForm,
    pub n_obs: usize,
    pub seed: u64,
    /// Log-likelihood at each start's initial point.
    pub start_initial_logliks: Vec<f64>,
    /// Log-likelihood reached from each start.
    pub start_final_logliks: Vec<f64>,
    /// Index of the start that produced the reported fit.
    pub best_start: usize,
}

/// Normalized information criteria: `((−2 lnL + 2k) / N, (−2 lnL + k ln N) / N)`.
pub fn information_criteria(loglik: f64, k: usize, n: usize) -> (f64, f64) {
    let (k, n) = (k as f64, n as f64);
    ((-2.0 * loglik + 2.0 * k) / n, (-2.0 * loglik + k * n.ln()) / n)
}

fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x.clamp(-LOGIT_CLAMP, LOGIT_CLAMP)).exp())
}

fn logit(p: f64) -> f64 {
    let p = p.clamp(1e-9, 1.0 - 1e-9);
    (p / (1.0 - p)).ln()
}

/// Maps between natural parameters and optimizer coordinates.
#[derive(Debug, Clone, Copy)]
struct Transform {
    scale: f64,
}

impl Transform {
    fn variance_part(&self, x: &[f64]) -> (f64, f64, f64, f64) {
        let p = logistic(x[2]);
        let w = logistic(x[3]);
        (self.scale * x[0], x[1].exp(), p * w, p * (1.0 - w))
    }

    fn encode_variance(&self, mu: f64, a0: f64, a1: f64, a2: f64) -> [f64; 4] {
        let p = (a1 + a2).max(1e-9);
        [mu / self.scale, a0.ln(), logit(p), logit(a1 / p)]
    }

    fn decode(&self, x: &[f64]) -> GarchSParams {
        let (mu, alpha0, alpha1, alpha2) = self.variance_part(x);
        GarchSParams {
            mu,
            alpha0,
            alpha1,
            alpha2,
            beta0: x[4],
            beta1: x[5],
            beta2: BETA2_BOUND * x[6].tanh(),
        }
    }

    fn encode(&self, p: &GarchSParams) -> Vec<f64> {
        let mut x = self.encode_variance(p.mu, p.alpha0, p.alpha1, p.alpha2).to_vec();
        let b2 = (p.beta2 / BETA2_BOUND).clamp(-1.0 + 1e-12, 1.0 - 1e-12);
        x.extend([p.beta0, p.beta1, b2.atanh()]);
        x
    }

    /// d(theta) / d(x), rows indexed by natural parameter.
    fn jacobian(&self, x: &[f64]) -> SquareMatrix {
        let mut j = SquareMatrix::zeros(NUM_PARAMS);
        let p = logistic(x[2]);
        let w = logistic(x[3]);
        let dp = p * (1.0 - p);
        let dw = w * (1.0 - w);
        j[(0, 0)] = self.scale;
        j[(1, 1)] = x[1].exp();
        j[(2, 2)] = w * dp;
        j[(2, 3)] = p * dw;
        j[(3, 2)] = (1.0 - w) * dp;
        j[(3, 3)] = -p * dw;
        j[(4, 4)] = 1.0;
        j[(5, 5)] = 1.0;
        let th = x[6].tanh();
        j[(6, 6)] = BETA2_BOUND * (1.0 - th * th);
        j
    }
}

/// Simplex warm-up followed by a quasi-Newton polish.
fn two_stage<F>(mut f: F, x0: &[f64], tolerance: f64, max_iter: usize) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let nm = NelderMead { max_iter, f_tol: tolerance * 100.0, initial_step: 0.1 };
    let warm = nm.minimize(&mut f, x0);
    let bfgs = Bfgs { max_iter, f_tol: tolerance, grad_step: 1e-6 };
    let mut polished = bfgs.minimize(&mut f, &warm.x);
    polished.iterations += warm.iterations;
    polished.evaluations += warm.evaluations;
    let mut trace = warm.trace;
    trace.extend(polished.trace.into_iter().skip(1));
    polished.trace = trace;
    polished
}

fn check_length(returns: &ReturnSeries) -> Result<()> {
    if returns.len() < MIN_OBS {
        return Err(Error::InsufficientData(format!(
            "{} returns; fitting needs at least {MIN_OBS}",
            returns.len()
        )));
    }
    Ok(())
}

fn garch11_minimum(r: &[f64], h1: f64, t: Transform, tolerance: f64, max_iter: usize) -> Minimum {
    let mean = r.iter().sum::<f64>() / r.len() as f64;
    let x0 = t.encode_variance(mean, h1 * 0.05, 0.05, 0.9);
    let f = |x: &[f64]| {
        let (mu, a0, a1, a2) = t.variance_part(x);
        gaussian_nll_unchecked(r, h1, mu, a0, a1, a2)
    };
    two_stage(f, &x0, tolerance, max_iter)
}

/// Gaussian GARCH(1,1) under the same constraints; seeds [`fit_garchs`].
pub fn fit_garch11(returns: &ReturnSeries) -> Result<Garch11Fit> {
    check_length(returns)?;
    let r = returns.values();
    let h1 = initial_variance(r)?;
    let t = Transform { scale: h1.sqrt() };
    let opts = FitOptions::default();
    let m = garch11_minimum(r, h1, t, opts.tolerance, opts.max_iter);
    if !m.converged || !m.f.is_finite() {
        return Err(Error::NonConvergence { iterations: m.iterations });
    }
    let (mu, alpha0, alpha1, alpha2) = t.variance_part(&m.x);
    Ok(Garch11Fit { mu, alpha0, alpha1, alpha2, loglik: -m.f, converged: true, iterations: m.iterations })
}

/// Sample skewness of the residuals standardized by a GARCH(1,1) variance path.
/// Raw returns are far more skewed than their innovations whenever volatility
/// clusters, which makes raw skewness a poor starting level for `s_t`.
fn standardized_skewness(r: &[f64], h1: f64, mu: f64, a0: f64, a1: f64, a2: f64) -> Result<f64> {
    let mut h = h1;
    let mut eta = Vec::with_capacity(r.len());
    for (t, &rt) in r.iter().enumerate() {
        if t > 0 {
            let e = r[t - 1] - mu;
            h = a0 + a1 * e * e + a2 * h;
        }
        eta.push((rt - mu) / h.sqrt());
    }
    Ok(descriptive_stats(&eta)?.skewness.unwrap_or(0.0))
}

/// Multi-start constrained maximum likelihood for GARCH-S.
pub fn fit_garchs(returns: &ReturnSeries, options: &FitOptions) -> Result<GarchSFit> {
    check_length(returns)?;
    if options.starts == 0 {
        return Err(Error::InvalidInput("at least one start is required".into()));
    }
    let r = returns.values();
    let h1 = initial_variance(r)?;
    let t = Transform { scale: h1.sqrt() };
    let shock = options.shock_form;

    let seed_fit = garch11_minimum(r, h1, t, options.tolerance, options.max_iter);
    let (mu, alpha0, alpha1, alpha2) = t.variance_part(&seed_fit.x);
    let skew = standardized_skewness(r, h1, mu, alpha0, alpha1, alpha2)?;
    let beta2 = 0.1;
    let seed_params = GarchSParams { mu, alpha0, alpha1, alpha2, beta0: skew * (1.0 - beta2), beta1: 0.01, beta2 };

    let base = t.encode(&seed_params);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let starts: Vec<Vec<f64>> = (0..options.starts)
        .map(|k| {
            if k == 0 {
                base.clone()
            } else {
                base.iter()
                    .map(|v| v * (1.0 + rng.random_range(-PERTURBATION..PERTURBATION)))
                    .collect()
            }
        })
        .collect();

    let objective = |x: &[f64]| nll_unchecked(r, h1, &t.decode(x), shock);
    let mut initial = Vec::with_capacity(starts.len());
    let mut results = Vec::with_capacity(starts.len());
    for x0 in &starts {
        initial.push(-objective(x0));
        results.push(two_stage(objective, x0, options.tolerance, options.max_iter));
    }

    // Highest likelihood wins; ties go to the lower start index.
    let best_start = (0..results.len())
        .filter(|&i| results[i].f.is_finite())
        .min_by(|&a, &b| results[a].f.total_cmp(&results[b].f).then(a.cmp(&b)))
        .ok_or(Error::NonConvergence { iterations: options.max_iter })?;
    if !results.iter().any(|m| m.converged && m.f.is_finite()) {
        let iterations = results.iter().map(|m| m.iterations).max().unwrap_or(0);
        return Err(Error::NonConvergence { iterations });
    }
    let best = &results[best_start];
    let params = t.decode(&best.x);
    let loglik = -best.f;
    let n = r.len();
    let (aic, sic) = information_criteria(loglik, NUM_PARAMS, n);

    let stderr = standard_errors(&objective, &t, &best.x);
    let mut tstat = [None; NUM_PARAMS];
    for (i, v) in params.to_array().iter().enumerate() {
        tstat[i] = stderr[i].filter(|&se| se > 0.0).map(|se| v / se);
    }

    Ok(GarchSFit {
        params,
        loglik,
        aic,
        sic,
        stderr,
        tstat,
        paths: filter_paths(returns, &params, shock)?,
        converged: best.converged,
        iterations: best.iterations,
        shock_form: shock,
        n_obs: n,
        seed: options.seed,
        start_initial_logliks: initial,
        start_final_logliks: results.iter().map(|m| -m.f).collect(),
        best_start,
    })
}

/// Observed-information standard errors: central-difference Hessian of the negative
/// log-likelihood in optimizer coordinates, inverted, then mapped to natural
/// parameters with the delta method.
fn standard_errors<F>(objective: &F, t: &Transform, x: &[f64]) -> [Option<f64>; NUM_PARAMS]
where
    F: Fn(&[f64]) -> f64,
{
    let steps = numdiff::scaled_steps(x, HESSIAN_REL_STEP);
    let hess = numdiff::central_hessian(objective, x, &steps);
    let Some(cov_x) = hess.spd_inverse() else {
        return [None; NUM_PARAMS];
    };
    let j = t.jacobian(x);
    let cov = j.matmul(&cov_x).matmul(&j.transpose());
    let mut out = [None; NUM_PARAMS];
    for (i, slot) in out.iter_mut().enumerate() {
        let v = cov[(i, i)];
        if v > 0.0 && v.is_finite() {
            *slot = Some(v.sqrt());
        }
    }
    out
}
