//! Seeded GARCH-S path simulation.
//!
//! Innovations are drawn by inverse transform from a 4096-point tabulation of
//! the Gram–Charlier CDF on [-12, 12], linearly interpolated (monotone) between
//! grid points. The table is rebuilt only when the conditional skewness has
//! moved more than 1e-3 since the last build.

use chrono::NaiveDate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::density::LN_SQRT_2PI;
use super::{GarchSParams, ShockForm};
use crate::dist::normal_cdf;
use crate::error::{Error, Result};
use crate::ingest::ReturnSeries;

const GRID_POINTS: usize = 4096;
const GRID_HALF_WIDTH: f64 = 12.0;
const REBUILD_TOL: f64 = 1e-3;
const BURN_IN: usize = 500;

/// Which stationarity condition the simulator insists on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stationarity {
    /// `alpha1 + alpha2 < 1`: finite unconditional variance.
    #[default]
    Covariance,
    /// `E[ln(alpha2 + alpha1 eta^2)] < 0` under a standard normal `eta`: the variance
    /// recursion is strictly stationary even when the unconditional variance is infinite.
    Strict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateOptions {
    pub shock_form: ShockForm,
    /// First synthetic date; returns are placed on consecutive weekdays.
    pub start: NaiveDate,
    pub stationarity: Stationarity,
}

impl Default for SimulateOptions {
    fn default() -> Self {
        Self {
            shock_form: ShockForm::Cubed,
            start: NaiveDate::from_ymd_opt(2017, 1, 2).expect("valid date"),
            stationarity: Stationarity::Covariance,
        }
    }
}

/// Simulated returns with the latent states that generated them.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub returns: ReturnSeries,
    pub h: Vec<f64>,
    pub s: Vec<f64>,
    pub eta: Vec<f64>,
}

pub fn simulate_garchs(params: &GarchSParams, n: usize, seed: u64, shock_form: ShockForm) -> Result<ReturnSeries> {
    let opts = SimulateOptions { shock_form, ..SimulateOptions::default() };
    Ok(simulate_garchs_with(params, n, seed, &opts)?.returns)
}

pub fn simulate_garchs_with(params: &GarchSParams, n: usize, seed: u64, opts: &SimulateOptions) -> Result<Simulation> {
    match opts.stationarity {
        Stationarity::Covariance => params.validate()?,
        Stationarity::Strict => {
            params.validate_shape()?;
            let lyapunov = log_contraction(params.alpha1, params.alpha2);
            if lyapunov >= 0.0 {
                return Err(Error::InvalidParams {
                    name: "alpha1+alpha2",
                    detail: format!("E[ln(alpha2 + alpha1 eta^2)] = {lyapunov:.4} must be < 0"),
                });
            }
        }
    }
    if n < 2 {
        return Err(Error::TooShort { needed: 2, got: n });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = GcSampler::new();
    let persistence = params.alpha1 + params.alpha2;
    let mut h = if persistence < 1.0 {
        params.alpha0 / (1.0 - persistence)
    } else {
        params.alpha0 * 100.0
    };
    let mut s = params.skew_level();

    let total = BURN_IN + n;
    let mut out_r = Vec::with_capacity(n);
    let mut out_h = Vec::with_capacity(n);
    let mut out_s = Vec::with_capacity(n);
    let mut out_eta = Vec::with_capacity(n);
    for t in 0..total {
        let u: f64 = rng.random();
        let eta = sampler.sample(u, s);
        let eps = h.sqrt() * eta;
        if t >= BURN_IN {
            out_r.push(params.mu + eps);
            out_h.push(h);
            out_s.push(s);
            out_eta.push(eta);
        }
        s = params.beta0 + params.beta1 * opts.shock_form.apply(eta) + params.beta2 * s;
        h = params.alpha0 + params.alpha1 * eps * eps + params.alpha2 * h;
    }
    Ok(Simulation {
        returns: ReturnSeries::on_weekdays(opts.start, out_r)?,
        h: out_h,
        s: out_s,
        eta: out_eta,
    })
}

/// `E[ln(alpha2 + alpha1 eta^2)]` for standard normal `eta`, midpoint rule on [-12, 12].
fn log_contraction(alpha1: f64, alpha2: f64) -> f64 {
    let cells = 8000;
    let width = 2.0 * GRID_HALF_WIDTH / cells as f64;
    (0..cells)
        .map(|i| {
            let x = -GRID_HALF_WIDTH + (i as f64 + 0.5) * width;
            (-LN_SQRT_2PI - 0.5 * x * x).exp() * (alpha2 + alpha1 * x * x).ln() * width
        })
        .sum()
}

/// Inverse-transform sampler for the Gram–Charlier density.
struct GcSampler {
    grid: Vec<f64>,
    // Phi(x_j), phi(x_j) He2(x_j), phi(x_j) (x^5 − x^3 + 6x)
    base_cdf: Vec<f64>,
    odd_term: Vec<f64>,
    even_term: Vec<f64>,
    table: Vec<f64>,
    table_s: f64,
}

impl GcSampler {
    fn new() -> Self {
        let step = 2.0 * GRID_HALF_WIDTH / (GRID_POINTS - 1) as f64;
        let grid: Vec<f64> = (0..GRID_POINTS).map(|j| -GRID_HALF_WIDTH + j as f64 * step).collect();
        let phi: Vec<f64> = grid.iter().map(|x| (-LN_SQRT_2PI - 0.5 * x * x).exp()).collect();
        let base_cdf = grid.iter().map(|&x| normal_cdf(x)).collect();
        let odd_term = grid.iter().zip(&phi).map(|(x, p)| p * (x * x - 1.0)).collect();
        let even_term = grid
            .iter()
            .zip(&phi)
            .map(|(x, p)| {
                let x2 = x * x;
                p * x * (x2 * x2 - x2 + 6.0)
            })
            .collect();
        let mut sampler = Self {
            grid,
            base_cdf,
            odd_term,
            even_term,
            table: vec![0.0; GRID_POINTS],
            table_s: f64::NAN,
        };
        sampler.rebuild(0.0);
        sampler
    }

    fn rebuild(&mut self, s: f64) {
        let gamma = 1.0 + s * s / 6.0;
        let (c1, c2) = (s / 3.0 / gamma, s * s / 36.0 / gamma);
        let mut running = f64::NEG_INFINITY;
        for j in 0..GRID_POINTS {
            let v = self.base_cdf[j] - c1 * self.odd_term[j] - c2 * self.even_term[j];
            running = running.max(v);
            self.table[j] = running;
        }
        self.table_s = s;
    }

    fn sample(&mut self, u: f64, s: f64) -> f64 {
        if !((s - self.table_s).abs() <= REBUILD_TOL) {
            self.rebuild(s);
        }
        let lo = self.table[0];
        let hi = self.table[GRID_POINTS - 1];
        let target = lo + u * (hi - lo);
        let k = self.table.partition_point(|&v| v < target).clamp(1, GRID_POINTS - 1);
        let (f0, f1) = (self.table[k - 1], self.table[k]);
        let (x0, x1) = (self.grid[k - 1], self.grid[k]);
        if f1 > f0 {
            x0 + (target - f0) / (f1 - f0) * (x1 - x0)
        } else {
            x0
        }
    }
}
