use super::numdiff::{central_gradient, scaled_steps};
use super::{relative_change, sanitize, Minimum};
use crate::linalg::{dot, SquareMatrix};

/// BFGS on central-difference gradients with Armijo backtracking.
#[derive(Debug, Clone)]
pub struct Bfgs {
    pub max_iter: usize,
    /// Converged once two consecutive accepted steps change f by less than this (relative).
    pub f_tol: f64,
    /// Relative finite-difference step, scaled by `1 + |x_i|`.
    pub grad_step: f64,
}

impl Default for Bfgs {
    fn default() -> Self {
        Self { max_iter: 2000, f_tol: 1e-9, grad_step: 1e-6 }
    }
}

const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 50;

impl Bfgs {
    pub fn minimize<F>(&self, mut f: F, x0: &[f64]) -> Minimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let n = x0.len();
        let mut evaluations = 0usize;
        let mut eval = |x: &[f64]| {
            evaluations += 1;
            sanitize(f(x))
        };

        let mut x = x0.to_vec();
        let mut fx = eval(&x);
        let mut trace = vec![fx];
        if !fx.is_finite() {
            return Minimum { x, f: fx, iterations: 0, evaluations, converged: false, trace };
        }
        let mut g = central_gradient(&mut eval, &x, &scaled_steps(&x, self.grad_step));
        let mut hinv = SquareMatrix::identity(n);
        let mut fresh = true;
        let mut small_steps = 0;
        let mut converged = false;
        let mut iterations = 0;

        while iterations < self.max_iter {
            iterations += 1;
            let mut d: Vec<f64> = hinv.mul_vec(&g).iter().map(|v| -v).collect();
            let mut slope = dot(&g, &d);
            if !(slope < 0.0) {
                hinv = SquareMatrix::identity(n);
                fresh = true;
                d = g.iter().map(|v| -v).collect();
                slope = -dot(&g, &g);
                if slope == 0.0 {
                    converged = true;
                    break;
                }
            }

            let mut t = 1.0;
            let mut accepted = None;
            for _ in 0..MAX_HALVINGS {
                let trial: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + t * di).collect();
                let ft = eval(&trial);
                if ft.is_finite() && ft <= fx + ARMIJO * t * slope {
                    accepted = Some((trial, ft));
                    break;
                }
                t *= 0.5;
            }

            let Some((x_new, f_new)) = accepted else {
                if fresh {
                    // Steepest descent cannot improve: stationary up to finite-difference noise.
                    converged = true;
                    break;
                }
                hinv = SquareMatrix::identity(n);
                fresh = true;
                continue;
            };

            let g_new = central_gradient(&mut eval, &x_new, &scaled_steps(&x_new, self.grad_step));
            let change = relative_change(fx, f_new);
            let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
            x = x_new;
            fx = f_new;
            g = g_new;
            trace.push(fx);

            let sy = dot(&s, &y);
            if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() && sy > 0.0 {
                if fresh {
                    // Scale the initial inverse Hessian to the observed curvature.
                    let scale = sy / dot(&y, &y);
                    hinv = SquareMatrix::identity(n);
                    for i in 0..n {
                        hinv[(i, i)] = scale;
                    }
                }
                bfgs_update(&mut hinv, &s, &y, sy);
                fresh = false;
            }

            if change < self.f_tol {
                small_steps += 1;
                if small_steps >= 2 {
                    converged = true;
                    break;
                }
            } else {
                small_steps = 0;
            }
        }

        Minimum { x, f: fx, iterations, evaluations, converged, trace }
    }
}

/// H ← (I − ρ s yᵀ) H (I − ρ y sᵀ) + ρ s sᵀ, ρ = 1 / (yᵀs).
fn bfgs_update(h: &mut SquareMatrix, s: &[f64], y: &[f64], sy: f64) {
    let n = s.len();
    let rho = 1.0 / sy;
    let hy = h.mul_vec(y);
    let yhy = dot(y, &hy);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] += -rho * (s[i] * hy[j] + hy[i] * s[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = Bfgs { f_tol: 1e-14, ..Bfgs::default() }.minimize(f, &[-1.2, 1.0]);
        assert!((m.x[0] - 1.0).abs() < 1e-4 && (m.x[1] - 1.0).abs() < 1e-4, "{:?}", m);
        assert!(m.trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn ill_scaled_quadratic() {
        let f = |x: &[f64]| 1e4 * (x[0] - 0.3).powi(2) + (x[1] + 2.0).powi(2) + 0.5 * x[0] * x[1];
        let m = Bfgs::default().minimize(f, &[0.0, 0.0]);
        assert!(m.converged);
        // Stationary point of the quadratic solved by hand: 2e4(x0 − 0.3) + 0.5 x1 = 0, 2(x1 + 2) + 0.5 x0 = 0.
        let x1 = (-4.0 - 0.5 * 0.3) / (2.0 - 0.25 / 2e4);
        let x0 = 0.3 - 0.5 * x1 / 2e4;
        assert!((m.x[0] - x0).abs() < 1e-6 && (m.x[1] - x1).abs() < 1e-4, "{:?}", m.x);
    }
}
