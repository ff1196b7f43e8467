use super::{relative_change, sanitize, Minimum};

/// Nelder–Mead simplex with the standard reflection/expansion/contraction/shrink
/// coefficients (1, 2, 1/2, 1/2).
#[derive(Debug, Clone)]
pub struct NelderMead {
    pub max_iter: usize,
    /// Stop when the spread of simplex values, relative to the best, falls below this.
    pub f_tol: f64,
    /// Edge length of the initial simplex along each axis.
    pub initial_step: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self { max_iter: 2000, f_tol: 1e-9, initial_step: 0.1 }
    }
}

impl NelderMead {
    pub fn minimize<F>(&self, mut f: F, x0: &[f64]) -> Minimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let n = x0.len();
        let mut evaluations = 0;
        let mut eval = |x: &[f64]| {
            evaluations += 1;
            sanitize(f(x))
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.to_vec(), eval(x0)));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += if x[i] == 0.0 { self.initial_step } else { self.initial_step * x[i].abs().max(1.0) };
            let fx = eval(&x);
            simplex.push((x, fx));
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut trace = vec![simplex[0].1];

        let mut converged = false;
        let mut iterations = 0;
        while iterations < self.max_iter {
            let best = simplex[0].1;
            let worst = simplex[n].1;
            if worst.is_finite() && relative_change(best, worst) <= self.f_tol {
                converged = true;
                break;
            }
            iterations += 1;

            let centroid: Vec<f64> = (0..n)
                .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid.iter().zip(&simplex[n].0).map(|(c, w)| c + t * (c - w)).collect()
            };

            let xr = along(1.0);
            let fr = eval(&xr);
            if fr < simplex[0].1 {
                let xe = along(2.0);
                let fe = eval(&xe);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
            } else {
                let (xc, fc) = if fr < simplex[n].1 {
                    let xc = along(0.5);
                    let fc = eval(&xc);
                    (xc, fc)
                } else {
                    let xc = along(-0.5);
                    let fc = eval(&xc);
                    (xc, fc)
                };
                if fc < simplex[n].1.min(fr) {
                    simplex[n] = (xc, fc);
                } else {
                    let x_best = simplex[0].0.clone();
                    for (x, fx) in simplex.iter_mut().skip(1) {
                        for (xi, bi) in x.iter_mut().zip(&x_best) {
                            *xi = bi + 0.5 * (*xi - bi);
                        }
                        *fx = eval(x);
                    }
                }
            }
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            trace.push(simplex[0].1);
        }

        let (x, fx) = simplex.swap_remove(0);
        Minimum { x, f: fx, iterations, evaluations, converged, trace }
    }
}
