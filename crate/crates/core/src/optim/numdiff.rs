//! Central finite differences.

use crate::linalg::SquareMatrix;

/// Per-coordinate steps `rel * (1 + |x_i|)`.
pub fn scaled_steps(x: &[f64], rel: f64) -> Vec<f64> {
    x.iter().map(|v| rel * (1.0 + v.abs())).collect()
}

/// `(f(x + h e_i) − f(x − h e_i)) / 2h` for each coordinate.
pub fn central_gradient<F>(mut f: F, x: &[f64], steps: &[f64]) -> Vec<f64>
where
    F: FnMut(&[f64]) -> f64,
{
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            let h = steps[i];
            probe[i] = x[i] + h;
            let up = f(&probe);
            probe[i] = x[i] - h;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Symmetric central-difference Hessian.
pub fn central_hessian<F>(mut f: F, x: &[f64], steps: &[f64]) -> SquareMatrix
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x.len();
    let f0 = f(x);
    let mut h = SquareMatrix::zeros(n);
    let mut p = x.to_vec();
    for i in 0..n {
        let hi = steps[i];
        p[i] = x[i] + hi;
        let up = f(&p);
        p[i] = x[i] - hi;
        let down = f(&p);
        p[i] = x[i];
        h[(i, i)] = (up - 2.0 * f0 + down) / (hi * hi);
        for j in 0..i {
            let hj = steps[j];
            let mut corner = |si: f64, sj: f64| {
                p[i] = x[i] + si * hi;
                p[j] = x[j] + sj * hj;
                let v = f(&p);
                p[i] = x[i];
                p[j] = x[j];
                v
            };
            let v = (corner(1.0, 1.0) - corner(1.0, -1.0) - corner(-1.0, 1.0) + corner(-1.0, -1.0))
                / (4.0 * hi * hj);
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_derivatives_are_exact() {
        // f = 3x² + 2xy + y², gradient (6x + 2y, 2x + 2y), Hessian [[6, 2], [2, 2]].
        let f = |v: &[f64]| 3.0 * v[0] * v[0] + 2.0 * v[0] * v[1] + v[1] * v[1];
        let x = [0.7, -1.3];
        let g = central_gradient(f, &x, &[1e-4, 1e-4]);
        assert!((g[0] - (6.0 * 0.7 - 2.6)).abs() < 1e-8);
        assert!((g[1] - (1.4 - 2.6)).abs() < 1e-8);
        let h = central_hessian(f, &x, &[1e-3, 1e-3]);
        assert!((h[(0, 0)] - 6.0).abs() < 1e-6);
        assert!((h[(0, 1)] - 2.0).abs() < 1e-6);
        assert!((h[(1, 1)] - 2.0).abs() < 1e-6);
    }
}
