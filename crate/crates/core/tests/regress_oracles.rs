//! Independent oracles for the OLS engine and the panel regression driver.

use chrono::NaiveDate;
use crashskew::regress::{ols_fit, run_model, CovarianceKind, DesignMatrix};
use crashskew::{AlignedPanel, ModelSpec, Term};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Solves `A z = b` by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        a.swap(c, piv);
        b.swap(c, piv);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut z = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * z[k]).sum();
        z[r] = (b[r] - s) / a[r][r];
    }
    z
}

/// Coefficients and classical standard errors from the normal equations.
fn normal_equations(y: &[f64], cols: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let k = cols.len();
    let n = y.len();
    let xtx: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| (0..n).map(|t| cols[i][t] * cols[j][t]).sum()).collect())
        .collect();
    let xty: Vec<f64> = (0..k).map(|i| (0..n).map(|t| cols[i][t] * y[t]).sum()).collect();
    let beta = solve(xtx.clone(), xty);
    let rss: f64 = (0..n)
        .map(|t| {
            let e = y[t] - (0..k).map(|i| cols[i][t] * beta[i]).sum::<f64>();
            e * e
        })
        .sum();
    let sigma2 = rss / (n - k) as f64;
    let se = (0..k)
        .map(|i| {
            let mut unit = vec![0.0; k];
            unit[i] = 1.0;
            (sigma2 * solve(xtx.clone(), unit)[i]).sqrt()
        })
        .collect();
    (beta, se)
}

fn design(cols: Vec<Vec<f64>>) -> DesignMatrix {
    let names = (0..cols.len()).map(|i| format!("x{i}")).collect();
    DesignMatrix { names, columns: cols, intercept: true }
}

fn random_system(seed: u64, n: usize, k: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = Normal::new(0.0, 1.0).unwrap();
    let mut cols = vec![vec![1.0; n]];
    for _ in 1..k {
        cols.push((0..n).map(|_| z.sample(&mut rng)).collect());
    }
    let y = (0..n)
        .map(|t| cols.iter().enumerate().map(|(j, c)| 0.3 * j as f64 * c[t]).sum::<f64>() + z.sample(&mut rng))
        .collect();
    (y, cols)
}

#[test]
fn matches_normal_equations() {
    for seed in 0..20 {
        let k = 2 + seed as usize % 4;
        let (y, cols) = random_system(seed, 50, k);
        let fit = ols_fit(&y, &design(cols.clone()), CovarianceKind::Classical).unwrap();
        let (beta, se) = normal_equations(&y, &cols);
        for j in 0..k {
            assert!((fit.coef[j] - beta[j]).abs() < 1e-10 * beta[j].abs().max(1.0));
            assert!((fit.stderr[j] - se[j]).abs() < 1e-10 * se[j].max(1.0));
        }
    }
}

#[test]
fn recovers_simulated_coefficients() {
    let n = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let z = Normal::new(0.0, 1.0).unwrap();
    let x: Vec<f64> = (0..n).map(|_| 0.1 * z.sample(&mut rng)).collect();
    let mut s = vec![0.0; n];
    for t in 1..n {
        s[t] = 0.01 + 0.2 * s[t - 1] - 0.08 * x[t - 1] + 0.01 * z.sample(&mut rng);
    }
    let dates: Vec<NaiveDate> = (0..n as i64)
        .map(|i| NaiveDate::from_ymd_opt(2015, 1, 1).unwrap() + chrono::Duration::days(i))
        .collect();
    let mut panel = AlignedPanel::new(dates);
    panel.insert_dense("skew", &s).unwrap();
    panel.insert_dense("x", &x).unwrap();
    let spec = ModelSpec::new("skew", vec![Term::new("skew", 1), Term::new("x", 1)]);
    let fit = run_model(&panel, &spec).unwrap();
    assert_eq!(fit.n_used, n - 1);
    let b = fit.coef[fit.get("x_lag1").unwrap()];
    let a = fit.coef[fit.get("skew_lag1").unwrap()];
    assert!((b + 0.08).abs() < 0.01, "{b}");
    assert!((a - 0.2).abs() < 0.05, "{a}");
}

fn fitted(fit_coef: &[f64], cols: &[Vec<f64>], t: usize) -> f64 {
    cols.iter().zip(fit_coef).map(|(c, b)| c[t] * b).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residuals_are_orthogonal(seed in 0u64..10_000, k in 2usize..6) {
        let (y, cols) = random_system(seed, 40, k);
        let fit = ols_fit(&y, &design(cols.clone()), CovarianceKind::Classical).unwrap();
        let e: Vec<f64> = (0..y.len()).map(|t| y[t] - fitted(&fit.coef, &cols, t)).collect();
        for c in &cols {
            let dot: f64 = c.iter().zip(&e).map(|(a, b)| a * b).sum();
            prop_assert!(dot.abs() < 1e-9);
        }
    }

    #[test]
    fn r2_never_falls_when_adding_a_column(seed in 0u64..10_000, k in 2usize..5) {
        let (y, cols) = random_system(seed, 40, k + 1);
        let small = ols_fit(&y, &design(cols[..k].to_vec()), CovarianceKind::Classical).unwrap();
        let big = ols_fit(&y, &design(cols), CovarianceKind::Classical).unwrap();
        prop_assert!(big.r2 >= small.r2 - 1e-12);
    }

    #[test]
    fn scaling_is_equivariant(seed in 0u64..10_000, c in 0.01f64..100.0, d in 0.01f64..100.0) {
        let (y, cols) = random_system(seed, 40, 3);
        let base = ols_fit(&y, &design(cols.clone()), CovarianceKind::Classical).unwrap();
        let ys: Vec<f64> = y.iter().map(|v| c * v).collect();
        let mut scaled = cols.clone();
        scaled[1] = scaled[1].iter().map(|v| d * v).collect();
        let other = ols_fit(&ys, &design(scaled), CovarianceKind::Classical).unwrap();
        let want = [c * base.coef[0], c / d * base.coef[1], c * base.coef[2]];
        for j in 0..3 {
            prop_assert!((other.coef[j] - want[j]).abs() < 1e-9 * want[j].abs().max(1.0));
            prop_assert!((other.tstat[j] - base.tstat[j]).abs() < 1e-8 * base.tstat[j].abs().max(1.0));
        }
        prop_assert!((other.r2 - base.r2).abs() < 1e-10);
    }
}
