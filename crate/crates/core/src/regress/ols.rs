use crate::dist::student_t_two_sided;
use crate::error::{Error, Result};
use crate::linalg::dot;

// A column is collinear when its norm after projection on earlier columns falls
// below this fraction of its original norm.
const COLLINEAR_TOL: f64 = 1e-10;

/// Column-major regressor matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    /// Whether one column is a constant; selects centered versus uncentered R².
    pub intercept: bool,
}

impl DesignMatrix {
    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CovarianceKind {
    /// `sigma^2 (X'X)^-1` with `sigma^2 = RSS / (n - k)`.
    #[default]
    Classical,
    /// White heteroskedasticity-consistent covariance with the `n / (n - k)` correction.
    Hc1,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionResult {
    pub names: Vec<String>,
    pub coef: Vec<f64>,
    pub stderr: Vec<f64>,
    pub tstat: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r2: f64,
    pub rss: f64,
    pub n_used: usize,
    pub df_resid: usize,
}

impl RegressionResult {
    pub fn get(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

type Matrix = Vec<Vec<f64>>;

/// Thin QR by modified Gram–Schmidt with one reorthogonalization pass.
/// Returns `Q` (column-major) and upper-triangular `R` (row-major, k x k).
fn qr(x: &DesignMatrix) -> Result<(Matrix, Matrix)> {
    let k = x.columns.len();
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut r = vec![vec![0.0; k]; k];
    for (j, col) in x.columns.iter().enumerate() {
        let original = dot(col, col).sqrt();
        let mut v = col.clone();
        for _ in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let c = dot(qi, &v);
                r[i][j] += c;
                v.iter_mut().zip(qi).for_each(|(vv, qq)| *vv -= c * qq);
            }
        }
        let nv = dot(&v, &v).sqrt();
        if !(nv > COLLINEAR_TOL * original) {
            return Err(Error::RankDeficient(x.names[j].clone()));
        }
        r[j][j] = nv;
        v.iter_mut().for_each(|vv| *vv /= nv);
        q.push(v);
    }
    Ok((q, r))
}

/// Inverse of an upper-triangular matrix.
fn upper_inverse(r: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = r.len();
    let mut inv = vec![vec![0.0; k]; k];
    for j in 0..k {
        inv[j][j] = 1.0 / r[j][j];
        for i in (0..j).rev() {
            let s: f64 = (i + 1..=j).map(|m| r[i][m] * inv[m][j]).sum();
            inv[i][j] = -s / r[i][i];
        }
    }
    inv
}

pub fn ols_fit(y: &[f64], x: &DesignMatrix, cov: CovarianceKind) -> Result<RegressionResult> {
    let n = y.len();
    let k = x.columns.len();
    if k == 0 {
        return Err(Error::InvalidInput("design matrix has no columns".into()));
    }
    if x.columns.iter().any(|c| c.len() != n) || x.names.len() != k {
        return Err(Error::InvalidInput("design matrix shape does not match the response".into()));
    }
    if n <= k {
        return Err(Error::InsufficientData(format!("{n} observations for {k} coefficients")));
    }
    let (q, r) = qr(x)?;
    let qty: Vec<f64> = q.iter().map(|qi| dot(qi, y)).collect();
    let rinv = upper_inverse(&r);
    let coef: Vec<f64> = (0..k).map(|i| (i..k).map(|j| rinv[i][j] * qty[j]).sum()).collect();

    let resid: Vec<f64> = (0..n)
        .map(|t| y[t] - x.columns.iter().zip(&coef).map(|(c, b)| c[t] * b).sum::<f64>())
        .collect();
    let rss = dot(&resid, &resid);
    let df = n - k;

    // (X'X)^-1 = R^-1 R^-T
    let xtx_inv = |i: usize, j: usize| (i.max(j)..k).map(|m| rinv[i][m] * rinv[j][m]).sum::<f64>();
    let variances: Vec<f64> = match cov {
        CovarianceKind::Classical => {
            let sigma2 = rss / df as f64;
            (0..k).map(|i| sigma2 * xtx_inv(i, i)).collect()
        }
        CovarianceKind::Hc1 => {
            // (X'X)^-1 X' = R^-1 Q'; row i of that times diag(e^2) times its transpose.
            let scale = n as f64 / df as f64;
            (0..k)
                .map(|i| {
                    let a: Vec<f64> = (0..n).map(|t| (i..k).map(|m| rinv[i][m] * q[m][t]).sum()).collect();
                    scale * a.iter().zip(&resid).map(|(ai, e)| ai * ai * e * e).sum::<f64>()
                })
                .collect()
        }
    };
    let stderr: Vec<f64> = variances.iter().map(|v| v.max(0.0).sqrt()).collect();
    let tstat: Vec<f64> = coef
        .iter()
        .zip(&stderr)
        .map(|(b, s)| if *s > 0.0 { b / s } else { f64::NAN })
        .collect();
    let p_values = tstat.iter().map(|t| student_t_two_sided(*t, df as f64)).collect();

    let tss = if x.intercept {
        let mean = y.iter().sum::<f64>() / n as f64;
        y.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
    } else {
        dot(y, y)
    };
    let r2 = if tss > 0.0 { (1.0 - rss / tss).clamp(0.0, 1.0) } else { 0.0 };

    Ok(RegressionResult {
        names: x.names.clone(),
        coef,
        stderr,
        tstat,
        p_values,
        r2,
        rss,
        n_used: n,
        df_resid: df,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design(cols: Vec<Vec<f64>>, intercept: bool) -> DesignMatrix {
        let names = (0..cols.len()).map(|i| format!("x{i}")).collect();
        DesignMatrix { names, columns: cols, intercept }
    }

    #[test]
    fn exact_line() {
        let x = design(vec![vec![1.0; 3], vec![1.0, 2.0, 3.0]], true);
        let r = ols_fit(&[1.0, 2.0, 3.0], &x, CovarianceKind::Classical).unwrap();
        assert!(r.coef[0].abs() < 1e-14);
        assert!((r.coef[1] - 1.0).abs() < 1e-14);
        assert!((r.r2 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn collinear_column_named() {
        let x = DesignMatrix {
            names: vec!["c".into(), "a".into(), "twice_a".into()],
            columns: vec![vec![1.0; 4], vec![1.0, 2.0, 3.0, 5.0], vec![2.0, 4.0, 6.0, 10.0]],
            intercept: true,
        };
        assert_eq!(
            ols_fit(&[1.0, 0.0, 2.0, 1.0], &x, CovarianceKind::Classical),
            Err(Error::RankDeficient("twice_a".into()))
        );
    }

    #[test]
    fn too_few_rows() {
        let x = design(vec![vec![1.0; 2], vec![1.0, 2.0]], true);
        assert!(matches!(ols_fit(&[1.0, 2.0], &x, CovarianceKind::Classical), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn hc1_matches_sandwich_by_hand() {
        // Single regressor without intercept: Var = n/(n-1) * sum(x^2 e^2) / (sum x^2)^2.
        let xs = [1.0, 2.0, -1.0, 0.5, 3.0];
        let ys = [1.2, 1.9, -0.7, 0.2, 3.4];
        let x = design(vec![xs.to_vec()], false);
        let r = ols_fit(&ys, &x, CovarianceKind::Hc1).unwrap();
        let sxx: f64 = xs.iter().map(|v| v * v).sum();
        let b: f64 = xs.iter().zip(&ys).map(|(a, c)| a * c).sum::<f64>() / sxx;
        let meat: f64 = xs.iter().zip(&ys).map(|(a, c)| (a * (c - b * a)).powi(2)).sum();
        let se = (5.0 / 4.0 * meat / (sxx * sxx)).sqrt();
        assert!((r.coef[0] - b).abs() < 1e-14);
        assert!((r.stderr[0] - se).abs() < 1e-14);
    }
}
