//! Small dense helpers for covariance matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

const JITTER_RETRIES: usize = 3;
const JITTER_REL: f64 = 1e-12;

fn scale_of(a: &DMatrix<f64>) -> f64 {
    let s = a.diagonal().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

/// Lower Cholesky factor that tolerates rank deficiency: a pivot that is zero
/// up to rounding gives a zero column instead of failing.
fn cholesky_semidefinite(a: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let k = a.nrows();
    let scale = scale_of(a);
    let pivot_tol = 64.0 * f64::EPSILON * scale * k as f64;
    let rem_tol = 1e-7 * scale;
    let mut l = DMatrix::<f64>::zeros(k, k);
    for j in 0..k {
        let d = a[(j, j)] - (0..j).map(|m| l[(j, m)] * l[(j, m)]).sum::<f64>();
        if d > pivot_tol {
            let ljj = d.sqrt();
            l[(j, j)] = ljj;
            for i in j + 1..k {
                let s = a[(i, j)] - (0..j).map(|m| l[(i, m)] * l[(j, m)]).sum::<f64>();
                l[(i, j)] = s / ljj;
            }
        } else if d >= -pivot_tol {
            for i in j + 1..k {
                let s = a[(i, j)] - (0..j).map(|m| l[(i, m)] * l[(j, m)]).sum::<f64>();
                if s.abs() > rem_tol {
                    return None;
                }
            }
        } else {
            return None;
        }
    }
    Some(l)
}

/// Lower factor `L` with `L·Lᵀ ≈ a` for a symmetric positive-semidefinite `a`.
///
/// On failure the diagonal is inflated by `1e-12·trace/k` and the
/// factorization retried, at most three times.
pub fn cholesky_psd(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !a.is_square() {
        return Err(Error::NotPsd(format!(
            "matrix is {}x{}, not square",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NotPsd("matrix has non-finite entries".into()));
    }
    let k = a.nrows();
    let step = JITTER_REL * a.trace().abs() / k.max(1) as f64;
    let mut work = a.clone();
    for _ in 0..=JITTER_RETRIES {
        if let Some(l) = cholesky_semidefinite(&work) {
            return Ok(l);
        }
        for i in 0..k {
            work[(i, i)] += step;
        }
    }
    Err(Error::NotPsd(
        "cholesky factorization failed after jitter".into(),
    ))
}

/// Checks symmetry to `1e-12` and eigenvalues `≥ −1e-10`, both relative to
/// the largest diagonal entry when it exceeds one.
pub fn validate_psd(a: &DMatrix<f64>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotPsd("matrix is not square".into()));
    }
    let scale = scale_of(a).max(1.0);
    let k = a.nrows();
    for i in 0..k {
        for j in 0..i {
            if (a[(i, j)] - a[(j, i)]).abs() > 1e-12 * scale {
                return Err(Error::NotPsd(format!("asymmetric at ({i}, {j})")));
            }
        }
    }
    let eig = a.clone().symmetric_eigen();
    let min = eig.eigenvalues.iter().fold(f64::INFINITY, |m, &x| m.min(x));
    if min < -1e-10 * scale {
        return Err(Error::NotPsd(format!("smallest eigenvalue {min:e}")));
    }
    Ok(())
}
