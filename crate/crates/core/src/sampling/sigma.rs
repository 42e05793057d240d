//! Equal-weight sigma points.
//!
//! For a `k`-dimensional mean `m` and covariance `Σ = L·Lᵀ` the set holds
//! `2k + 1` points: `m` itself and `m ± c·L·eⱼ`. Since particles are
//! unweighted, the scale `c = √((2k+1)/2)` is chosen so that the plain
//! population mean and covariance (divisor `2k + 1`) of the points equal `m`
//! and `Σ` exactly.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::cholesky_psd;
use crate::particles::Particles;

/// `k` jointly distributed particles, each with `2k + 1` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaPointSet {
    points: Vec<Particles>,
}

impl SigmaPointSet {
    pub fn dim(&self) -> usize {
        self.points.len()
    }

    /// Sample count `2k + 1`.
    pub fn count(&self) -> usize {
        self.points[0].len()
    }

    pub fn particles(&self) -> &[Particles] {
        &self.points
    }

    pub fn into_particles(self) -> Vec<Particles> {
        self.points
    }

    /// Population covariance (divisor `N`) of the point set.
    pub fn population_cov(&self) -> DMatrix<f64> {
        population_cov(&self.points)
    }
}

/// Covariance with divisor `N`, treating the samples as the whole population.
pub(crate) fn population_cov(ps: &[Particles]) -> DMatrix<f64> {
    let k = ps.len();
    let n = ps[0].len() as f64;
    let means: Vec<f64> = ps.iter().map(|p| p.mean()).collect();
    DMatrix::from_fn(k, k, |i, j| {
        ps[i]
            .samples()
            .iter()
            .zip(ps[j].samples())
            .map(|(a, b)| (a - means[i]) * (b - means[j]))
            .sum::<f64>()
            / n
    })
}

pub fn sigma_points(mean: &[f64], cov: &DMatrix<f64>) -> Result<SigmaPointSet> {
    let k = mean.len();
    if k == 0 {
        return Err(Error::Empty);
    }
    if cov.nrows() != k || cov.ncols() != k {
        return Err(Error::Domain(format!(
            "mean has {k} entries but covariance is {}x{}",
            cov.nrows(),
            cov.ncols()
        )));
    }
    let l = cholesky_psd(cov)?;
    let n = 2 * k + 1;
    let c = (n as f64 / 2.0).sqrt();
    let points = (0..k)
        .map(|i| {
            let mut xs = Vec::with_capacity(n);
            xs.push(mean[i]);
            for j in 0..k {
                xs.push(mean[i] + c * l[(i, j)]);
            }
            for j in 0..k {
                xs.push(mean[i] - c * l[(i, j)]);
            }
            Particles::from_vec_unchecked(xs)
        })
        .collect();
    Ok(SigmaPointSet { points })
}

/// Three points `{mu, mu ± √(3/2)·sigma}`.
///
/// Panics if `sigma` is negative or not finite.
pub fn sigma_points_1d(mu: f64, sigma: f64) -> Particles {
    assert!(
        sigma >= 0.0 && sigma.is_finite(),
        "sigma must be non-negative"
    );
    let set = sigma_points(&[mu], &DMatrix::from_element(1, 1, sigma * sigma))
        .expect("a non-negative variance is positive semidefinite");
    set.into_particles().remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_points() {
        let p = sigma_points_1d(0.0, 1.0);
        let h = 1.5f64.sqrt();
        assert_eq!(p.samples(), &[0.0, h, -h]);
        let pop_var: f64 = p.samples().iter().map(|x| x * x).sum::<f64>() / 3.0;
        assert!((pop_var - 1.0).abs() < 1e-15);
        assert!((h - 1.224_744_871_391_589).abs() < 1e-15);
    }

    #[test]
    fn zero_sigma() {
        assert_eq!(sigma_points_1d(5.0, 0.0).samples(), &[5.0, 5.0, 5.0]);
    }

    #[test]
    fn population_std_matches() {
        let p = sigma_points_1d(2.0, 0.3);
        let var = population_cov(std::slice::from_ref(&p))[(0, 0)];
        assert!((var.sqrt() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn three_dims_give_seven_points() {
        let cov = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4e-4, 1e-4, 4e-4]));
        let s = sigma_points(&[9.79, 1.0, 1.047], &cov).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.count(), 7);
        assert!((s.population_cov() - cov).amax() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(sigma_points(&[], &DMatrix::zeros(0, 0)).is_err());
        assert!(sigma_points(&[0.0], &DMatrix::identity(2, 2)).is_err());
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(sigma_points(&[0.0, 0.0], &bad).is_err());
    }
}
