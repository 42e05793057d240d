use nalgebra::DMatrix;
use serde::Serialize;

use super::{quantile_sorted, Particles};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    pub mean: f64,
    /// Divisor `N − 1`.
    pub std: f64,
    pub var: f64,
    pub min: f64,
    pub max: f64,
    /// `(probability, value)` pairs.
    pub quantiles: Vec<(f64, f64)>,
}

impl Particles {
    /// Moments, extremes and the requested quantiles in one pass over a sorted copy.
    pub fn summary(&self, probabilities: &[f64]) -> Result<SummaryStats> {
        let sorted = self.sorted();
        let quantiles = probabilities
            .iter()
            .map(|&q| quantile_sorted(&sorted, q).map(|v| (q, v)))
            .collect::<Result<Vec<_>>>()?;
        let var = self.var();
        Ok(SummaryStats {
            mean: self.mean(),
            std: var.sqrt(),
            var,
            min: sorted[0],
            max: sorted[sorted.len() - 1],
            quantiles,
        })
    }
}

/// Sample covariance (divisor `N − 1`) of jointly distributed particles.
pub fn cov(ps: &[Particles]) -> Result<DMatrix<f64>> {
    let k = ps.len();
    if k == 0 {
        return Err(Error::Empty);
    }
    let n = ps[0].len();
    for p in &ps[1..] {
        ps[0].check_len(p)?;
    }
    if n < 2 {
        return Err(Error::Domain(
            "covariance needs at least two samples".into(),
        ));
    }
    let centered: Vec<Vec<f64>> = ps
        .iter()
        .map(|p| {
            let m = p.mean();
            p.samples().iter().map(|x| x - m).collect()
        })
        .collect();
    let mut c = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let s: f64 = centered[i]
                .iter()
                .zip(&centered[j])
                .map(|(a, b)| a * b)
                .sum();
            let v = s / (n - 1) as f64;
            c[(i, j)] = v;
            c[(j, i)] = v;
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    /// Silverman's rule of thumb, `1.06·σ·N^(−1/5)`.
    Silverman,
    Fixed(f64),
}

pub fn silverman_bandwidth(p: &Particles) -> f64 {
    1.06 * p.std() * (p.len() as f64).powf(-0.2)
}

/// Gaussian kernel density estimate evaluated on `grid`.
///
/// Returns `(point, density)` pairs. A degenerate sample set (zero spread)
/// under [`Bandwidth::Silverman`] is a domain error since the rule yields a
/// zero bandwidth.
pub fn kde(p: &Particles, bandwidth: Bandwidth, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if grid.is_empty() {
        return Err(Error::Domain("kde grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("kde grid must be sorted".into()));
    }
    let h = match bandwidth {
        Bandwidth::Silverman => silverman_bandwidth(p),
        Bandwidth::Fixed(h) => h,
    };
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::Domain(format!(
            "bandwidth must be positive, got {h}"
        )));
    }
    let norm = 1.0 / (p.len() as f64 * h * (2.0 * std::f64::consts::PI).sqrt());
    Ok(grid
        .iter()
        .map(|&x| {
            let s: f64 = p
                .samples()
                .iter()
                .map(|&xi| {
                    let z = (x - xi) / h;
                    (-0.5 * z * z).exp()
                })
                .sum();
            (x, s * norm)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{pm, seeded_rng};

    fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect()
    }

    #[test]
    fn summary_bounds() {
        let mut rng = seeded_rng(2);
        let p = pm(1.0, 2.0, 200, &mut rng);
        let s = p.summary(&[0.05, 0.5, 0.95]).unwrap();
        assert!(s.quantiles.iter().all(|&(_, v)| s.min <= v && v <= s.max));
        assert!((s.var - s.std * s.std).abs() < 1e-14);
        assert!(p.summary(&[2.0]).is_err());
    }

    #[test]
    fn cov_of_identical_particles() {
        let p = Particles::from_samples(vec![1.0, 4.0, 2.0, 7.0]).unwrap();
        let c = cov(&[p.clone(), p.clone()]).unwrap();
        let v = p.var();
        for x in c.iter() {
            assert!((x - v).abs() < 1e-14);
        }
    }

    #[test]
    fn cov_independent() {
        let mut rng = seeded_rng(11);
        let a = pm(1.0, 1.0, 500, &mut rng);
        let b = pm(5.0, 2.0, 500, &mut rng);
        let c = cov(&[a, b]).unwrap();
        assert!((c[(0, 0)] - 1.0).abs() < 0.01);
        assert!((c[(1, 1)] - 4.0).abs() < 0.04);
        assert!(c[(0, 1)].abs() < 0.1);
    }

    #[test]
    fn cov_errors() {
        assert!(cov(&[]).is_err());
        let a = Particles::constant(1.0, 3);
        let b = Particles::constant(1.0, 4);
        assert!(matches!(cov(&[a, b]), Err(Error::CountMismatch { .. })));
        assert!(cov(&[Particles::constant(1.0, 1)]).is_err());
    }

    #[test]
    fn kde_peaks_at_constant() {
        let p = Particles::constant(2.0, 10);
        let grid = linspace(0.0, 4.0, 41);
        let d = kde(&p, Bandwidth::Fixed(0.3), &grid).unwrap();
        let (peak, _) = d
            .iter()
            .copied()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((peak - 2.0).abs() < 1e-12);
    }

    #[test]
    fn kde_integrates_to_one() {
        let mut rng = seeded_rng(4);
        let p = pm(0.0, 1.0, 500, &mut rng);
        let grid = linspace(-8.0, 8.0, 1601);
        let d = kde(&p, Bandwidth::Silverman, &grid).unwrap();
        let integral: f64 = d
            .windows(2)
            .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
            .sum();
        assert!((integral - 1.0).abs() < 0.01, "{integral}");
    }

    #[test]
    fn kde_standard_normal_at_zero() {
        let mut rng = seeded_rng(4);
        let p = pm(0.0, 1.0, 500, &mut rng);
        let d = kde(&p, Bandwidth::Silverman, &[0.0]).unwrap();
        let expected = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        assert!((d[0].1 - expected).abs() < 0.1 * expected);
    }

    #[test]
    fn kde_domain_errors() {
        let p = Particles::from_samples(vec![0.0, 1.0]).unwrap();
        assert!(kde(&p, Bandwidth::Fixed(0.0), &[0.0]).is_err());
        assert!(kde(&p, Bandwidth::Fixed(-1.0), &[0.0]).is_err());
        assert!(kde(&p, Bandwidth::Fixed(1.0), &[]).is_err());
        assert!(kde(&p, Bandwidth::Fixed(1.0), &[1.0, 0.0]).is_err());
    }
}
