use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Standard normal quantile (inverse CDF), Wichura's AS 241 rational
/// approximation. Relative accuracy is about 1e-16 over (0, 1).
// coefficients as published
#[allow(clippy::excessive_precision)]
pub fn standard_normal_quantile(p: f64) -> f64 {
    if !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        let num = (((((((2.509_080_928_730_122_672_7e3 * r + 3.343_057_558_358_812_810_5e4)
            * r
            + 6.726_577_092_700_870_085_3e4)
            * r
            + 4.592_195_393_154_987_145_7e4)
            * r
            + 1.373_169_376_550_946_112_5e4)
            * r
            + 1.971_590_950_306_551_442_7e3)
            * r
            + 1.331_416_678_917_843_774_5e2)
            * r
            + 3.387_132_872_796_366_608_0)
            * q;
        let den = ((((((5.226_495_278_852_854_561_0e3 * r + 2.872_908_573_572_194_267_4e4) * r
            + 3.930_789_580_009_271_061_0e4)
            * r
            + 2.121_379_430_158_659_586_7e4)
            * r
            + 5.394_196_021_424_751_107_7e3)
            * r
            + 6.871_870_074_920_579_083_0e2)
            * r
            + 4.231_333_070_160_091_125_2e1)
            * r
            + 1.0;
        return num / den;
    }
    let mut r = if q < 0.0 { p } else { 1.0 - p };
    r = (-r.ln()).sqrt();
    let z = if r <= 5.0 {
        r -= 1.6;
        let num = ((((((7.745_450_142_783_414_076_4e-4 * r + 2.272_384_498_926_918_458_33e-2)
            * r
            + 2.417_807_251_774_506_117_7e-1)
            * r
            + 1.270_458_252_452_368_382_58)
            * r
            + 3.647_848_324_763_204_605_04)
            * r
            + 5.769_497_221_460_691_405_5)
            * r
            + 4.630_337_846_156_545_295_9)
            * r
            + 1.423_437_110_749_683_577_34;
        let den = ((((((1.050_750_071_644_416_843_24e-9 * r + 5.475_938_084_995_344_946e-4)
            * r
            + 1.519_866_656_361_645_719_66e-2)
            * r
            + 1.481_039_764_274_800_745_9e-1)
            * r
            + 6.897_673_349_851_000_045_5e-1)
            * r
            + 1.676_384_830_183_803_849_4)
            * r
            + 2.053_191_626_637_758_821_87)
            * r
            + 1.0;
        num / den
    } else {
        r -= 5.0;
        let num = ((((((2.010_334_399_292_288_132_65e-7 * r + 2.711_555_568_743_487_578_15e-5)
            * r
            + 1.242_660_947_388_078_438_6e-3)
            * r
            + 2.653_218_952_657_612_309_3e-2)
            * r
            + 2.965_605_718_285_048_912_3e-1)
            * r
            + 1.784_826_539_917_291_335_8)
            * r
            + 5.463_784_911_164_114_369_9)
            * r
            + 6.657_904_643_501_103_777_2;
        let den = ((((((2.044_263_103_389_939_785_64e-15 * r + 1.421_511_758_316_445_888_7e-7)
            * r
            + 1.846_318_317_510_054_681_8e-5)
            * r
            + 7.868_691_311_456_132_591e-4)
            * r
            + 1.487_536_129_085_061_485_25e-2)
            * r
            + 1.369_298_809_227_358_053_1e-1)
            * r
            + 5.998_322_065_558_879_376_9e-1)
            * r
            + 1.0;
        num / den
    };
    if q < 0.0 {
        -z
    } else {
        z
    }
}

/// A user-supplied quantile function with optional known moments.
#[derive(Clone)]
pub struct QuantileFn {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    mean: Option<f64>,
    std: Option<f64>,
}

impl QuantileFn {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            f: Arc::new(f),
            mean: None,
            std: None,
        }
    }

    pub fn with_moments(mut self, mean: f64, std: f64) -> Self {
        self.mean = Some(mean);
        self.std = Some(std);
        self
    }
}

impl fmt::Debug for QuantileFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuantileFn")
            .field("mean", &self.mean)
            .field("std", &self.std)
            .finish_non_exhaustive()
    }
}

/// A univariate distribution known through its quantile function.
#[derive(Debug, Clone)]
pub enum ScalarDistribution {
    Normal { mu: f64, sigma: f64 },
    Uniform { lo: f64, hi: f64 },
    Quantile(QuantileFn),
}

// Resolution of the midpoint rule used for moments of a bare quantile function.
const MOMENT_GRID: usize = 100_000;

impl ScalarDistribution {
    pub fn normal(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || sigma < 0.0 {
            return Err(Error::Domain(format!("invalid normal({mu}, {sigma})")));
        }
        Ok(Self::Normal { mu, sigma })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || hi <= lo {
            return Err(Error::Domain(format!("invalid uniform({lo}, {hi})")));
        }
        Ok(Self::Uniform { lo, hi })
    }

    pub fn from_quantile(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Quantile(QuantileFn::new(f))
    }

    /// Poisson distribution, as a step quantile function.
    pub fn poisson(rate: f64) -> Result<Self> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(Error::Domain(format!("invalid poisson rate {rate}")));
        }
        let f = move |u: f64| {
            let mut k = 0u32;
            let mut pmf = (-rate).exp();
            let mut cdf = pmf;
            while cdf < u && k < 100_000 {
                k += 1;
                pmf *= rate / k as f64;
                cdf += pmf;
            }
            k as f64
        };
        Ok(Self::Quantile(
            QuantileFn::new(f).with_moments(rate, rate.sqrt()),
        ))
    }

    /// Inverse CDF at `u ∈ (0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        match self {
            Self::Normal { mu, sigma } => mu + sigma * standard_normal_quantile(u),
            Self::Uniform { lo, hi } => lo + (hi - lo) * u,
            Self::Quantile(q) => (q.f)(u),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            Self::Normal { mu, .. } => *mu,
            Self::Uniform { lo, hi } => 0.5 * (lo + hi),
            Self::Quantile(q) => q.mean.unwrap_or_else(|| self.midpoint_moments().0),
        }
    }

    pub fn std(&self) -> f64 {
        match self {
            Self::Normal { sigma, .. } => *sigma,
            Self::Uniform { lo, hi } => (hi - lo) / 12f64.sqrt(),
            Self::Quantile(q) => q.std.unwrap_or_else(|| self.midpoint_moments().1),
        }
    }

    fn midpoint_moments(&self) -> (f64, f64) {
        let n = MOMENT_GRID as f64;
        let (mut s, mut s2) = (0.0, 0.0);
        for i in 0..MOMENT_GRID {
            let x = self.quantile((i as f64 + 0.5) / n);
            s += x;
            s2 += x * x;
        }
        let m = s / n;
        (m, (s2 / n - m * m).max(0.0).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::excessive_precision)]
    fn normal_quantile_reference_values() {
        // mpmath, 30 digits: sqrt(2)*erfinv(2p-1)
        let cases = [
            (0.75, 0.674489750196081743202227014541),
            (0.975, 1.95996398454005423552459443052),
            (0.999, 3.09023230616781354154039983011),
            (1e-10, -6.36134090240405620469535501582),
            (0.3, -0.524400512708040784038289325025),
        ];
        for (p, z) in cases {
            let got = standard_normal_quantile(p);
            assert!(((got - z) / z).abs() < 1e-14, "p={p}: {got} vs {z}");
        }
        assert_eq!(standard_normal_quantile(0.5), 0.0);
        assert!(standard_normal_quantile(1.5).is_nan());
    }

    #[test]
    fn normal_quantile_is_monotone() {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..10_000 {
            let z = standard_normal_quantile(i as f64 / 10_000.0);
            assert!(z > prev);
            prev = z;
        }
    }

    #[test]
    fn constructors_validate() {
        assert!(ScalarDistribution::normal(0.0, -1.0).is_err());
        assert!(ScalarDistribution::normal(0.0, f64::NAN).is_err());
        assert!(ScalarDistribution::uniform(1.0, 1.0).is_err());
        assert!(ScalarDistribution::poisson(0.0).is_err());
    }

    #[test]
    fn moments() {
        let n = ScalarDistribution::normal(2.0, 3.0).unwrap();
        assert_eq!(n.quantile(0.5), 2.0);
        assert_eq!((n.mean(), n.std()), (2.0, 3.0));
        let u = ScalarDistribution::uniform(2.0, 4.0).unwrap();
        assert_eq!(u.mean(), 3.0);
        let q = ScalarDistribution::from_quantile(|u| 2.0 * u);
        assert!((q.mean() - 1.0).abs() < 1e-9);
        assert!((q.std() - 2.0 / 12f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn poisson_steps() {
        let p = ScalarDistribution::poisson(3.0).unwrap();
        // P(X = 0) = e^-3 ≈ 0.0498
        assert_eq!(p.quantile(0.04), 0.0);
        assert_eq!(p.quantile(0.06), 1.0);
        assert_eq!(p.mean(), 3.0);
    }
}
