//! The uncertain pendulum.
//!
//! State ordering is `u = [θ̇, θ]`, so the initial state `[0 ± 0, π/3 ± 0.02]`
//! means the pendulum starts at rest from sixty degrees. The right-hand side is
//! written once against [`Number`] and run under every propagation [`Engine`].

use std::f64::consts::FRAC_PI_3;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::LinUncertain;
use crate::number::{Number, Single};
use crate::ode::{integrate, IntegratorConfig, SimRecord};
use crate::particles::Particles;
use crate::sampling::{self, sigma_points};

/// Gravitational acceleration, mean and standard deviation (m/s²).
pub const GRAVITY: (f64, f64) = (9.79, 0.02);
/// Pendulum length, mean and standard deviation (m).
pub const LENGTH: (f64, f64) = (1.00, 0.01);
/// Initial angle, mean and standard deviation (rad).
pub const THETA0: (f64, f64) = (FRAC_PI_3, 0.02);
/// Initial angular velocity, known exactly.
pub const OMEGA0: f64 = 0.0;

/// Default sample count for the Monte-Carlo engines.
pub const DEFAULT_MC_COUNT: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct PendulumParams<N> {
    pub g: N,
    pub l: N,
    /// Initial `[θ̇, θ]`.
    pub u0: [N; 2],
}

/// `du = [-(g/L)·sin θ, θ̇]`. The parameter-only factor `-(g/L)` is
/// computed once, not on every evaluation.
pub fn pendulum_rhs<N: Number>(params: &PendulumParams<N>) -> impl Fn(&[N; 2], f64) -> [N; 2] {
    let k = -(params.g.clone() / params.l.clone());
    move |u, _t| [u[1].sin() * &k, u[0].clone()]
}

/// Energy per unit mass, `½(L·θ̇)² − g·L·cos θ`.
pub fn energy<N: Number>(u: &[N; 2], params: &PendulumParams<N>) -> N {
    let v = params.l.clone() * u[0].clone();
    v.clone() * v * 0.5 - params.g.clone() * params.l.clone() * u[1].cos()
}

impl PendulumParams<f64> {
    pub fn nominal() -> Self {
        Self {
            g: GRAVITY.0,
            l: LENGTH.0,
            u0: [OMEGA0, THETA0.0],
        }
    }
}

impl PendulumParams<Single> {
    pub fn nominal_single() -> Self {
        let p = PendulumParams::nominal();
        Self {
            g: Single(p.g as f32),
            l: Single(p.l as f32),
            u0: [Single(p.u0[0] as f32), Single(p.u0[1] as f32)],
        }
    }
}

impl PendulumParams<LinUncertain> {
    /// Three independent sources for `g`, `L` and `θ₀`.
    pub fn linear() -> Self {
        Self {
            g: LinUncertain::source(GRAVITY.0, GRAVITY.1),
            l: LinUncertain::source(LENGTH.0, LENGTH.1),
            u0: [
                LinUncertain::constant(OMEGA0),
                LinUncertain::source(THETA0.0, THETA0.1),
            ],
        }
    }
}

impl PendulumParams<Particles> {
    /// Systematic Gaussian draws of `g`, `L`, `θ₀` in that order from one
    /// generator seeded with `seed`.
    pub fn monte_carlo(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut rng = sampling::seeded_rng(seed);
        let g = sampling::pm(GRAVITY.0, GRAVITY.1, n, &mut rng);
        let l = sampling::pm(LENGTH.0, LENGTH.1, n, &mut rng);
        let th = sampling::pm(THETA0.0, THETA0.1, n, &mut rng);
        Ok(Self {
            g,
            l,
            u0: [Particles::constant(OMEGA0, n), th],
        })
    }

    /// Seven sigma points over `(g, L, θ₀)`.
    pub fn sigma() -> Self {
        let mean = [GRAVITY.0, LENGTH.0, THETA0.0];
        let sd = DVector::from_vec(vec![GRAVITY.1, LENGTH.1, THETA0.1]);
        let cov = DMatrix::from_diagonal(&sd.component_mul(&sd));
        let mut pts = sigma_points(&mean, &cov)
            .expect("a diagonal covariance is positive semidefinite")
            .into_particles();
        let th = pts.pop().unwrap();
        let l = pts.pop().unwrap();
        let g = pts.pop().unwrap();
        let n = g.len();
        Self {
            g,
            l,
            u0: [Particles::constant(OMEGA0, n), th],
        }
    }

    pub fn count(&self) -> usize {
        self.g.len()
    }

    /// Scalar parameters of sample `i`.
    pub fn sample(&self, i: usize) -> PendulumParams<f64> {
        PendulumParams {
            g: self.g.samples()[i],
            l: self.l.samples()[i],
            u0: [self.u0[0].samples()[i], self.u0[1].samples()[i]],
        }
    }
}

/// Propagation engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Scalar32,
    Scalar64,
    Linear,
    Mc(usize),
    Sigma,
    /// `N` independent scalar simulations using the samples of `Mc(N)`.
    NaiveMc(usize),
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::Scalar32 => "scalar32",
            Engine::Scalar64 => "scalar64",
            Engine::Linear => "linear",
            Engine::Mc(_) => "mc",
            Engine::Sigma => "sigma",
            Engine::NaiveMc(_) => "naive",
        }
    }

    /// Samples carried per state component; 1 for point and linear engines.
    pub fn count(&self) -> usize {
        match self {
            Engine::Mc(n) | Engine::NaiveMc(n) => *n,
            Engine::Sigma => 7,
            _ => 1,
        }
    }

    /// Parses a mode name, attaching `n` to the sampled engines.
    pub fn parse(mode: &str, n: usize) -> Result<Self> {
        Ok(match mode.to_ascii_lowercase().as_str() {
            "scalar32" | "float32" | "f32" => Engine::Scalar32,
            "scalar64" | "scalar" | "float64" | "f64" => Engine::Scalar64,
            "linear" => Engine::Linear,
            "mc" => Engine::Mc(n),
            "sigma" => Engine::Sigma,
            "naive" | "naivemc" | "naive-mc" => Engine::NaiveMc(n),
            other => return Err(Error::Parse(format!(
                "unknown mode '{other}' (expected scalar32, scalar64, linear, mc, sigma or naive)"
            ))),
        })
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Mc(n) | Engine::NaiveMc(n) => write!(f, "{}({n})", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for Engine {
    type Err = Error;

    /// Accepts `mc`, `mc(500)` or `naive(100)`; bare sampled modes use
    /// [`DEFAULT_MC_COUNT`].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((mode, rest)) = s.split_once('(') {
            let n = rest
                .strip_suffix(')')
                .and_then(|x| x.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad engine '{s}'")))?;
            Engine::parse(mode, n)
        } else {
            Engine::parse(s, DEFAULT_MC_COUNT)
        }
    }
}

/// Parameters and recorded trajectory of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineRun<N> {
    pub params: PendulumParams<N>,
    pub record: SimRecord<N>,
}

impl<N: Number> EngineRun<N> {
    pub fn energies(&self) -> Vec<N> {
        self.record
            .states
            .iter()
            .map(|u| energy(u, &self.params))
            .collect()
    }
}

fn max_drift(e0: f64, es: impl Iterator<Item = f64>) -> f64 {
    es.map(|e| ((e - e0) / e0).abs()).fold(0.0, f64::max)
}

impl EngineRun<f64> {
    pub fn max_relative_energy_drift(&self) -> f64 {
        let es = self.energies();
        max_drift(es[0], es.iter().copied())
    }
}

impl EngineRun<Particles> {
    /// Largest relative energy drift over samples and recorded times.
    pub fn max_relative_energy_drift(&self) -> f64 {
        let es = self.energies();
        let n = es[0].len();
        (0..n)
            .map(|i| max_drift(es[0].samples()[i], es.iter().map(|e| e.samples()[i])))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Trajectory {
    Scalar32(EngineRun<Single>),
    Scalar64(EngineRun<f64>),
    Linear(EngineRun<LinUncertain>),
    /// Monte-Carlo, naive Monte-Carlo and sigma-point runs.
    Particles(EngineRun<Particles>),
}

/// One row of a trajectory summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub t: f64,
    pub mean: f64,
    pub std: f64,
    pub q05: f64,
    pub q95: f64,
}

/// Standard normal 95% quantile, for the Gaussian band of linear runs.
const Z95: f64 = 1.644_853_626_951_472_2;

#[derive(Debug, Clone, PartialEq)]
pub struct PendulumRun {
    pub engine: Engine,
    pub cfg: IntegratorConfig,
    pub trajectory: Trajectory,
}

impl PendulumRun {
    /// Summary of component `k` (0 = θ̇, 1 = θ) at each recorded time.
    ///
    /// Sigma-point runs report the population standard deviation, which is
    /// the moment the points are built to reproduce.
    pub fn summary(&self, k: usize) -> Vec<SummaryRow> {
        let point = |t: f64, v: f64| SummaryRow {
            t,
            mean: v,
            std: 0.0,
            q05: v,
            q95: v,
        };
        match &self.trajectory {
            Trajectory::Scalar32(r) => r
                .record
                .component(k)
                .map(|(t, x)| point(t, x.0 as f64))
                .collect(),
            Trajectory::Scalar64(r) => r.record.component(k).map(|(t, x)| point(t, *x)).collect(),
            Trajectory::Linear(r) => r
                .record
                .component(k)
                .map(|(t, x)| {
                    let (m, s) = (x.value(), x.std());
                    SummaryRow {
                        t,
                        mean: m,
                        std: s,
                        q05: m - Z95 * s,
                        q95: m + Z95 * s,
                    }
                })
                .collect(),
            Trajectory::Particles(r) => {
                let population = self.engine == Engine::Sigma;
                r.record
                    .component(k)
                    .map(|(t, p)| {
                        let n = p.len() as f64;
                        let std = if population {
                            (p.var() * (n - 1.0) / n).sqrt()
                        } else {
                            p.std()
                        };
                        SummaryRow {
                            t,
                            mean: p.mean(),
                            std,
                            q05: p.quantile(0.05).unwrap_or(f64::NAN),
                            q95: p.quantile(0.95).unwrap_or(f64::NAN),
                        }
                    })
                    .collect()
            }
        }
    }

    pub fn theta_summary(&self) -> Vec<SummaryRow> {
        self.summary(1)
    }

    /// Per-sample values of component `k`, for sampled engines.
    pub fn samples(&self, k: usize) -> Option<Vec<(f64, &[f64])>> {
        match &self.trajectory {
            Trajectory::Particles(r) => Some(
                r.record
                    .component(k)
                    .map(|(t, p)| (t, p.samples()))
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn particles(&self) -> Option<&EngineRun<Particles>> {
        match &self.trajectory {
            Trajectory::Particles(r) => Some(r),
            _ => None,
        }
    }
}

fn run<N: Number>(params: PendulumParams<N>, cfg: &IntegratorConfig) -> Result<EngineRun<N>> {
    let record = integrate(pendulum_rhs(&params), params.u0.clone(), cfg)?;
    Ok(EngineRun { params, record })
}

/// Runs each sample as an independent scalar simulation and reassembles the
/// results into particles. `threads > 1` splits the samples across threads.
fn run_naive(
    params: PendulumParams<Particles>,
    cfg: &IntegratorConfig,
    threads: usize,
) -> Result<EngineRun<Particles>> {
    let n = params.count();
    let one = |i: usize| run(params.sample(i), cfg).map(|r| r.record);
    let records: Vec<SimRecord<f64>> = if threads <= 1 {
        (0..n).map(one).collect::<Result<_>>()?
    } else {
        let chunk = n.div_ceil(threads);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..n)
                .step_by(chunk)
                .map(|lo| {
                    let one = &one;
                    s.spawn(move || {
                        (lo..(lo + chunk).min(n))
                            .map(one)
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            let mut all = Vec::with_capacity(n);
            for h in handles {
                all.extend(h.join().expect("simulation thread panicked")?);
            }
            Ok::<_, Error>(all)
        })?
    };
    let times = records[0].times.clone();
    let states = (0..times.len())
        .map(|j| {
            std::array::from_fn(|k| {
                Particles::from_vec_unchecked(records.iter().map(|r| r.states[j][k]).collect())
            })
        })
        .collect();
    Ok(EngineRun {
        params,
        record: SimRecord { times, states },
    })
}

/// Simulates the pendulum under `engine`. `seed` drives the Monte-Carlo
/// draws; `Mc(n)` and `NaiveMc(n)` with the same seed share their samples.
pub fn simulate_pendulum(engine: Engine, seed: u64, cfg: &IntegratorConfig) -> Result<PendulumRun> {
    simulate_pendulum_threads(engine, seed, cfg, 1)
}

/// As [`simulate_pendulum`]; `threads` only affects [`Engine::NaiveMc`].
pub fn simulate_pendulum_threads(
    engine: Engine,
    seed: u64,
    cfg: &IntegratorConfig,
    threads: usize,
) -> Result<PendulumRun> {
    cfg.validate()?;
    let trajectory = match engine {
        Engine::Scalar32 => Trajectory::Scalar32(run(PendulumParams::nominal_single(), cfg)?),
        Engine::Scalar64 => Trajectory::Scalar64(run(PendulumParams::nominal(), cfg)?),
        Engine::Linear => Trajectory::Linear(run(PendulumParams::linear(), cfg)?),
        Engine::Mc(n) => Trajectory::Particles(run(PendulumParams::monte_carlo(n, seed)?, cfg)?),
        Engine::Sigma => Trajectory::Particles(run(PendulumParams::sigma(), cfg)?),
        Engine::NaiveMc(n) => Trajectory::Particles(run_naive(
            PendulumParams::monte_carlo(n, seed)?,
            cfg,
            threads,
        )?),
    };
    Ok(PendulumRun {
        engine,
        cfg: *cfg,
        trajectory,
    })
}
