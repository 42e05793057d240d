//! Fixed-step classical Runge-Kutta integration over any [`Number`].
//!
//! The integrator never inspects the number type beyond arithmetic, so the
//! same code path runs plain scalars, particles and linearized values. Fixed
//! steps keep every engine on an identical time grid; adaptive control would
//! need an error norm reduced over samples, which is a comparison on uncertain
//! values.

use crate::error::{Error, Result};
use crate::number::Number;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Record every this many steps. The final state is always recorded.
    pub record_every: usize,
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_end: f64, record_every: usize) -> Result<Self> {
        let cfg = Self {
            dt,
            t_end,
            record_every,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Domain(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_end.is_finite() && self.t_end >= self.dt) {
            return Err(Error::Domain(format!(
                "t_end must be at least dt, got t_end = {} and dt = {}",
                self.t_end, self.dt
            )));
        }
        if self.record_every == 0 {
            return Err(Error::Domain("record_every must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of steps, `t_end / dt` rounded to the nearest integer.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

/// Recorded trajectory of a `D`-dimensional state.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRecord<N, const D: usize = 2> {
    pub times: Vec<f64>,
    pub states: Vec<[N; D]>,
}

impl<N, const D: usize> SimRecord<N, D> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// State recorded closest to time `t`.
    pub fn state_near(&self, t: f64) -> Option<(f64, &[N; D])> {
        let i = self
            .times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))?
            .0;
        Some((self.times[i], &self.states[i]))
    }

    pub fn last(&self) -> Option<(f64, &[N; D])> {
        Some((*self.times.last()?, self.states.last()?))
    }

    /// Projects out component `k` of each recorded state.
    pub fn component(&self, k: usize) -> impl Iterator<Item = (f64, &N)> {
        self.times
            .iter()
            .copied()
            .zip(self.states.iter().map(move |s| &s[k]))
    }
}

#[inline]
fn axpy<N: Number, const D: usize>(u: &[N; D], k: &[N; D], h: f64) -> [N; D] {
    std::array::from_fn(|i| u[i].add_scaled(&k[i], h))
}

/// One classical RK4 step of `u' = f(u, t)`.
pub fn rk4_step<N, F, const D: usize>(f: &F, u: &[N; D], t: f64, dt: f64) -> [N; D]
where
    N: Number,
    F: Fn(&[N; D], f64) -> [N; D],
{
    let half = 0.5 * dt;
    let k1 = f(u, t);
    let k2 = f(&axpy(u, &k1, half), t + half);
    let k3 = f(&axpy(u, &k2, half), t + half);
    let k4 = f(&axpy(u, &k3, dt), t + dt);
    let w = dt / 6.0;
    let mut k1 = k1.into_iter();
    let mut k2 = k2.into_iter();
    let mut k3 = k3.into_iter();
    let mut k4 = k4.into_iter();
    std::array::from_fn(|i| {
        let (a, b, c, d) = (
            k1.next().unwrap(),
            k2.next().unwrap(),
            k3.next().unwrap(),
            k4.next().unwrap(),
        );
        u[i].rk4_update(a, b, c, d, w)
    })
}

/// Integrates from `t = 0` to `cfg.t_end`, recording `u0` and every
/// `record_every`-th state.
pub fn integrate<N, F, const D: usize>(
    f: F,
    u0: [N; D],
    cfg: &IntegratorConfig,
) -> Result<SimRecord<N, D>>
where
    N: Number,
    F: Fn(&[N; D], f64) -> [N; D],
{
    cfg.validate()?;
    let steps = cfg.steps();
    let cap = steps / cfg.record_every + 2;
    let mut rec = SimRecord {
        times: Vec::with_capacity(cap),
        states: Vec::with_capacity(cap),
    };
    let check = |u: &[N; D], t: f64| -> Result<()> {
        if u.iter().all(Number::all_finite) {
            Ok(())
        } else {
            Err(Error::NonFiniteState(t))
        }
    };
    check(&u0, 0.0)?;
    rec.times.push(0.0);
    rec.states.push(u0.clone());
    let mut u = u0;
    for k in 0..steps {
        let t = k as f64 * cfg.dt;
        u = rk4_step(&f, &u, t, cfg.dt);
        let done = k + 1;
        if done % cfg.record_every == 0 || done == steps {
            let t1 = done as f64 * cfg.dt;
            check(&u, t1)?;
            rec.times.push(t1);
            rec.states.push(u.clone());
        }
    }
    Ok(rec)
}
