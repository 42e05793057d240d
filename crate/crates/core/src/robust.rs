//! Worst-case optimization over uncertain coefficients.
//!
//! The cost is `-(3x + 2y) + penalty·[max(c·x + d·y) > limit]`, where the max
//! is taken over particles, so a point is accepted only if the constraint
//! holds for every sample. The indicator makes the cost discontinuous; the
//! descent treats the jump as a barrier by never accepting a step that raises
//! the cost.
//!
//! Decision variables live in the quadrant `x, y ≥ 0`. Without it the problem
//! is unbounded for some draws of `c` and `d`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::particles::Particles;
use crate::sampling;

#[derive(Debug, Clone, PartialEq)]
pub struct RobustProblem {
    pub c: Particles,
    pub d: Particles,
    pub penalty: f64,
    pub limit: f64,
}

impl RobustProblem {
    pub fn new(c: Particles, d: Particles, penalty: f64, limit: f64) -> Result<Self> {
        if c.len() != d.len() {
            return Err(Error::CountMismatch {
                left: c.len(),
                right: d.len(),
            });
        }
        if !(penalty >= 0.0 && penalty.is_finite()) {
            return Err(Error::Domain(format!(
                "penalty must be non-negative, got {penalty}"
            )));
        }
        if !limit.is_finite() {
            return Err(Error::Domain(format!("limit must be finite, got {limit}")));
        }
        Ok(Self {
            c,
            d,
            penalty,
            limit,
        })
    }

    /// `c, d = 1 ± 0.1` with `n` samples each, penalty 10000 and limit 10.
    pub fn standard(n: usize, seed: u64) -> Self {
        let mut rng = sampling::seeded_rng(seed);
        let c = sampling::pm(1.0, 0.1, n, &mut rng);
        let d = sampling::pm(1.0, 0.1, n, &mut rng);
        Self {
            c,
            d,
            penalty: 10_000.0,
            limit: 10.0,
        }
    }

    /// Particle maximum of `c·x + d·y`.
    pub fn worst_case(&self, [x, y]: [f64; 2]) -> f64 {
        self.c
            .samples()
            .iter()
            .zip(self.d.samples())
            .map(|(c, d)| c * x + d * y)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn violates(&self, pars: [f64; 2]) -> bool {
        self.worst_case(pars) > self.limit
    }

    pub fn objective([x, y]: [f64; 2]) -> f64 {
        -(3.0 * x + 2.0 * y)
    }
}

pub fn robust_cost(pars: [f64; 2], prob: &RobustProblem) -> f64 {
    let hit = if prob.violates(pars) { 1.0 } else { 0.0 };
    RobustProblem::objective(pars) + prob.penalty * hit
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentConfig {
    /// Initial trial step along the search direction.
    pub step0: f64,
    /// Backtracking factor.
    pub shrink: f64,
    pub max_iters: usize,
    /// Relative finite-difference step; coordinate `j` uses `grad_h·(1 + |pⱼ|)`.
    pub grad_h: f64,
    /// Stop once the projected gradient norm falls below this.
    pub tol: f64,
}

impl Default for DescentConfig {
    fn default() -> Self {
        Self {
            step0: 1.0,
            shrink: 0.5,
            max_iters: 1000,
            grad_h: 1e-6,
            tol: 1e-8,
        }
    }
}

impl DescentConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.step0 > 0.0
            && self.shrink > 0.0
            && self.shrink < 1.0
            && self.max_iters > 0
            && self.grad_h > 0.0
            && self.tol > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "invalid descent configuration {self:?}"
            )))
        }
    }
}

fn finite(f: &impl Fn([f64; 2]) -> f64, p: [f64; 2]) -> Result<f64> {
    let v = f(p);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteObjective(p))
    }
}

fn shifted(p: [f64; 2], j: usize, h: f64) -> [f64; 2] {
    let mut q = p;
    q[j] += h;
    q
}

/// Central-difference gradient with step `h` in each coordinate.
pub fn fd_gradient(f: impl Fn([f64; 2]) -> f64, pars: [f64; 2], h: f64) -> Result<[f64; 2]> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let mut g = [0.0; 2];
    for (j, gj) in g.iter_mut().enumerate() {
        let fp = finite(&f, shifted(pars, j, h))?;
        let fm = finite(&f, shifted(pars, j, -h))?;
        *gj = (fp - fm) / (2.0 * h);
    }
    Ok(g)
}

/// Central differences, falling back to a one-sided difference when one side
/// of the stencil lies across the penalty cliff.
fn piecewise_gradient(prob: &RobustProblem, p: [f64; 2], rel_h: f64) -> Result<[f64; 2]> {
    let f = |q| robust_cost(q, prob);
    let side = prob.violates(p);
    let f0 = finite(&f, p)?;
    let mut g = [0.0; 2];
    for (j, gj) in g.iter_mut().enumerate() {
        let h = rel_h * (1.0 + p[j].abs());
        let (qp, qm) = (shifted(p, j, h), shifted(p, j, -h));
        let (fp, fm) = (finite(&f, qp)?, finite(&f, qm)?);
        *gj = match (prob.violates(qp) == side, prob.violates(qm) == side) {
            (true, true) | (false, false) => (fp - fm) / (2.0 * h),
            (true, false) => (fp - f0) / h,
            (false, true) => (f0 - fm) / h,
        };
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Projected gradient below tolerance, or no feasible descent direction.
    Stationary,
    /// The line search shrank the step to nothing.
    StepCollapse,
    MaxIters,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustSolution {
    pub pars: [f64; 2],
    pub cost: f64,
    pub worst_case: f64,
    pub iterations: usize,
    pub stop: StopReason,
    /// Cost of every accepted iterate, starting with the initial point.
    pub history: Vec<f64>,
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Outward normals of constraints that are active at `p`: samples whose
/// slack is within `tol`, and the coordinate bounds.
fn active_normals(prob: &RobustProblem, p: [f64; 2], tol: f64) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    if prob.penalty > 0.0 {
        for (&c, &d) in prob.c.samples().iter().zip(prob.d.samples()) {
            if c * p[0] + d * p[1] >= prob.limit - tol {
                out.push([c, d]);
            }
        }
    }
    if p[0] <= tol {
        out.push([-1.0, 0.0]);
    }
    if p[1] <= tol {
        out.push([0.0, -1.0]);
    }
    out
}

/// Steepest descent, projected onto the tangent of one active constraint if
/// the raw direction points outward. `None` if no feasible descent exists.
fn search_direction(g: [f64; 2], active: &[[f64; 2]]) -> Option<[f64; 2]> {
    let raw = [-g[0], -g[1]];
    let feasible = |d: [f64; 2]| {
        active
            .iter()
            .all(|n| dot(*n, d) <= 1e-12 * dot(*n, *n).sqrt())
    };
    let mut candidates = vec![raw];
    for n in active {
        let s = dot(*n, raw) / dot(*n, *n);
        if s > 0.0 {
            candidates.push([raw[0] - s * n[0], raw[1] - s * n[1]]);
        }
    }
    candidates
        .into_iter()
        .filter(|d| feasible(*d) && dot(g, *d) < 0.0)
        .max_by(|a, b| (-dot(g, *a)).total_cmp(&-dot(g, *b)))
}

/// Minimizes [`robust_cost`] from `pars0` over `x, y ≥ 0`.
pub fn minimize(
    prob: &RobustProblem,
    pars0: [f64; 2],
    cfg: &DescentConfig,
) -> Result<RobustSolution> {
    cfg.validate()?;
    if !(pars0.iter().all(|v| v.is_finite() && *v >= 0.0)) {
        return Err(Error::Domain(format!(
            "start point must be finite and non-negative, got {pars0:?}"
        )));
    }
    let cost = |p| robust_cost(p, prob);
    let act_tol = 1e-9 * (1.0 + prob.limit.abs());
    let mut p = pars0;
    let mut fp = finite(&cost, p)?;
    let mut history = vec![fp];
    let mut stop = StopReason::MaxIters;
    let mut iterations = 0;
    while iterations < cfg.max_iters {
        let g = piecewise_gradient(prob, p, cfg.grad_h)?;
        let Some(dir) = search_direction(g, &active_normals(prob, p, act_tol)) else {
            stop = StopReason::Stationary;
            break;
        };
        if dot(dir, dir).sqrt() < cfg.tol {
            stop = StopReason::Stationary;
            break;
        }
        let mut s = cfg.step0;
        let accepted = loop {
            let q = [p[0] + s * dir[0], p[1] + s * dir[1]];
            if q[0] >= 0.0 && q[1] >= 0.0 {
                let fq = finite(&cost, q)?;
                if fq < fp {
                    break Some((q, fq));
                }
            }
            s *= cfg.shrink;
            if s * dot(dir, dir).sqrt() < 1e-14 * (1.0 + p[0].abs() + p[1].abs()) {
                break None;
            }
        };
        iterations += 1;
        match accepted {
            Some((q, fq)) => {
                p = q;
                fp = fq;
                history.push(fp);
            }
            None => {
                stop = StopReason::StepCollapse;
                break;
            }
        }
    }
    if prob.penalty > 0.0 && prob.violates(p) {
        return Err(Error::Infeasible(pars0));
    }
    Ok(RobustSolution {
        pars: p,
        cost: fp,
        worst_case: prob.worst_case(p),
        iterations,
        stop,
        history,
    })
}
