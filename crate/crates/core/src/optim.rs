//! Derivative-free minimisation: seeded coarse search followed by
//! Nelder-Mead refinement with restarts.

use argmin::core::{CostFunction, Executor, State, TerminationReason, TerminationStatus};
use argmin::solver::neldermead::NelderMead;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Iteration cap of a single simplex run.
pub const MAX_ITERATIONS: u64 = 10_000;

struct Objective<'a, F> {
    f: &'a F,
}

impl<F> CostFunction for Objective<'_, F>
where
    F: Fn(&[f64]) -> f64,
{
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        let v = (self.f)(p);
        Ok(if v.is_finite() { v } else { f64::MAX })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: u64,
    /// False when a simplex run stopped at [`MAX_ITERATIONS`].
    pub converged: bool,
}

/// One Nelder-Mead run from `x0` with an axis-aligned initial simplex.
/// A run that hits the iteration cap returns its best vertex with
/// `converged = false`.
pub fn nelder_mead<F>(f: &F, x0: &[f64], step: f64, sd_tol: f64) -> Result<Minimum>
where
    F: Fn(&[f64]) -> f64,
{
    let mut simplex = vec![x0.to_vec()];
    for i in 0..x0.len() {
        let mut v = x0.to_vec();
        v[i] += if v[i].abs() > 1e-12 { step * v[i].abs().max(0.1) } else { step };
        simplex.push(v);
    }
    let solver = NelderMead::new(simplex)
        .with_sd_tolerance(sd_tol)
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let res = Executor::new(Objective { f }, solver)
        .configure(|state| state.max_iters(MAX_ITERATIONS))
        .run()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let state = res.state();
    let iterations = state.get_iter();
    let converged = !matches!(
        state.get_termination_status(),
        TerminationStatus::Terminated(TerminationReason::MaxItersReached)
    );
    let x = state
        .get_best_param()
        .cloned()
        .ok_or(Error::OptimizerDidNotConverge { iterations })?;
    Ok(Minimum {
        value: f(&x),
        x,
        iterations,
        converged,
    })
}

/// Repeated simplex runs, each restarted at the previous optimum with a
/// tolerance scaled to the current value, until the value stops improving
/// or a run hits the iteration cap.
pub fn refine<F>(f: &F, x0: &[f64], step: f64) -> Result<Minimum>
where
    F: Fn(&[f64]) -> f64,
{
    let mut best = Minimum {
        x: x0.to_vec(),
        value: f(x0),
        iterations: 0,
        converged: true,
    };
    let mut step = step;
    for _ in 0..8 {
        let tol = (1e-8 * best.value).max(1e-28);
        let next = nelder_mead(f, &best.x, step, tol)?;
        let iterations = best.iterations + next.iterations;
        let improved = next.value < best.value * (1.0 - 1e-6);
        let converged = next.converged;
        if next.value <= best.value {
            best = Minimum { iterations, ..next };
        } else {
            best.iterations = iterations;
        }
        best.converged = converged;
        if !converged || !improved || best.value < 1e-28 {
            break;
        }
        step *= 0.1;
    }
    Ok(best)
}

/// Seeded directions on the unit sphere of R^dim, preceded by ±e_i.
pub fn sphere_directions(dim: usize, random: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * dim + random);
    for i in 0..dim {
        for sign in [1.0, -1.0] {
            let mut v = vec![0.0; dim];
            v[i] = sign;
            out.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < 2 * dim + random {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (1e-3..=1.0).contains(&n) {
            out.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    out
}

/// Evaluate `f` at every candidate and refine the `keep` best ones.
pub fn coarse_then_refine<F>(f: &F, candidates: &[Vec<f64>], keep: usize, step: f64) -> Result<Minimum>
where
    F: Fn(&[f64]) -> f64,
{
    let mut scored: Vec<(f64, usize)> = candidates.iter().enumerate().map(|(i, c)| (f(c), i)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut best: Option<Minimum> = None;
    for &(_, i) in scored.iter().take(keep.max(1)) {
        let m = refine(f, &candidates[i], step)?;
        if best.as_ref().is_none_or(|b| m.value < b.value) {
            best = Some(m);
        }
    }
    best.ok_or_else(|| Error::Invalid("no starting candidates".into()))
}
