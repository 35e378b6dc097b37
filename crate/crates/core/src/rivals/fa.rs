use std::time::Instant;

use super::check_budget;
use crate::engine::initialize_population;
use crate::objective::{euclidean, BestTracker};
use crate::{AgentState, Error, IterationView, ObjectiveSpec, Optimizer, RandomSource, Result, RngStream, RunResult};

/// Firefly algorithm with attraction `beta0 * exp(-gamma * r^2)` on the
/// diagonal-normalized distance and a damped uniform mutation.
#[derive(Debug, Clone, PartialEq)]
pub struct FaParams {
    /// Light absorption coefficient.
    pub gamma: f64,
    /// Attraction coefficient at zero distance.
    pub beta0: f64,
    pub mutation_rate: f64,
    pub mutation_damp: f64,
    pub delta_fraction: f64,
    pub pop_size: usize,
    pub max_iterations: usize,
}

impl Default for FaParams {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            beta0: 2.0,
            mutation_rate: 0.2,
            mutation_damp: 0.98,
            delta_fraction: 0.05,
            pop_size: 25,
            max_iterations: 300,
        }
    }
}

pub fn fa_optimize(spec: &ObjectiveSpec, params: &FaParams, rng: &mut RngStream) -> Result<RunResult> {
    params.optimize(spec, rng)
}

impl Optimizer for FaParams {
    fn optimize_observed(
        &self,
        spec: &ObjectiveSpec,
        rng: &mut RngStream,
        observer: &mut dyn FnMut(&IterationView<'_>),
    ) -> Result<RunResult> {
        check_budget(self.pop_size, 1, self.max_iterations)?;
        if !(self.gamma >= 0.0 && self.beta0 >= 0.0 && self.mutation_damp > 0.0) {
            return Err(Error::InvalidConfig(
                "gamma, beta0 and mutation_damp must be non-negative".into(),
            ));
        }
        let start = Instant::now();
        let n = self.pop_size;
        let dim = spec.dim();
        let diag = match spec.diagonal() {
            d if d > 0.0 => d,
            _ => 1.0,
        };
        let delta: Vec<f64> = spec.widths().iter().map(|w| self.delta_fraction * w).collect();

        let mut pop = initialize_population(spec, n, rng)?;
        let mut best = BestTracker::new(self.max_iterations);
        for a in &pop {
            best.offer(&a.position, a.cost);
        }

        let mut alpha = self.mutation_rate;
        let mut candidate = vec![0.0; dim];
        let mut brighter: Vec<Option<AgentState>> = vec![None; n];
        for iteration in 0..self.max_iterations {
            for i in 0..n {
                for j in 0..n {
                    if pop[j].cost >= pop[i].cost {
                        continue;
                    }
                    let (xi, xj) = (&pop[i].position, &pop[j].position);
                    let r = euclidean(xi, xj) / diag;
                    let beta = self.beta0 * (-self.gamma * r * r).exp();
                    for d in 0..dim {
                        let e = delta[d] * rng.symmetric();
                        candidate[d] = xi[d] + beta * rng.unit() * (xj[d] - xi[d]) + alpha * e;
                    }
                    spec.clamp(&mut candidate);
                    let cost = spec.evaluate(&candidate)?;
                    best.offer(&candidate, cost);
                    if brighter[i].as_ref().is_none_or(|b| cost <= b.cost) {
                        brighter[i] = Some(AgentState::new(candidate.clone(), cost));
                    }
                }
            }
            pop.extend(brighter.iter_mut().filter_map(Option::take));
            pop.sort_by(|a, b| a.cost.total_cmp(&b.cost));
            pop.truncate(n);

            best.record();
            alpha *= self.mutation_damp;
            observer(&IterationView {
                iteration,
                population: &pop,
                best_cost: best.cost,
                mutation_rate: Some(alpha),
            });
        }
        Ok(best.finish(rng.seed(), start.elapsed()))
    }
}
