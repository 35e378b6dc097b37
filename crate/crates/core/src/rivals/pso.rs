use std::time::Instant;

use super::check_budget;
use crate::engine::initialize_population;
use crate::objective::BestTracker;
use crate::{AgentState, Error, IterationView, ObjectiveSpec, Optimizer, RandomSource, Result, RngStream, RunResult};

/// Global-best particle swarm.
#[derive(Debug, Clone, PartialEq)]
pub struct PsoParams {
    pub inertia: f64,
    pub inertia_damp: f64,
    /// Personal learning coefficient.
    pub c1: f64,
    /// Global learning coefficient.
    pub c2: f64,
    /// Velocity limit as a fraction of each dimension's width.
    pub velocity_fraction: f64,
    pub pop_size: usize,
    pub max_iterations: usize,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 1.0,
            inertia_damp: 0.99,
            c1: 1.5,
            c2: 2.0,
            velocity_fraction: 0.1,
            pop_size: 25,
            max_iterations: 300,
        }
    }
}

pub fn pso_optimize(spec: &ObjectiveSpec, params: &PsoParams, rng: &mut RngStream) -> Result<RunResult> {
    params.optimize(spec, rng)
}

impl Optimizer for PsoParams {
    fn optimize_observed(
        &self,
        spec: &ObjectiveSpec,
        rng: &mut RngStream,
        observer: &mut dyn FnMut(&IterationView<'_>),
    ) -> Result<RunResult> {
        check_budget(self.pop_size, 1, self.max_iterations)?;
        if !(self.inertia_damp > 0.0 && self.velocity_fraction >= 0.0) {
            return Err(Error::InvalidConfig("inertia_damp must be positive".into()));
        }
        let start = Instant::now();
        let dim = spec.dim();
        let vmax: Vec<f64> = spec.widths().iter().map(|w| self.velocity_fraction * w).collect();

        let mut swarm = initialize_population(spec, self.pop_size, rng)?;
        let mut velocity = vec![vec![0.0; dim]; self.pop_size];
        let mut personal: Vec<AgentState> = swarm.clone();
        let mut best = BestTracker::new(self.max_iterations);
        for p in &swarm {
            best.offer(&p.position, p.cost);
        }

        let mut w = self.inertia;
        for iteration in 0..self.max_iterations {
            for (i, particle) in swarm.iter_mut().enumerate() {
                let v = &mut velocity[i];
                for d in 0..dim {
                    let x = particle.position[d];
                    let step = w * v[d]
                        + self.c1 * rng.unit() * (personal[i].position[d] - x)
                        + self.c2 * rng.unit() * (best.position[d] - x);
                    v[d] = step.clamp(-vmax[d], vmax[d]);
                    let moved = x + v[d];
                    // Reflect the velocity of particles that leave the box.
                    if moved < spec.lower()[d] || moved > spec.upper()[d] {
                        v[d] = -v[d];
                    }
                    particle.position[d] = moved.clamp(spec.lower()[d], spec.upper()[d]);
                }
                particle.cost = spec.evaluate(&particle.position)?;
                if particle.cost < personal[i].cost {
                    personal[i].position.copy_from_slice(&particle.position);
                    personal[i].cost = particle.cost;
                }
                best.offer(&particle.position, particle.cost);
            }
            best.record();
            w *= self.inertia_damp;
            observer(&IterationView {
                iteration,
                population: &swarm,
                best_cost: best.cost,
                mutation_rate: None,
            });
        }
        Ok(best.finish(rng.seed(), start.elapsed()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{make_benchmark, EXPERIMENT_DOMAIN};

    #[test]
    fn zero_iterations_rejected() {
        let spec = make_benchmark("dejong", 3, None).unwrap();
        let params = PsoParams {
            max_iterations: 0,
            ..Default::default()
        };
        assert!(matches!(
            params.optimize(&spec, &mut RngStream::new(0)),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn solves_dejong() {
        let spec = make_benchmark("dejong", 20, Some(EXPERIMENT_DOMAIN)).unwrap();
        let r = PsoParams::default().optimize(&spec, &mut RngStream::new(2)).unwrap();
        assert!(r.final_cost < 1e-2, "{}", r.final_cost);
    }
}
