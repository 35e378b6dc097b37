use std::time::Instant;

use super::check_budget;
use crate::engine::initialize_population;
use crate::objective::BestTracker;
use crate::{Error, IterationView, ObjectiveSpec, Optimizer, RandomSource, Result, RngStream, RunResult};

/// DE/rand/1/bin with a per-dimension scaling factor drawn from `[f_min, f_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeParams {
    pub f_min: f64,
    pub f_max: f64,
    pub crossover_prob: f64,
    pub pop_size: usize,
    pub max_iterations: usize,
}

impl Default for DeParams {
    fn default() -> Self {
        Self {
            f_min: 0.2,
            f_max: 0.8,
            crossover_prob: 0.2,
            pop_size: 25,
            max_iterations: 300,
        }
    }
}

pub fn de_optimize(spec: &ObjectiveSpec, params: &DeParams, rng: &mut RngStream) -> Result<RunResult> {
    params.optimize(spec, rng)
}

/// Binomial crossover: coordinate `forced` always comes from the mutant, every
/// other coordinate with probability `crossover_prob`.
pub fn binomial_crossover<R: RandomSource + ?Sized>(
    target: &[f64],
    mutant: &[f64],
    crossover_prob: f64,
    rng: &mut R,
) -> Vec<f64> {
    let forced = rng.index(target.len());
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(d, (t, m))| {
            if d == forced || rng.unit() <= crossover_prob {
                *m
            } else {
                *t
            }
        })
        .collect()
}

/// Three distinct indices, all different from `i`.
fn pick_three<R: RandomSource + ?Sized>(n: usize, i: usize, rng: &mut R) -> [usize; 3] {
    let mut chosen = [usize::MAX; 3];
    let mut k = 0;
    while k < 3 {
        let c = rng.index(n);
        if c != i && !chosen[..k].contains(&c) {
            chosen[k] = c;
            k += 1;
        }
    }
    chosen
}

impl Optimizer for DeParams {
    fn optimize_observed(
        &self,
        spec: &ObjectiveSpec,
        rng: &mut RngStream,
        observer: &mut dyn FnMut(&IterationView<'_>),
    ) -> Result<RunResult> {
        check_budget(self.pop_size, 4, self.max_iterations)?;
        if !(0.0 <= self.f_min && self.f_min <= self.f_max) || !(0.0..=1.0).contains(&self.crossover_prob) {
            return Err(Error::InvalidConfig(
                "need 0 <= f_min <= f_max and crossover_prob in [0, 1]".into(),
            ));
        }
        let start = Instant::now();
        let n = self.pop_size;
        let dim = spec.dim();

        let mut pop = initialize_population(spec, n, rng)?;
        let mut best = BestTracker::new(self.max_iterations);
        for a in &pop {
            best.offer(&a.position, a.cost);
        }

        let mut mutant = vec![0.0; dim];
        for iteration in 0..self.max_iterations {
            for i in 0..n {
                let [a, b, c] = pick_three(n, i, rng);
                for (d, m) in mutant.iter_mut().enumerate() {
                    let f = rng.uniform(self.f_min, self.f_max);
                    *m = pop[a].position[d] + f * (pop[b].position[d] - pop[c].position[d]);
                }
                spec.clamp(&mut mutant);
                let trial = binomial_crossover(&pop[i].position, &mutant, self.crossover_prob, rng);
                let cost = spec.evaluate(&trial)?;
                best.offer(&trial, cost);
                if cost < pop[i].cost {
                    pop[i].position = trial;
                    pop[i].cost = cost;
                }
            }
            best.record();
            observer(&IterationView {
                iteration,
                population: &pop,
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
    fn full_crossover_takes_the_mutant() {
        let mut rng = RngStream::new(4);
        let t = [1.0, 2.0, 3.0, 4.0];
        let m = [9.0, 8.0, 7.0, 6.0];
        assert_eq!(binomial_crossover(&t, &m, 1.0, &mut rng), m.to_vec());
    }

    #[test]
    fn zero_crossover_takes_exactly_one_mutant_coordinate() {
        let mut rng = RngStream::new(4);
        let t = [1.0; 6];
        let m = [2.0; 6];
        for _ in 0..20 {
            let z = binomial_crossover(&t, &m, 0.0, &mut rng);
            assert_eq!(z.iter().filter(|v| **v == 2.0).count(), 1);
        }
    }

    #[test]
    fn small_population_rejected() {
        let spec = make_benchmark("dejong", 2, None).unwrap();
        let params = DeParams {
            pop_size: 3,
            ..Default::default()
        };
        assert!(params.optimize(&spec, &mut RngStream::new(0)).is_err());
    }

    #[test]
    fn solves_dejong() {
        let spec = make_benchmark("dejong", 20, Some(EXPERIMENT_DOMAIN)).unwrap();
        let r = DeParams::default().optimize(&spec, &mut RngStream::new(3)).unwrap();
        assert!(r.final_cost < 0.1, "{}", r.final_cost);
    }
}
