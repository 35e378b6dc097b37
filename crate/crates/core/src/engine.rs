//! Scorpion hunting strategy (SHS) optimizer.
//!
//! Each iteration sweeps every ordered pair of scorpions `(i, j)`:
//!
//! * with probability `mu` the pair triggers an alpha-beta mutation and
//!   scorpion `i` moves toward a uniformly chosen member of the population,
//!   whatever its fitness;
//! * otherwise, if `j` is cheaper than `i`, the pair is an alpha vibration
//!   (prey detected) and `i` moves toward `j`;
//! * otherwise the pair is a beta vibration and nothing moves.
//!
//! A move uses the vibration absorption coefficient `M = psi * exp(-omega * r)`
//! with per-scorpion sting power `psi` and claw power `omega`:
//!
//! ```text
//! x_new = x_i + M * (x_j - x_i) + mu * e_div,   e_div[d] = delta[d] * U(-1, 1)
//! ```
//!
//! where `delta[d] = delta_fraction * (upper[d] - lower[d])`. The result is
//! clamped to the box and evaluated at once. After the sweep the population is
//! sorted by cost, the global best recorded and `mu` damped by `mutation_damp`.
//!
//! Three details the model leaves open are exposed as parameters:
//! [`DistanceScale`], [`Survival`] and [`ShsParams::step_jitter`]. The defaults
//! (normalized distance, elitist survival, per-dimension step jitter) are the
//! configuration that actually converges on 20-dimensional problems; the
//! literal alternatives are kept for study.

use std::time::Instant;

use crate::objective::{euclidean, BestTracker};
use crate::{
    AgentState, Error, IterationView, ObjectiveSpec, Optimizer, RandomSource, Result, RngStream, RunResult,
    VibrationRole,
};

/// How the inter-agent distance `r` fed into the absorption kernel is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceScale {
    /// Euclidean distance divided by the bounding-box diagonal, so `r` is in `[0, 1]`.
    #[default]
    Normalized,
    /// Plain Euclidean distance in decision space.
    Raw,
}

/// What happens to a moved scorpion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Survival {
    /// Moves start from the positions held at the beginning of the sweep; each
    /// scorpion keeps its cheapest move, and the old and new generations are
    /// merged and truncated back to `pop_size` by cost.
    #[default]
    Elitist,
    /// Every move replaces the scorpion in place, better or not.
    Unconditional,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShsParams {
    pub pop_size: usize,
    pub max_iterations: usize,
    /// Range `[omega_min, omega_max]` for the per-scorpion claw power.
    pub claw_range: (f64, f64),
    /// Range `[psi_min, psi_max]` for the per-scorpion sting power.
    pub sting_range: (f64, f64),
    /// Initial alpha-beta mutation rate `mu`.
    pub mutation_rate: f64,
    pub mutation_damp: f64,
    /// Mutation range as a fraction of each dimension's width.
    pub delta_fraction: f64,
    pub distance: DistanceScale,
    pub survival: Survival,
    /// Scale the attraction term by an independent `U(0, 1)` draw per dimension.
    pub step_jitter: bool,
}

impl Default for ShsParams {
    fn default() -> Self {
        Self {
            pop_size: 25,
            max_iterations: 300,
            claw_range: (1.0, 3.0),
            sting_range: (1.0, 3.0),
            mutation_rate: 0.2,
            mutation_damp: 0.98,
            delta_fraction: 0.05,
            distance: DistanceScale::Normalized,
            survival: Survival::Elitist,
            step_jitter: true,
        }
    }
}

impl ShsParams {
    /// The reading with raw distances, unconditional moves and no step jitter.
    pub fn literal() -> Self {
        Self {
            distance: DistanceScale::Raw,
            survival: Survival::Unconditional,
            step_jitter: false,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.pop_size == 0 {
            return bad("pop_size must be at least 1".into());
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1".into());
        }
        for (label, (lo, hi)) in [("claw_range", self.claw_range), ("sting_range", self.sting_range)] {
            if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
                return bad(format!("{label} must satisfy 0 < min <= max, got [{lo}, {hi}]"));
            }
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad(format!("mutation_rate must lie in [0, 1], got {}", self.mutation_rate));
        }
        if !(self.mutation_damp > 0.0 && self.mutation_damp <= 1.0) {
            return bad(format!("mutation_damp must lie in (0, 1], got {}", self.mutation_damp));
        }
        if !(self.delta_fraction >= 0.0 && self.delta_fraction.is_finite()) {
            return bad(format!(
                "delta_fraction must be non-negative, got {}",
                self.delta_fraction
            ));
        }
        Ok(())
    }
}

/// Draws `n` agents uniformly inside the bounds and evaluates them.
pub fn initialize_population<R: RandomSource + ?Sized>(
    spec: &ObjectiveSpec,
    n: usize,
    rng: &mut R,
) -> Result<Vec<AgentState>> {
    if n == 0 {
        return Err(Error::InvalidConfig("population size must be at least 1".into()));
    }
    (0..n)
        .map(|_| {
            let position: Vec<f64> = spec
                .lower()
                .iter()
                .zip(spec.upper())
                .map(|(lo, hi)| rng.unit() * (hi - lo) + lo)
                .collect();
            let cost = spec.evaluate(&position)?;
            Ok(AgentState::new(position, cost))
        })
        .collect()
}

/// Vibration absorption coefficient `M = psi * exp(-omega * distance)`.
pub fn vibration_coefficient(psi: f64, omega: f64, distance: f64) -> Result<f64> {
    if distance.is_nan() || distance < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "distance must be non-negative, got {distance}"
        )));
    }
    if !(psi > 0.0 && omega > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "sting and claw power must be positive, got psi={psi}, omega={omega}"
        )));
    }
    Ok(psi * (-omega * distance).exp())
}

/// Uniform diversity vector `e_div[d] = delta_fraction * width[d] * U(-1, 1)`.
pub fn diversity_vector<R: RandomSource + ?Sized>(spec: &ObjectiveSpec, delta_fraction: f64, rng: &mut R) -> Vec<f64> {
    let mut out = vec![0.0; spec.dim()];
    fill_diversity(spec, delta_fraction, rng, &mut out);
    out
}

fn fill_diversity<R: RandomSource + ?Sized>(spec: &ObjectiveSpec, delta_fraction: f64, rng: &mut R, out: &mut [f64]) {
    for ((e, lo), hi) in out.iter_mut().zip(spec.lower()).zip(spec.upper()) {
        *e = delta_fraction * (hi - lo) * rng.symmetric();
    }
}

/// Position update `x_i + M (x_j - x_i) + mu e_div`. Clamping is left to the caller.
pub fn move_agent(x_i: &[f64], x_j: &[f64], m: f64, mu: f64, e_div: &[f64]) -> Result<Vec<f64>> {
    for other in [x_j.len(), e_div.len()] {
        if other != x_i.len() {
            return Err(Error::DimensionMismatch {
                expected: x_i.len(),
                got: other,
            });
        }
    }
    Ok(x_i
        .iter()
        .zip(x_j)
        .zip(e_div)
        .map(|((a, b), e)| a + m * (b - a) + mu * e)
        .collect())
}

pub fn damp_mutation(mu: f64, mu_damp: f64) -> f64 {
    mu * mu_damp
}

/// Index of the cheapest agent; ties go to the lowest index.
pub fn best_index(agents: &[AgentState]) -> Result<usize> {
    if agents.is_empty() {
        return Err(Error::EmptyInput("agent list"));
    }
    let mut best = 0;
    for (i, a) in agents.iter().enumerate().skip(1) {
        if a.cost < agents[best].cost {
            best = i;
        }
    }
    Ok(best)
}

pub fn select_best(agents: &[AgentState]) -> Result<&AgentState> {
    best_index(agents).map(|i| &agents[i])
}

/// Runs SHS to completion.
pub fn shs_optimize(spec: &ObjectiveSpec, params: &ShsParams, rng: &mut RngStream) -> Result<RunResult> {
    params.optimize(spec, rng)
}

/// Claw (`omega`) and sting (`psi`) power of population slot `i`, fixed for
/// the run. After each sort slot `i` holds the `i`-th best scorpion.
#[derive(Debug, Clone, Copy)]
struct Power {
    claw: f64,
    sting: f64,
}

impl Optimizer for ShsParams {
    fn optimize_observed(
        &self,
        spec: &ObjectiveSpec,
        rng: &mut RngStream,
        observer: &mut dyn FnMut(&IterationView<'_>),
    ) -> Result<RunResult> {
        self.validate()?;
        let start = Instant::now();
        let n = self.pop_size;
        let dim = spec.dim();

        let mut pop = initialize_population(spec, n, rng)?;
        let power: Vec<Power> = (0..n)
            .map(|_| Power {
                claw: rng.uniform(self.claw_range.0, self.claw_range.1),
                sting: rng.uniform(self.sting_range.0, self.sting_range.1),
            })
            .collect();

        let mut best = BestTracker::new(self.max_iterations);
        for a in &pop {
            best.offer(&a.position, a.cost);
        }

        let scale = match self.distance {
            DistanceScale::Normalized if spec.diagonal() > 0.0 => spec.diagonal(),
            _ => 1.0,
        };
        let mut mu = self.mutation_rate;
        let mut e_div = vec![0.0; dim];
        let mut candidate = vec![0.0; dim];
        let mut offspring: Vec<Option<AgentState>> = vec![None; n];

        for iteration in 0..self.max_iterations {
            for a in pop.iter_mut() {
                a.role = VibrationRole::Beta;
            }
            for i in 0..n {
                for j in 0..n {
                    let (role, target) = if rng.unit() < mu {
                        (VibrationRole::AlphaBetaMutation, rng.index(n))
                    } else if pop[j].cost < pop[i].cost {
                        (VibrationRole::Alpha, j)
                    } else {
                        continue;
                    };

                    let Power { claw, sting } = power[i];
                    let source = &pop[i].position;
                    let prey = &pop[target].position;
                    let m = vibration_coefficient(sting, claw, euclidean(source, prey) / scale)?;
                    fill_diversity(spec, self.delta_fraction, rng, &mut e_div);
                    for d in 0..dim {
                        let pull = if self.step_jitter { m * rng.unit() } else { m };
                        candidate[d] = source[d] + pull * (prey[d] - source[d]) + mu * e_div[d];
                    }
                    spec.clamp(&mut candidate);
                    let cost = spec.evaluate(&candidate)?;
                    best.offer(&candidate, cost);

                    match self.survival {
                        Survival::Elitist => {
                            if offspring[i].as_ref().is_none_or(|o| cost <= o.cost) {
                                offspring[i] = Some(AgentState {
                                    position: candidate.clone(),
                                    cost,
                                    role,
                                });
                            }
                        }
                        Survival::Unconditional => {
                            let agent = &mut pop[i];
                            agent.position.copy_from_slice(&candidate);
                            agent.cost = cost;
                            agent.role = role;
                        }
                    }
                }
            }

            // Under elitist survival the previous generation competes with the
            // offspring. Powers stay with the population slot, not the lineage.
            if self.survival == Survival::Elitist {
                pop.extend(offspring.iter_mut().filter_map(Option::take));
            }
            pop.sort_by(|a, b| a.cost.total_cmp(&b.cost));
            pop.truncate(n);

            best.record();
            mu = damp_mutation(mu, self.mutation_damp);
            observer(&IterationView {
                iteration,
                population: &pop,
                best_cost: best.cost,
                mutation_rate: Some(mu),
            });
        }

        Ok(best.finish(rng.seed(), start.elapsed()))
    }
}
