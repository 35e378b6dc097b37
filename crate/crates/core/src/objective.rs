use std::fmt;
use std::sync::Arc;
use std::time::Duration;

use crate::{Error, Result};

type EvalFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A minimizer together with its cost.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownOptimum {
    pub position: Vec<f64>,
    pub cost: f64,
}

/// A box-bounded minimization problem.
///
/// The evaluation closure must be pure: the optimizers assume that equal
/// inputs give equal costs and share one spec across concurrent runs.
#[derive(Clone)]
pub struct ObjectiveSpec {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    eval: EvalFn,
    known_optimum: Option<KnownOptimum>,
}

impl ObjectiveSpec {
    /// Builds a spec from per-dimension bounds. Equal bounds are accepted and
    /// collapse that coordinate to a single value.
    pub fn new<F>(name: impl Into<String>, lower: Vec<f64>, upper: Vec<f64>, eval: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        validate_bounds(&lower, &upper)?;
        Ok(Self {
            name: name.into(),
            lower,
            upper,
            eval: Arc::new(eval),
            known_optimum: None,
        })
    }

    /// Same bounds `[lo, hi]` in every one of `dim` coordinates.
    pub fn uniform<F>(name: impl Into<String>, dim: usize, lo: f64, hi: f64, eval: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::new(name, vec![lo; dim], vec![hi; dim], eval)
    }

    pub fn with_known_optimum(mut self, position: Vec<f64>, cost: f64) -> Self {
        self.known_optimum = Some(KnownOptimum { position, cost });
        self
    }

    /// Replaces the bounds, keeping the evaluation closure.
    pub fn with_bounds(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: lower.len(),
            });
        }
        validate_bounds(&lower, &upper)?;
        self.lower = lower;
        self.upper = upper;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn known_optimum(&self) -> Option<&KnownOptimum> {
        self.known_optimum.as_ref()
    }

    /// Raw evaluation, no checks.
    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }

    /// Evaluation that rejects non-finite costs.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let cost = (self.eval)(x);
        if cost.is_finite() {
            Ok(cost)
        } else {
            Err(Error::NonFiniteCost {
                objective: self.name.clone(),
                cost,
                position: x.to_vec(),
            })
        }
    }

    pub fn clamp(&self, x: &mut [f64]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(*lo, *hi);
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// Euclidean length of the bounding-box diagonal.
    pub fn diagonal(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| (hi - lo).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Per-dimension width `upper - lower`.
    pub fn widths(&self) -> Vec<f64> {
        self.lower.iter().zip(&self.upper).map(|(lo, hi)| hi - lo).collect()
    }
}

impl fmt::Debug for ObjectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("known_optimum", &self.known_optimum)
            .finish_non_exhaustive()
    }
}

fn validate_bounds(lower: &[f64], upper: &[f64]) -> Result<()> {
    if lower.len() != upper.len() {
        return Err(Error::DimensionMismatch {
            expected: lower.len(),
            got: upper.len(),
        });
    }
    if lower.is_empty() {
        return Err(Error::InvalidConfig("objective dimension must be positive".into()));
    }
    for (dim, (&lo, &hi)) in lower.iter().zip(upper).enumerate() {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidBounds {
                dim,
                lower: lo,
                upper: hi,
            });
        }
    }
    Ok(())
}

/// Last interaction class of a scorpion.
///
/// `Beta` is also the resting state: a beta vibration never moves the agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VibrationRole {
    Alpha,
    #[default]
    Beta,
    AlphaBetaMutation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub position: Vec<f64>,
    pub cost: f64,
    pub role: VibrationRole,
}

impl AgentState {
    pub fn new(position: Vec<f64>, cost: f64) -> Self {
        Self {
            position,
            cost,
            role: VibrationRole::default(),
        }
    }
}

/// Snapshot handed to observers after every completed iteration.
#[derive(Debug)]
pub struct IterationView<'a> {
    /// Zero-based index of the iteration that just finished.
    pub iteration: usize,
    pub population: &'a [AgentState],
    pub best_cost: f64,
    /// Current mutation / step-size parameter for optimizers that damp one.
    pub mutation_rate: Option<f64>,
}

/// Outcome of one seeded optimizer run.
#[derive(Debug, Clone)]
pub struct RunResult {
    /// Best cost seen so far, recorded after each iteration.
    pub best_trace: Vec<f64>,
    pub final_position: Vec<f64>,
    pub final_cost: f64,
    pub seed: u64,
    pub elapsed: Duration,
}

impl RunResult {
    /// Compares everything except wall time, bit for bit.
    pub fn same_outcome(&self, other: &RunResult) -> bool {
        fn bits(v: &[f64]) -> Vec<u64> {
            v.iter().map(|x| x.to_bits()).collect()
        }
        self.seed == other.seed
            && self.final_cost.to_bits() == other.final_cost.to_bits()
            && bits(&self.best_trace) == bits(&other.best_trace)
            && bits(&self.final_position) == bits(&other.final_position)
    }
}

/// Tracks the global best across iterations and records the trace.
#[derive(Debug, Clone)]
pub(crate) struct BestTracker {
    pub position: Vec<f64>,
    pub cost: f64,
    pub trace: Vec<f64>,
}

impl BestTracker {
    pub fn new(capacity: usize) -> Self {
        Self {
            position: Vec::new(),
            cost: f64::INFINITY,
            trace: Vec::with_capacity(capacity),
        }
    }

    pub fn offer(&mut self, position: &[f64], cost: f64) {
        if cost < self.cost {
            self.cost = cost;
            self.position.clear();
            self.position.extend_from_slice(position);
        }
    }

    pub fn record(&mut self) {
        self.trace.push(self.cost);
    }

    pub fn finish(self, seed: u64, elapsed: Duration) -> RunResult {
        RunResult {
            best_trace: self.trace,
            final_position: self.position,
            final_cost: self.cost,
            seed,
            elapsed,
        }
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn rejects_inverted_bounds() {
        let err = ObjectiveSpec::new("bad", vec![0.0, 1.0], vec![1.0, 0.0], sphere).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidBounds {
                dim: 1,
                lower: 1.0,
                upper: 0.0
            }
        );
    }

    #[test]
    fn rejects_zero_dimension() {
        assert!(ObjectiveSpec::new("empty", vec![], vec![], sphere).is_err());
    }

    #[test]
    fn equal_bounds_are_allowed() {
        let spec = ObjectiveSpec::uniform("point", 3, 0.0, 0.0, sphere).unwrap();
        assert_eq!(spec.diagonal(), 0.0);
        assert!(spec.contains(&[0.0, 0.0, 0.0]));
    }

    #[test]
    fn evaluate_flags_nan() {
        let spec = ObjectiveSpec::uniform("nan", 2, -1.0, 1.0, |_| f64::NAN).unwrap();
        match spec.evaluate(&[0.5, -0.5]) {
            Err(Error::NonFiniteCost { position, .. }) => assert_eq!(position, vec![0.5, -0.5]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn clamp_projects_into_box() {
        let spec = ObjectiveSpec::uniform("s", 3, -1.0, 2.0, sphere).unwrap();
        let mut x = vec![-5.0, 0.5, 9.0];
        spec.clamp(&mut x);
        assert_eq!(x, vec![-1.0, 0.5, 2.0]);
    }
}
