//! Common optimizer interface and the name registry used by the harness.

use std::fmt;
use std::str::FromStr;

use crate::engine::ShsParams;
use crate::rivals::{DeParams, FaParams, PsoParams};
use crate::{Error, IterationView, ObjectiveSpec, Result, RngStream, RunResult};

pub trait Optimizer {
    /// Runs to completion, calling `observer` after every iteration.
    fn optimize_observed(
        &self,
        spec: &ObjectiveSpec,
        rng: &mut RngStream,
        observer: &mut dyn FnMut(&IterationView<'_>),
    ) -> Result<RunResult>;

    fn optimize(&self, spec: &ObjectiveSpec, rng: &mut RngStream) -> Result<RunResult> {
        self.optimize_observed(spec, rng, &mut |_| {})
    }
}

/// Registry of the implemented optimizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Shs,
    Pso,
    Fa,
    De,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Shs, Algorithm::Pso, Algorithm::Fa, Algorithm::De];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Shs => "shs",
            Algorithm::Pso => "pso",
            Algorithm::Fa => "fa",
            Algorithm::De => "de",
        }
    }

    /// Runs the optimizer with its default parameters, overriding only the
    /// population size and iteration budget.
    pub fn run(
        self,
        spec: &ObjectiveSpec,
        pop_size: usize,
        iterations: usize,
        rng: &mut RngStream,
    ) -> Result<RunResult> {
        self.run_observed(spec, pop_size, iterations, rng, &mut |_| {})
    }

    pub fn run_observed(
        self,
        spec: &ObjectiveSpec,
        pop_size: usize,
        iterations: usize,
        rng: &mut RngStream,
        observer: &mut dyn FnMut(&IterationView<'_>),
    ) -> Result<RunResult> {
        match self {
            Algorithm::Shs => ShsParams {
                pop_size,
                max_iterations: iterations,
                ..ShsParams::default()
            }
            .optimize_observed(spec, rng, observer),
            Algorithm::Pso => PsoParams {
                pop_size,
                max_iterations: iterations,
                ..PsoParams::default()
            }
            .optimize_observed(spec, rng, observer),
            Algorithm::Fa => FaParams {
                pop_size,
                max_iterations: iterations,
                ..FaParams::default()
            }
            .optimize_observed(spec, rng, observer),
            Algorithm::De => DeParams {
                pop_size,
                max_iterations: iterations,
                ..DeParams::default()
            }
            .optimize_observed(spec, rng, observer),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown {
                kind: "optimizer",
                name: s.to_string(),
                available: Algorithm::ALL.map(|a| a.name()).join(", "),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_registry_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("SHS".parse::<Algorithm>().unwrap(), Algorithm::Shs);
    }

    #[test]
    fn unimplemented_name_is_reported() {
        let err = "ga".parse::<Algorithm>().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("`ga`"), "{msg}");
        assert!(msg.contains("shs, pso, fa, de"), "{msg}");
    }
}
