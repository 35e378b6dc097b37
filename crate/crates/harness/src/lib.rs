//! Experiment orchestration for `shs-core`: seeded multi-run experiments with
//! CSV traces and a replayable manifest, statistical comparison reports, and
//! a solver for the application instances.

pub mod compare;
pub mod error;
pub mod experiment;
pub mod instances;
pub mod solve;

pub use compare::{compare, load_traces, CompareTest, TraceSet};
pub use error::{HarnessError, Result};
pub use experiment::{replay, run_experiment, BoundsMode, ExperimentOutput, ExperimentSpec, Manifest};
pub use instances::{builtin_instance, load_instance, Instance, BUILTIN_INSTANCES};
pub use solve::{solve_app, solve_instance, SolveRequest, Solver};
