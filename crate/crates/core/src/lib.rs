//! Population-based optimization toolkit built around the scorpion hunting
//! strategy (SHS) metaheuristic.
//!
//! The crate is organised by concern:
//!
//! * [`engine`] - the SHS optimizer itself.
//! * [`benchmarks`] - the ten classical test functions and their registry.
//! * [`rivals`] - PSO, firefly and differential evolution baselines sharing the
//!   same [`ObjectiveSpec`] / [`RunResult`] contract.
//! * [`stats`] - run summaries, Wilcoxon rank-sum, Friedman ranks, dispersion
//!   normalization and Pearson correlation.
//! * [`penalty`] - exterior quadratic penalty wrapping for constrained problems.
//! * [`apps`] - clustering, MST, hub location, machine scheduling and economic
//!   dispatch encoded as continuous objectives.
//!
//! Every optimizer is driven by an explicit [`RngStream`], so a run is fully
//! determined by its objective, parameters and seed.

pub mod apps;
pub mod benchmarks;
pub mod engine;
mod error;
mod objective;
pub mod optimizer;
pub mod penalty;
pub mod rivals;
mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use objective::{AgentState, IterationView, KnownOptimum, ObjectiveSpec, RunResult, VibrationRole};
pub use optimizer::{Algorithm, Optimizer};
pub use rng::{FixedSource, RandomSource, RngStream};
