//! Baseline optimizers used in the comparison experiments.
//!
//! All three follow the textbook forms with the tabulated constants and share
//! the [`Optimizer`](crate::Optimizer) contract: positions stay inside the box,
//! the best-cost trace never increases, and a seed fixes the whole run.

mod de;
mod fa;
mod pso;

pub use de::{binomial_crossover, de_optimize, DeParams};
pub use fa::{fa_optimize, FaParams};
pub use pso::{pso_optimize, PsoParams};

use crate::{Error, Result};

fn check_budget(pop_size: usize, min_pop: usize, max_iterations: usize) -> Result<()> {
    if pop_size < min_pop {
        return Err(Error::InvalidConfig(format!(
            "pop_size must be at least {min_pop}, got {pop_size}"
        )));
    }
    if max_iterations == 0 {
        return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
    }
    Ok(())
}
