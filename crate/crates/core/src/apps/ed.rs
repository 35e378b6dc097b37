//! Economic dispatch with transmission losses.
//!
//! Generator outputs `P_i` live in `[p_min_i, p_max_i]`. Losses follow the
//! B-coefficient form `PL = P^T B P`, fuel cost is quadratic per unit, and the
//! balance `PT - PL - PD = 0` is enforced through the exterior penalty.
//!
//! The default cost coefficients and loss matrix are illustrative choices for
//! a three-unit system; only the limits and demand of the reference case are
//! fixed.

use crate::penalty::{penalize, ConstraintSet, DEFAULT_PENALTY_WEIGHT};
use crate::{Error, ObjectiveSpec, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EdInstance {
    pub p_min: Vec<f64>,
    pub p_max: Vec<f64>,
    pub demand: f64,
    /// `(a, b, c)` with unit cost `a + b P + c P^2`.
    pub cost_coeffs: Vec<[f64; 3]>,
    /// Symmetric loss matrix in MW^-1.
    pub loss_matrix: Vec<Vec<f64>>,
    pub penalty_weight: f64,
}

/// Outputs and derived quantities of a dispatch.
#[derive(Debug, Clone, PartialEq)]
pub struct Dispatch {
    pub p: Vec<f64>,
    pub total: f64,
    pub loss: f64,
    /// `PT - PL - PD`.
    pub error: f64,
    pub cost: f64,
}

impl EdInstance {
    pub fn new(
        p_min: Vec<f64>,
        p_max: Vec<f64>,
        demand: f64,
        cost_coeffs: Vec<[f64; 3]>,
        loss_matrix: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = p_min.len();
        if n == 0 {
            return Err(Error::EmptyInput("generator list"));
        }
        for got in [p_max.len(), cost_coeffs.len(), loss_matrix.len()] {
            if got != n {
                return Err(Error::DimensionMismatch { expected: n, got });
            }
        }
        for (row, r) in loss_matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: n,
                    got: r.len(),
                });
            }
        }
        for (i, row) in loss_matrix.iter().enumerate() {
            for (j, &b) in row.iter().enumerate().take(i) {
                if (b - loss_matrix[j][i]).abs() > 1e-12 * b.abs().max(1.0) {
                    return Err(Error::InvalidInstance(format!(
                        "loss matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        for (dim, (&lo, &hi)) in p_min.iter().zip(&p_max).enumerate() {
            if !(lo.is_finite() && hi.is_finite()) || lo > hi {
                return Err(Error::InvalidBounds {
                    dim,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        if !(demand > 0.0 && demand.is_finite()) {
            return Err(Error::InvalidInstance(format!("demand must be positive, got {demand}")));
        }
        let capacity: f64 = p_max.iter().sum();
        if capacity < demand {
            return Err(Error::InvalidInstance(format!(
                "total capacity {capacity} MW cannot meet demand {demand} MW"
            )));
        }
        Ok(Self {
            p_min,
            p_max,
            demand,
            cost_coeffs,
            loss_matrix,
            penalty_weight: DEFAULT_PENALTY_WEIGHT,
        })
    }

    /// Three units, limits `[100, 50, 80]`..`[500, 200, 300]` MW, demand 900 MW.
    pub fn reference_3gen() -> Self {
        Self::new(
            vec![100.0, 50.0, 80.0],
            vec![500.0, 200.0, 300.0],
            900.0,
            vec![[561.0, 7.92, 0.001562], [310.0, 7.85, 0.00194], [78.0, 7.97, 0.00482]],
            vec![
                vec![8.0e-5, 1.0e-5, 1.0e-5],
                vec![1.0e-5, 1.0e-4, 1.5e-5],
                vec![1.0e-5, 1.5e-5, 1.2e-4],
            ],
        )
        .expect("reference instance is valid")
    }

    pub fn generators(&self) -> usize {
        self.p_min.len()
    }

    pub fn fuel_cost(&self, p: &[f64]) -> f64 {
        self.cost_coeffs
            .iter()
            .zip(p)
            .map(|([a, b, c], p)| a + b * p + c * p * p)
            .sum()
    }

    pub fn loss(&self, p: &[f64]) -> f64 {
        self.loss_matrix
            .iter()
            .zip(p)
            .map(|(row, pi)| pi * row.iter().zip(p).map(|(b, pj)| b * pj).sum::<f64>())
            .sum()
    }

    /// Power balance residual `PT - PL - PD`.
    pub fn balance(&self, p: &[f64]) -> f64 {
        p.iter().sum::<f64>() - self.loss(p) - self.demand
    }

    pub fn dispatch(&self, p: &[f64]) -> Dispatch {
        let total = p.iter().sum();
        let loss = self.loss(p);
        Dispatch {
            p: p.to_vec(),
            total,
            loss,
            error: total - loss - self.demand,
            cost: self.fuel_cost(p),
        }
    }
}

pub fn ed_objective(inst: &EdInstance) -> Result<ObjectiveSpec> {
    let cost_model = inst.clone();
    let base = ObjectiveSpec::new(
        format!("ed-{}gen", inst.generators()),
        inst.p_min.clone(),
        inst.p_max.clone(),
        move |p| cost_model.fuel_cost(p),
    )?;
    let balance_model = inst.clone();
    let constraints = ConstraintSet::with_weight(inst.penalty_weight).equal(move |p| balance_model.balance(p));
    Ok(penalize(&base, constraints)?.with_name(base.name()))
}
