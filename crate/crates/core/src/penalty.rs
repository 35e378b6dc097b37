//! Exterior quadratic penalty for constrained problems.

use std::sync::Arc;

use crate::{Error, ObjectiveSpec, Result};

pub type ConstraintFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

pub const DEFAULT_PENALTY_WEIGHT: f64 = 1e6;

/// Inequalities `g(x) <= 0` and equalities `|h(x)| <= tolerance`.
#[derive(Clone)]
pub struct ConstraintSet {
    pub inequality: Vec<ConstraintFn>,
    pub equality: Vec<ConstraintFn>,
    pub penalty_weight: f64,
    pub equality_tolerance: f64,
}

impl Default for ConstraintSet {
    fn default() -> Self {
        Self {
            inequality: Vec::new(),
            equality: Vec::new(),
            penalty_weight: DEFAULT_PENALTY_WEIGHT,
            equality_tolerance: 0.0,
        }
    }
}

impl std::fmt::Debug for ConstraintSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConstraintSet")
            .field("inequality", &self.inequality.len())
            .field("equality", &self.equality.len())
            .field("penalty_weight", &self.penalty_weight)
            .field("equality_tolerance", &self.equality_tolerance)
            .finish()
    }
}

impl ConstraintSet {
    pub fn with_weight(penalty_weight: f64) -> Self {
        Self {
            penalty_weight,
            ..Self::default()
        }
    }

    pub fn less_or_equal(mut self, g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.inequality.push(Arc::new(g));
        self
    }

    pub fn equal(mut self, h: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.equality.push(Arc::new(h));
        self
    }

    pub fn tolerance(mut self, eps: f64) -> Self {
        self.equality_tolerance = eps;
        self
    }

    /// Squared violation `sum max(0, g)^2 + sum max(0, |h| - eps)^2`, unweighted.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let ineq: f64 = self.inequality.iter().map(|g| g(x).max(0.0).powi(2)).sum();
        let eq: f64 = self
            .equality
            .iter()
            .map(|h| (h(x).abs() - self.equality_tolerance).max(0.0).powi(2))
            .sum();
        ineq + eq
    }

    pub fn is_feasible(&self, x: &[f64]) -> bool {
        self.violation(x) == 0.0
    }
}

/// Wraps `spec` so that `eval'(x) = eval(x) + weight * violation(x)`.
pub fn penalize(spec: &ObjectiveSpec, constraints: ConstraintSet) -> Result<ObjectiveSpec> {
    if !(constraints.penalty_weight > 0.0 && constraints.penalty_weight.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "penalty weight must be positive, got {}",
            constraints.penalty_weight
        )));
    }
    if constraints.equality_tolerance.is_nan() || constraints.equality_tolerance < 0.0 {
        return Err(Error::InvalidConfig("equality tolerance must be non-negative".into()));
    }
    let base = spec.clone();
    let wrapped = ObjectiveSpec::new(
        format!("{}+penalty", spec.name()),
        spec.lower().to_vec(),
        spec.upper().to_vec(),
        move |x| {
            let v = constraints.violation(x);
            let raw = base.eval(x);
            if v == 0.0 {
                raw
            } else {
                raw + constraints.penalty_weight * v
            }
        },
    )?;
    Ok(match spec.known_optimum() {
        Some(opt) => wrapped.with_known_optimum(opt.position.clone(), opt.cost),
        None => wrapped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zero_spec() -> ObjectiveSpec {
        ObjectiveSpec::uniform("zero", 1, -10.0, 10.0, |_| 0.0).unwrap()
    }

    #[test]
    fn single_inequality_example() {
        let spec = penalize(
            &zero_spec(),
            ConstraintSet::with_weight(10.0).less_or_equal(|x| x[0] - 1.0),
        )
        .unwrap();
        assert_eq!(spec.eval(&[3.0]), 40.0);
        assert_eq!(spec.eval(&[0.5]), 0.0);
    }

    #[test]
    fn equality_tolerance_band() {
        let c = ConstraintSet::with_weight(1.0).equal(|x| x[0]).tolerance(0.5);
        assert!(c.is_feasible(&[0.4]));
        assert_eq!(c.violation(&[-1.5]), 1.0);
    }

    #[test]
    fn bad_weight_rejected() {
        assert!(penalize(&zero_spec(), ConstraintSet::with_weight(0.0)).is_err());
        assert!(penalize(&zero_spec(), ConstraintSet::with_weight(-1.0)).is_err());
    }

    fn quad() -> ObjectiveSpec {
        ObjectiveSpec::uniform("quad", 2, -5.0, 5.0, |x| x[0] * x[0] + x[1]).unwrap()
    }

    fn constraints(weight: f64) -> ConstraintSet {
        ConstraintSet::with_weight(weight)
            .less_or_equal(|x| x[0] + x[1] - 1.0)
            .equal(|x| x[0] - x[1])
            .tolerance(0.1)
    }

    proptest! {
        #[test]
        fn penalty_never_lowers_cost(x in -5.0f64..5.0, y in -5.0f64..5.0) {
            let base = quad();
            let pen = penalize(&base, constraints(1e3)).unwrap();
            let p = [x, y];
            prop_assert!(pen.eval(&p) >= base.eval(&p));
            if constraints(1e3).is_feasible(&p) {
                prop_assert_eq!(pen.eval(&p).to_bits(), base.eval(&p).to_bits());
            }
        }

        #[test]
        fn heavier_weight_costs_more_when_infeasible(x in -5.0f64..5.0, y in -5.0f64..5.0) {
            let p = [x, y];
            prop_assume!(!constraints(1.0).is_feasible(&p));
            let light = penalize(&quad(), constraints(10.0)).unwrap();
            let heavy = penalize(&quad(), constraints(20.0)).unwrap();
            prop_assert!(heavy.eval(&p) > light.eval(&p));
        }
    }
}
