//! Hub location-allocation with a load-balance term.
//!
//! The decision vector holds `hub_count` hub positions `(x, y)` inside the
//! clients' bounding box. Each client is served by its nearest hub; the cost
//! is the total client-to-hub distance plus `balance_weight` times the
//! population standard deviation of the hub loads.

use crate::objective::euclidean;
use crate::{Error, ObjectiveSpec, RandomSource, Result, RngStream};

pub const DEFAULT_CLIENTS: usize = 40;
pub const DEFAULT_HUBS: usize = 4;
pub const DEFAULT_CLIENT_SEED: u64 = 2024;
/// Side of the square the default clients are scattered over.
pub const DEFAULT_EXTENT: f64 = 100.0;

#[derive(Debug, Clone, PartialEq)]
pub struct HlpInstance {
    pub clients: Vec<[f64; 2]>,
    pub hub_count: usize,
    pub balance_weight: f64,
}

impl HlpInstance {
    pub fn new(clients: Vec<[f64; 2]>, hub_count: usize, balance_weight: f64) -> Result<Self> {
        if clients.is_empty() {
            return Err(Error::EmptyInput("hub location clients"));
        }
        if hub_count == 0 || hub_count > clients.len() {
            return Err(Error::InvalidInstance(format!(
                "hub_count must be in 1..={}, got {hub_count}",
                clients.len()
            )));
        }
        if !(balance_weight >= 0.0 && balance_weight.is_finite()) {
            return Err(Error::InvalidInstance(format!(
                "balance weight must be non-negative, got {balance_weight}"
            )));
        }
        if clients.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInstance("client coordinates must be finite".into()));
        }
        Ok(Self {
            clients,
            hub_count,
            balance_weight,
        })
    }

    /// `n` clients uniformly scattered over `[0, extent]^2`.
    pub fn seeded(n: usize, hub_count: usize, balance_weight: f64, seed: u64) -> Result<Self> {
        let mut rng = RngStream::new(seed);
        let clients = (0..n)
            .map(|_| [rng.uniform(0.0, DEFAULT_EXTENT), rng.uniform(0.0, DEFAULT_EXTENT)])
            .collect();
        Self::new(clients, hub_count, balance_weight)
    }

    /// 40 seeded clients, 4 hubs, unit balance weight.
    pub fn default_40() -> Self {
        Self::seeded(DEFAULT_CLIENTS, DEFAULT_HUBS, 1.0, DEFAULT_CLIENT_SEED).expect("default instance is valid")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HubAssignment {
    pub hubs: Vec<[f64; 2]>,
    /// Hub index serving each client.
    pub assignment: Vec<usize>,
    pub loads: Vec<usize>,
    pub total_distance: f64,
    pub load_std: f64,
    pub objective: f64,
}

pub fn decode_hubs(inst: &HlpInstance, x: &[f64]) -> HubAssignment {
    let hubs: Vec<[f64; 2]> = x.chunks_exact(2).take(inst.hub_count).map(|c| [c[0], c[1]]).collect();
    let mut assignment = Vec::with_capacity(inst.clients.len());
    let mut loads = vec![0usize; hubs.len()];
    let mut total_distance = 0.0;
    for c in &inst.clients {
        let (mut best, mut best_d) = (0, f64::INFINITY);
        for (h, hub) in hubs.iter().enumerate() {
            let d = euclidean(c, hub);
            if d < best_d {
                best = h;
                best_d = d;
            }
        }
        assignment.push(best);
        loads[best] += 1;
        total_distance += best_d;
    }
    let mean = inst.clients.len() as f64 / hubs.len() as f64;
    let load_std = (loads.iter().map(|&l| (l as f64 - mean).powi(2)).sum::<f64>() / hubs.len() as f64).sqrt();
    HubAssignment {
        objective: total_distance + inst.balance_weight * load_std,
        hubs,
        assignment,
        loads,
        total_distance,
        load_std,
    }
}

pub fn hlp_objective(inst: &HlpInstance) -> Result<ObjectiveSpec> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for c in &inst.clients {
        for j in 0..2 {
            lo[j] = lo[j].min(c[j]);
            hi[j] = hi[j].max(c[j]);
        }
    }
    let owned = inst.clone();
    ObjectiveSpec::new(
        format!("hlp-{}x{}", inst.clients.len(), inst.hub_count),
        lo.repeat(inst.hub_count),
        hi.repeat(inst.hub_count),
        move |x| decode_hubs(&owned, x).objective,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_hub_takes_everyone() {
        let inst = HlpInstance::new(vec![[0.0, 0.0], [3.0, 4.0], [6.0, 8.0]], 1, 5.0).unwrap();
        let a = decode_hubs(&inst, &[0.0, 0.0]);
        assert_eq!(a.loads, vec![3]);
        assert_eq!(a.load_std, 0.0);
        assert_eq!(a.objective, 15.0);
    }

    #[test]
    fn balance_term_counts_spread() {
        let inst = HlpInstance::new(vec![[0.0, 0.0], [1.0, 0.0], [10.0, 0.0], [11.0, 0.0]], 2, 2.0).unwrap();
        // hubs at 0 and 11: loads [2, 2], distances 1 + 1
        let even = decode_hubs(&inst, &[0.0, 0.0, 11.0, 0.0]);
        assert_eq!(even.loads, vec![2, 2]);
        assert_eq!(even.objective, 2.0);
        // hubs at 0 and 100: loads [4, 0], std 2
        let skewed = decode_hubs(&inst, &[0.0, 0.0, 100.0, 0.0]);
        assert_eq!(skewed.loads, vec![4, 0]);
        assert_eq!(skewed.objective, 22.0 + 2.0 * 2.0);
    }

    #[test]
    fn default_instance_is_reproducible() {
        let a = HlpInstance::default_40();
        let b = HlpInstance::default_40();
        assert_eq!(a, b);
        assert_eq!(a.clients.len(), 40);
        let spec = hlp_objective(&a).unwrap();
        assert_eq!(spec.dim(), 8);
        assert!(a.clients.iter().all(|c| c.iter().all(|v| (0.0..=100.0).contains(v))));
    }

    #[test]
    fn invalid_instances() {
        assert!(HlpInstance::new(vec![], 1, 1.0).is_err());
        assert!(HlpInstance::new(vec![[0.0, 0.0]], 2, 1.0).is_err());
        assert!(HlpInstance::new(vec![[0.0, 0.0]], 1, -1.0).is_err());
    }
}
