use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::average_ranks;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FriedmanResult {
    /// Within-block ranks, one row per block.
    pub block_ranks: Vec<Vec<f64>>,
    /// Mean rank of each algorithm over the blocks (1 = best).
    pub average_ranks: Vec<f64>,
    /// Tie-corrected Friedman statistic.
    pub chi_square: f64,
    /// Upper tail of chi-square with `k - 1` degrees of freedom.
    pub p_value: f64,
}

/// Friedman rank test on a `blocks x algorithms` cost matrix; lower cost ranks first.
pub fn friedman_ranks(costs: &[Vec<f64>]) -> Result<FriedmanResult> {
    let first = costs.first().ok_or(Error::EmptyInput("friedman blocks"))?;
    let k = first.len();
    if k < 2 {
        return Err(Error::InvalidConfig(
            "friedman test needs at least two algorithms".into(),
        ));
    }
    for (row, block) in costs.iter().enumerate() {
        if block.len() != k {
            return Err(Error::RaggedMatrix {
                row,
                expected: k,
                got: block.len(),
            });
        }
    }

    let block_ranks: Vec<Vec<f64>> = costs.iter().map(|b| average_ranks(b)).collect();
    let b = costs.len() as f64;
    let kf = k as f64;
    let mut rank_sums = vec![0.0; k];
    for ranks in &block_ranks {
        for (s, r) in rank_sums.iter_mut().zip(ranks) {
            *s += r;
        }
    }
    let average_ranks = rank_sums.iter().map(|s| s / b).collect();

    // (k - 1) * sum_j (R_j - b (k + 1) / 2)^2 / (sum r_ij^2 - b k (k + 1)^2 / 4)
    let center = b * (kf + 1.0) / 2.0;
    let numerator = (kf - 1.0) * rank_sums.iter().map(|r| (r - center).powi(2)).sum::<f64>();
    let squares: f64 = block_ranks.iter().flatten().map(|r| r * r).sum();
    let denominator = squares - b * kf * (kf + 1.0).powi(2) / 4.0;
    let chi_square = if denominator > 0.0 {
        numerator / denominator
    } else {
        0.0
    };
    let p_value = ChiSquared::new(kf - 1.0).map(|d| d.sf(chi_square)).unwrap_or(1.0);

    Ok(FriedmanResult {
        block_ranks,
        average_ranks,
        chi_square,
        p_value,
    })
}
