//! Nonparametric comparison machinery for optimizer runs.

mod friedman;
mod wilcoxon;

pub use friedman::{friedman_ranks, FriedmanResult};
pub use wilcoxon::{wilcoxon_rank_sum, RankSumMethod, RankSumTest, EXACT_LIMIT};

use crate::{Error, Result};

/// Significance level used when flagging test outcomes.
pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

/// Best / median / worst / mean of a set of final costs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub best: f64,
    pub median: f64,
    pub worst: f64,
    pub avg: f64,
    pub count: usize,
}

/// Summary row labelled with the optimizer and function it describes.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: String,
    pub function: String,
    pub summary: Summary,
}

pub fn summarize(costs: &[f64]) -> Result<Summary> {
    if costs.is_empty() {
        return Err(Error::EmptyInput("cost sample"));
    }
    let mut sorted = costs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    Ok(Summary {
        best: sorted[0],
        median,
        worst: sorted[n - 1],
        avg: costs.iter().sum::<f64>() / n as f64,
        count: n,
    })
}

/// Ranks starting at 1, ties sharing the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = rank;
        }
        start = end;
    }
    ranks
}

/// `(x - min) / (max - min)`; a constant sample maps to all zeros.
pub fn minmax_normalize(costs: &[f64]) -> Vec<f64> {
    let min = costs.iter().copied().fold(f64::INFINITY, f64::min);
    let max = costs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;
    costs
        .iter()
        .map(|&c| if range > 0.0 { (c - min) / range } else { 0.0 })
        .collect()
}

/// Sample Pearson correlation.
///
/// Returns `Ok(None)` when either series has zero variance, where the
/// coefficient is undefined.
pub fn pearson_correlation(a: &[f64], b: &[f64]) -> Result<Option<f64>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::InvalidConfig("correlation needs at least two points".into()));
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Ok(None);
    }
    Ok(Some((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0)))
}
