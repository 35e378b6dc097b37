use statrs::function::erf::erfc;

use super::average_ranks;
use crate::{Error, Result};

/// Largest combined sample size for which the exact null distribution is used.
pub const EXACT_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankSumMethod {
    /// Exact permutation distribution of U.
    Exact,
    /// Normal approximation with tie-corrected variance and continuity correction.
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankSumTest {
    /// Mann-Whitney U of the first sample.
    pub u: f64,
    /// Rank sum of the first sample in the pooled ranking.
    pub rank_sum: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    pub method: RankSumMethod,
}

/// Two-sided Wilcoxon rank-sum (Mann-Whitney U) test.
///
/// Tie-free samples with `a.len() + b.len() <= EXACT_LIMIT` use the exact
/// distribution; everything else uses the normal approximation.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<RankSumTest> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("rank-sum sample"));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::InvalidConfig("rank-sum samples must not contain NaN".into()));
    }
    let (n, m) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = average_ranks(&pooled);
    let rank_sum: f64 = ranks[..n].iter().sum();
    let u = rank_sum - (n * (n + 1)) as f64 / 2.0;

    let tie_term = tie_correction(&pooled);
    let (p_value, method) = if n + m <= EXACT_LIMIT && tie_term == 0.0 {
        (exact_p_value(n, m, u.round() as usize), RankSumMethod::Exact)
    } else {
        (normal_p_value(n, m, u, tie_term), RankSumMethod::Normal)
    };
    Ok(RankSumTest {
        u,
        rank_sum,
        p_value,
        method,
    })
}

/// `sum(t^3 - t)` over tie groups of the pooled sample.
fn tie_correction(pooled: &[f64]) -> f64 {
    let mut sorted = pooled.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        total += t * t * t - t;
        i = j;
    }
    total
}

/// Frequencies of U for sample sizes `(n, m)`: entry `u` counts the
/// arrangements of the pooled ranks with statistic `u`.
fn u_frequencies(n: usize, m: usize) -> Vec<f64> {
    // freq[i][j] is the distribution for sizes (i, j), built over a rolling row.
    // Recurrence: f(i, j, u) = f(i - 1, j, u - j) + f(i, j - 1, u).
    let max_u = n * m;
    let mut prev: Vec<Vec<f64>> = (0..=m).map(|_| vec![1.0]).collect(); // i = 0
    for i in 1..=n {
        let mut cur: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
        cur.push(vec![1.0]); // j = 0
        for j in 1..=m {
            let mut dist = vec![0.0; i * j + 1];
            for (u, f) in prev[j].iter().enumerate() {
                dist[u + j] += f;
            }
            for (u, f) in cur[j - 1].iter().enumerate() {
                dist[u] += f;
            }
            cur.push(dist);
        }
        prev = cur;
    }
    let mut out = prev.swap_remove(m);
    out.resize(max_u + 1, 0.0);
    out
}

fn exact_p_value(n: usize, m: usize, u: usize) -> f64 {
    let freq = u_frequencies(n, m);
    let total: f64 = freq.iter().sum();
    let lower: f64 = freq[..=u].iter().sum();
    let upper: f64 = freq[u..].iter().sum();
    (2.0 * lower.min(upper) / total).min(1.0)
}

fn normal_p_value(n: usize, m: usize, u: f64, tie_term: f64) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let total = nf + mf;
    let mean = nf * mf / 2.0;
    let var = if total > 1.0 {
        nf * mf / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)))
    } else {
        0.0
    };
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
    erfc(z / std::f64::consts::SQRT_2).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn separated_triples() {
        let t = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(t.method, RankSumMethod::Exact);
        assert_eq!(t.u, 0.0);
        assert_eq!(t.rank_sum, 6.0);
        assert_eq!(t.p_value, 0.1);
    }

    #[test]
    fn identical_samples() {
        let s = [0.3, 1.7, 2.2, 9.0];
        assert_eq!(wilcoxon_rank_sum(&s, &s).unwrap().p_value, 1.0);
        assert_eq!(wilcoxon_rank_sum(&[4.0; 5], &[4.0; 7]).unwrap().p_value, 1.0);
    }

    #[test]
    fn frequencies_match_binomial_total() {
        for (n, m) in [(1, 1), (2, 3), (4, 4), (8, 8), (3, 10)] {
            let f = u_frequencies(n, m);
            let total: f64 = f.iter().sum();
            let binom: f64 = (1..=n).map(|k| (m + k) as f64 / k as f64).product();
            assert_relative_eq!(total, binom, max_relative = 1e-12);
            // U is symmetric about nm / 2
            for u in 0..=n * m {
                assert_eq!(f[u], f[n * m - u]);
            }
        }
    }

    #[test]
    fn large_shift_is_significant() {
        let a: Vec<f64> = (0..30).map(|i| (i as f64 * 0.37).sin()).collect();
        let b: Vec<f64> = a.iter().map(|v| v + 10.0).collect();
        let t = wilcoxon_rank_sum(&a, &b).unwrap();
        assert_eq!(t.method, RankSumMethod::Normal);
        assert!(t.p_value < 0.05);
    }

    #[test]
    fn normal_branch_hand_value() {
        // n = m = 9 (beyond the exact limit), complete separation: U = 0,
        // mean 40.5, var 81 * 19 / 12 = 128.25, z = 40 / sqrt(128.25)
        let a: Vec<f64> = (0..9).map(f64::from).collect();
        let b: Vec<f64> = (10..19).map(f64::from).collect();
        let t = wilcoxon_rank_sum(&a, &b).unwrap();
        let z: f64 = 40.0 / 128.25f64.sqrt();
        assert_relative_eq!(t.p_value, erfc(z / 2f64.sqrt()), max_relative = 1e-14);
        assert!(t.p_value < 1e-3);
    }

    fn largest_gap(n: usize, m: usize) -> f64 {
        (0..=n * m)
            .map(|u| (exact_p_value(n, m, u) - normal_p_value(n, m, u as f64, 0.0)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn approximation_tracks_exact_distribution() {
        // Every tie-free pair of samples realizes some U, so sweeping U covers
        // all inputs of a given size.
        for n in 5..=11 {
            for m in 5..=16 - n {
                let gap = largest_gap(n, m);
                assert!(gap <= 0.02, "n = {n}, m = {m}: gap {gap}");
            }
        }
    }

    #[test]
    fn approximation_is_coarse_for_tiny_samples() {
        // With one observation the exact p-values are multiples of 2 / (m + 1);
        // no continuous curve stays within a few hundredths of that staircase.
        for m in 2..=15 {
            assert!(largest_gap(1, m) > 0.1);
        }
        assert!(largest_gap(4, 4) > 0.02);
    }

    #[test]
    fn rejects_empty_and_nan() {
        assert!(wilcoxon_rank_sum(&[], &[1.0]).is_err());
        assert!(wilcoxon_rank_sum(&[f64::NAN], &[1.0]).is_err());
    }
}
