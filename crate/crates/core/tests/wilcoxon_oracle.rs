//! Rank-sum p-values against brute-force enumeration of every rank split.

use shs_core::stats::{wilcoxon_rank_sum, RankSumMethod};
use shs_core::{RandomSource, RngStream};

/// Exact two-sided p-value by enumerating all `C(n+m, n)` subsets of ranks.
fn brute_force_p(n: usize, m: usize, observed_rank_sum: f64) -> f64 {
    let total = n + m;
    let mean = n as f64 * (total + 1) as f64 / 2.0;
    let observed = (observed_rank_sum - mean).abs();
    let (mut extreme, mut count) = (0u64, 0u64);
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let sum: u32 = (0..total as u32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).sum();
        count += 1;
        if (sum as f64 - mean).abs() >= observed - 1e-9 {
            extreme += 1;
        }
    }
    extreme as f64 / count as f64
}

#[test]
fn matches_enumeration_on_random_battery() {
    let mut rng = RngStream::new(20240601);
    for case in 0..100 {
        let n = 1 + rng.index(6);
        let m = n;
        let values: Vec<f64> = (0..n + m).map(|_| rng.uniform(-100.0, 100.0)).collect();
        let (a, b) = values.split_at(n);
        let test = wilcoxon_rank_sum(a, b).unwrap();
        assert_eq!(test.method, RankSumMethod::Exact, "case {case}");
        let oracle = brute_force_p(n, m, test.rank_sum).min(1.0);
        assert!(
            (test.p_value - oracle).abs() <= 1e-10,
            "case {case}: {} vs {oracle}",
            test.p_value
        );
    }
}

#[test]
fn unequal_sizes_match_enumeration() {
    let mut rng = RngStream::new(5);
    for (n, m) in [(1, 7), (2, 5), (3, 8), (7, 2), (4, 9)] {
        let a: Vec<f64> = (0..n).map(|_| rng.unit()).collect();
        let b: Vec<f64> = (0..m).map(|_| rng.unit()).collect();
        let test = wilcoxon_rank_sum(&a, &b).unwrap();
        let oracle = brute_force_p(n, m, test.rank_sum).min(1.0);
        assert!((test.p_value - oracle).abs() <= 1e-10, "({n},{m})");
    }
}

#[test]
fn separated_triples_give_one_tenth() {
    let test = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
    assert_eq!(test.p_value, 0.1);
}

#[test]
fn symmetric_in_argument_order() {
    let a = [0.3, 1.7, 2.2, 5.0];
    let b = [0.1, 0.2, 4.4];
    let ab = wilcoxon_rank_sum(&a, &b).unwrap().p_value;
    let ba = wilcoxon_rank_sum(&b, &a).unwrap().p_value;
    assert!((ab - ba).abs() < 1e-12);
}
