use std::collections::HashSet;

use shs_core::apps::mst::vector_to_prufer;
use shs_core::apps::{
    decode_schedule, decode_tree, ed_objective, mst_objective, prim_mst_oracle, prufer_decode, EdInstance,
    GraphInstance, PmsInstance,
};
use shs_core::{RandomSource, RngStream};

fn all_sequences(n: usize) -> Vec<Vec<usize>> {
    let len = n - 2;
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..n).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn canonical(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut e: Vec<_> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    e.sort();
    e
}

/// Decoding every sequence yields `n^(n-2)` distinct trees (Cayley), and the
/// cheapest of them is the Prim tree.
#[test]
fn prufer_enumeration_covers_all_trees_and_finds_prim() {
    let mut rng = RngStream::new(8);
    for n in 3..=6 {
        let nodes: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.uniform(0.0, 50.0), rng.uniform(0.0, 50.0)))
            .collect();
        let graph = GraphInstance::new(nodes).unwrap();
        let mut trees = HashSet::new();
        let mut best = u64::MAX;
        for seq in all_sequences(n) {
            let edges = prufer_decode(&seq, n);
            best = best.min(edges.iter().map(|&(a, b)| graph.weight(a, b)).sum());
            trees.insert(canonical(&edges));
        }
        assert_eq!(trees.len(), n.pow(n as u32 - 2), "n={n}");
        assert_eq!(best, prim_mst_oracle(&graph).total_weight, "n={n}");
    }
}

#[test]
fn prim_on_reference_graph_is_a_tree() {
    let graph = GraphInstance::reference_22();
    let tree = prim_mst_oracle(&graph);
    assert_eq!(tree.edges.len(), 21);
    let mut parent: Vec<usize> = (0..22).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in &tree.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        assert_ne!(ra, rb, "cycle through ({a}, {b})");
        parent[ra] = rb;
    }
}

#[test]
fn continuous_decoding_is_total_and_bounded_below() {
    let graph = GraphInstance::reference_22();
    let spec = mst_objective(&graph).unwrap();
    let w_star = prim_mst_oracle(&graph).total_weight;
    let mut rng = RngStream::new(3);
    for _ in 0..500 {
        let x: Vec<f64> = (0..spec.dim())
            .map(|d| rng.uniform(spec.lower()[d], spec.upper()[d]))
            .collect();
        let seq = vector_to_prufer(&x, graph.len());
        assert!(seq.iter().all(|&v| v < graph.len()));
        let tree = decode_tree(&graph, &x);
        assert_eq!(tree.edges.len(), graph.len() - 1);
        assert!(tree.total_weight >= w_star);
        assert_eq!(spec.eval(&x), tree.total_weight as f64);
    }
}

/// Exhaustive optimum of a tiny two-machine instance: with all tasks on one
/// side in some order, C-max depends only on the split, which brute force covers.
#[test]
fn random_key_schedules_reach_the_exhaustive_optimum() {
    let processing = vec![vec![4, 7, 3, 5, 6], vec![6, 2, 5, 4, 3]];
    let setup = vec![vec![1, 2, 1, 3, 2], vec![2, 1, 2, 1, 1]];
    let inst = PmsInstance::new(processing, setup).unwrap();
    let tasks = inst.tasks();
    let mut best = u64::MAX;
    for mask in 0u32..(1 << tasks) {
        let keys: Vec<f64> = (0..tasks)
            .map(|t| if mask >> t & 1 == 1 { 0.75 } else { 0.25 })
            .collect();
        let s = decode_schedule(&inst, &keys);
        let mut seen: Vec<usize> = s.sequences.concat();
        seen.sort();
        assert_eq!(seen, (0..tasks).collect::<Vec<_>>());
        best = best.min(s.cmax);
    }
    let by_hand = (0u32..(1 << tasks))
        .map(|mask| {
            let load = |m: usize| -> u64 {
                (0..tasks)
                    .filter(|&t| (mask >> t & 1 == 1) == (m == 1))
                    .map(|t| inst.task_time(m, t))
                    .sum()
            };
            load(0).max(load(1))
        })
        .min()
        .unwrap();
    assert_eq!(best, by_hand);
}

#[test]
fn dispatch_at_balance_has_no_penalty() {
    let inst = EdInstance::reference_3gen();
    let spec = ed_objective(&inst).unwrap();
    // Bisection on a uniform scaling of the bounds' midpoint until PT - PL = PD.
    let mid: Vec<f64> = inst.p_min.iter().zip(&inst.p_max).map(|(a, b)| (a + b) / 2.0).collect();
    let (mut lo, mut hi) = (0.5, 2.0);
    for _ in 0..200 {
        let s = (lo + hi) / 2.0;
        let p: Vec<f64> = mid.iter().map(|v| v * s).collect();
        if inst.balance(&p) < 0.0 {
            lo = s;
        } else {
            hi = s;
        }
    }
    let p: Vec<f64> = mid.iter().map(|v| v * lo).collect();
    assert!(inst.balance(&p).abs() < 1e-6);
    assert!(p.iter().zip(&inst.p_max).all(|(v, hi)| v <= hi));
    let d = inst.dispatch(&p);
    assert!((d.error - inst.balance(&p)).abs() < 1e-12);
    assert!((spec.eval(&p) - d.cost).abs() <= 1e-6 * d.cost);
}
