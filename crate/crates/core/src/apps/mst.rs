//! Minimum spanning tree through a Prüfer-sequence encoding.
//!
//! Edge weights are Euclidean distances rounded to the nearest integer. A
//! decision vector of `N - 2` reals in `[1, N]` is rounded to node labels,
//! read as a Prüfer sequence and decoded into a spanning tree, so every
//! vector is a valid tree.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::{Error, ObjectiveSpec, Result};

const REFERENCE_NODES: [(f64, f64); 22] = [
    (30.0, 20.0),
    (0.0, 60.0),
    (70.0, 0.0),
    (0.0, 40.0),
    (100.0, 40.0),
    (20.0, 80.0),
    (60.0, 80.0),
    (20.0, 10.0),
    (0.0, 80.0),
    (10.0, 80.0),
    (90.0, 100.0),
    (40.0, 80.0),
    (20.0, 20.0),
    (80.0, 40.0),
    (60.0, 20.0),
    (0.0, 100.0),
    (40.0, 20.0),
    (20.0, 30.0),
    (80.0, 80.0),
    (20.0, 100.0),
    (60.0, 60.0),
    (100.0, 70.0),
];

#[derive(Debug, Clone, PartialEq)]
pub struct GraphInstance {
    pub nodes: Vec<(f64, f64)>,
}

impl GraphInstance {
    pub fn new(nodes: Vec<(f64, f64)>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidInstance(format!(
                "a spanning tree needs at least 2 nodes, got {}",
                nodes.len()
            )));
        }
        if nodes.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::InvalidInstance("node coordinates must be finite".into()));
        }
        Ok(Self { nodes })
    }

    /// The 22-node reference network.
    pub fn reference_22() -> Self {
        Self::new(REFERENCE_NODES.to_vec()).expect("reference nodes are valid")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Rounded Euclidean weight between nodes `i` and `j` (0-based).
    pub fn weight(&self, i: usize, j: usize) -> u64 {
        let (xi, yi) = self.nodes[i];
        let (xj, yj) = self.nodes[j];
        ((xi - xj).hypot(yi - yj)).round() as u64
    }
}

/// Tree over 0-based node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub edges: Vec<(usize, usize)>,
    pub total_weight: u64,
}

impl SpanningTree {
    fn from_edges(inst: &GraphInstance, edges: Vec<(usize, usize)>) -> Self {
        let total_weight = edges.iter().map(|&(a, b)| inst.weight(a, b)).sum();
        Self { edges, total_weight }
    }
}

/// Exact minimum spanning tree by Prim's algorithm on the dense weight matrix.
pub fn prim_mst_oracle(inst: &GraphInstance) -> SpanningTree {
    let n = inst.len();
    let mut in_tree = vec![false; n];
    let mut key = vec![u64::MAX; n];
    let mut parent = vec![usize::MAX; n];
    key[0] = 0;
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by_key(|&v| (key[v], v))
            .expect("a node remains while the loop runs");
        in_tree[u] = true;
        if parent[u] != usize::MAX {
            edges.push((parent[u], u));
        }
        for v in 0..n {
            if !in_tree[v] {
                let w = inst.weight(u, v);
                if w < key[v] {
                    key[v] = w;
                    parent[v] = u;
                }
            }
        }
    }
    SpanningTree::from_edges(inst, edges)
}

/// Decodes a Prüfer sequence over labels `0..n` into the `n - 1` tree edges.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n.max(2));
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().expect("two nodes remain");
    let Reverse(b) = leaves.pop().expect("two nodes remain");
    edges.push((a, b));
    edges
}

/// Rounds each coordinate to a 1-based label in `[1, n]` and returns 0-based labels.
pub fn vector_to_prufer(x: &[f64], n: usize) -> Vec<usize> {
    x.iter()
        .take(n.saturating_sub(2))
        .map(|v| (v.round().clamp(1.0, n as f64) as usize) - 1)
        .collect()
}

pub fn decode_tree(inst: &GraphInstance, x: &[f64]) -> SpanningTree {
    let n = inst.len();
    let seq = vector_to_prufer(x, n);
    SpanningTree::from_edges(inst, prufer_decode(&seq, n))
}

/// Objective over `N - 2` keys in `[1, N]`. A two-node graph has no free
/// choice; it gets a single ignored coordinate.
pub fn mst_objective(inst: &GraphInstance) -> Result<ObjectiveSpec> {
    let n = inst.len();
    let dim = n.saturating_sub(2).max(1);
    let owned = inst.clone();
    ObjectiveSpec::uniform(format!("mst-{n}"), dim, 1.0, n as f64, move |x| {
        decode_tree(&owned, x).total_weight as f64
    })
}
