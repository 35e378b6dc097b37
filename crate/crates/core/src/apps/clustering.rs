//! Centroid-coded clustering.
//!
//! The decision vector holds `k` centroids of dimension `d`, flattened
//! centroid by centroid, each coordinate bounded by the data range in that
//! feature. Points go to their nearest centroid (lowest index on ties).

use crate::objective::euclidean;
use crate::{Error, ObjectiveSpec, Result};

/// Added once per centroid that attracts no point.
pub const EMPTY_CLUSTER_PENALTY: f64 = 1e6;

const IRIS_CSV: &str = include_str!("../../data/iris.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClusterObjective {
    /// Sum of distances from each point to its assigned centroid.
    #[default]
    WithinCluster,
    /// Sum over cluster pairs of the distance between cluster means.
    ///
    /// Minimizing this pulls clusters together; it is provided for comparison only.
    BetweenGroup,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringInstance {
    pub points: Vec<Vec<f64>>,
    pub k: usize,
    pub mode: ClusterObjective,
}

impl ClusteringInstance {
    pub fn new(points: Vec<Vec<f64>>, k: usize) -> Result<Self> {
        let d = points
            .first()
            .map(Vec::len)
            .ok_or(Error::EmptyInput("clustering points"))?;
        if d == 0 {
            return Err(Error::InvalidInstance("points need at least one feature".into()));
        }
        if let Some(row) = points.iter().position(|p| p.len() != d) {
            return Err(Error::RaggedMatrix {
                row,
                expected: d,
                got: points[row].len(),
            });
        }
        if points.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInstance("point coordinates must be finite".into()));
        }
        if k == 0 || k > points.len() {
            return Err(Error::InvalidInstance(format!(
                "cluster count must be in 1..={}, got {k}",
                points.len()
            )));
        }
        Ok(Self {
            points,
            k,
            mode: ClusterObjective::default(),
        })
    }

    pub fn with_mode(mut self, mode: ClusterObjective) -> Self {
        self.mode = mode;
        self
    }

    pub fn features(&self) -> usize {
        self.points[0].len()
    }

    /// Iris on (sepal length, petal width), three clusters.
    pub fn iris() -> Self {
        let (points, _) = iris_data();
        Self::new(points, 3).expect("bundled iris data is valid")
    }

    fn feature_bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.features();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for p in &self.points {
            for j in 0..d {
                lo[j] = lo[j].min(p[j]);
                hi[j] = hi[j].max(p[j]);
            }
        }
        (lo, hi)
    }
}

/// Iris (sepal length, petal width) points and their species labels.
pub fn iris_data() -> (Vec<Vec<f64>>, Vec<String>) {
    let mut points = Vec::new();
    let mut species = Vec::new();
    for line in IRIS_CSV.lines().skip(1).filter(|l| !l.trim().is_empty()) {
        let mut fields = line.split(',');
        let sepal: f64 = fields.next().and_then(|v| v.parse().ok()).expect("iris sepal length");
        let petal: f64 = fields.next().and_then(|v| v.parse().ok()).expect("iris petal width");
        points.push(vec![sepal, petal]);
        species.push(fields.next().unwrap_or_default().to_string());
    }
    (points, species)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterAssignment {
    pub centroids: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub sizes: Vec<usize>,
    pub objective: f64,
}

/// Sum of distances from each point to its nearest centroid.
pub fn within_cluster_distance(points: &[Vec<f64>], centroids: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .map(|p| centroids.iter().map(|c| euclidean(p, c)).fold(f64::INFINITY, f64::min))
        .sum()
}

pub fn decode_clusters(inst: &ClusteringInstance, x: &[f64]) -> ClusterAssignment {
    let d = inst.features();
    let centroids: Vec<Vec<f64>> = x.chunks_exact(d).take(inst.k).map(<[f64]>::to_vec).collect();
    let mut labels = Vec::with_capacity(inst.points.len());
    let mut sizes = vec![0usize; inst.k];
    let mut within = 0.0;
    for p in &inst.points {
        let (mut best, mut best_d) = (0, f64::INFINITY);
        for (c, centroid) in centroids.iter().enumerate() {
            let dc = euclidean(p, centroid);
            if dc < best_d {
                best = c;
                best_d = dc;
            }
        }
        labels.push(best);
        sizes[best] += 1;
        within += best_d;
    }
    let empty = sizes.iter().filter(|&&s| s == 0).count() as f64;
    let base = match inst.mode {
        ClusterObjective::WithinCluster => within,
        ClusterObjective::BetweenGroup => between_group(inst, &labels, &sizes),
    };
    ClusterAssignment {
        centroids,
        labels,
        sizes,
        objective: base + EMPTY_CLUSTER_PENALTY * empty,
    }
}

fn between_group(inst: &ClusteringInstance, labels: &[usize], sizes: &[usize]) -> f64 {
    let d = inst.features();
    let mut means = vec![vec![0.0; d]; inst.k];
    for (p, &l) in inst.points.iter().zip(labels) {
        for j in 0..d {
            means[l][j] += p[j];
        }
    }
    for (m, &s) in means.iter_mut().zip(sizes) {
        if s > 0 {
            m.iter_mut().for_each(|v| *v /= s as f64);
        }
    }
    let occupied: Vec<&Vec<f64>> = means
        .iter()
        .zip(sizes)
        .filter(|(_, &s)| s > 0)
        .map(|(m, _)| m)
        .collect();
    let mut total = 0.0;
    for a in 0..occupied.len() {
        for b in a + 1..occupied.len() {
            total += euclidean(occupied[a], occupied[b]);
        }
    }
    total
}

pub fn clustering_objective(inst: &ClusteringInstance) -> Result<ObjectiveSpec> {
    let (lo, hi) = inst.feature_bounds();
    let lower = lo.repeat(inst.k);
    let upper = hi.repeat(inst.k);
    let owned = inst.clone();
    ObjectiveSpec::new(format!("clustering-k{}", inst.k), lower, upper, move |x| {
        decode_clusters(&owned, x).objective
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blobs() -> ClusteringInstance {
        let mut pts = Vec::new();
        for i in 0..10 {
            let t = i as f64 * 0.1;
            pts.push(vec![t, -t]);
            pts.push(vec![20.0 + t, 20.0 - t]);
        }
        ClusteringInstance::new(pts, 2).unwrap()
    }

    #[test]
    fn iris_loads() {
        let (pts, species) = iris_data();
        assert_eq!(pts.len(), 150);
        assert_eq!(species.iter().filter(|s| *s == "setosa").count(), 50);
        assert_eq!(pts[0], vec![5.1, 0.2]);
        assert_eq!(ClusteringInstance::iris().k, 3);
    }

    #[test]
    fn separation_beats_shared_centroid() {
        let inst = blobs();
        let truth = [0.45, -0.45, 20.45, 19.55];
        let shared = [10.0, 10.0, 10.0, 10.0];
        let good = decode_clusters(&inst, &truth);
        assert_eq!(good.sizes, vec![10, 10]);
        // a duplicated centroid leaves the second cluster empty
        let bad = decode_clusters(&inst, &shared);
        assert_eq!(bad.sizes, vec![20, 0]);
        assert!(good.objective < bad.objective);
        assert!(good.objective < within_cluster_distance(&inst.points, &[vec![10.0, 10.0]]));
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let inst = ClusteringInstance::new(vec![vec![0.0], vec![2.0]], 2).unwrap();
        let a = decode_clusters(&inst, &[1.0, 1.0]);
        assert_eq!(a.labels, vec![0, 0]);
        assert_eq!(a.objective, 2.0 + EMPTY_CLUSTER_PENALTY);
    }

    #[test]
    fn between_group_mode() {
        let inst = blobs().with_mode(ClusterObjective::BetweenGroup);
        let a = decode_clusters(&inst, &[0.45, -0.45, 20.45, 19.55]);
        assert!((a.objective - euclidean(&[0.45, -0.45], &[20.45, 19.55])).abs() < 1e-9);
    }

    #[test]
    fn bounds_follow_data() {
        let spec = clustering_objective(&blobs()).unwrap();
        assert_eq!(spec.dim(), 4);
        assert_eq!(spec.lower(), &[0.0, -0.9, 0.0, -0.9]);
        assert!((spec.upper()[0] - 20.9).abs() < 1e-12);
    }

    #[test]
    fn invalid_instances() {
        assert!(ClusteringInstance::new(vec![], 1).is_err());
        assert!(ClusteringInstance::new(vec![vec![1.0]], 2).is_err());
        assert!(ClusteringInstance::new(vec![vec![1.0], vec![1.0, 2.0]], 1).is_err());
    }
}
