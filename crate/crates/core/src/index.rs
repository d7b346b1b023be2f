//! Vantage-point tree over points of complex projective space under `d_p`.
//!
//! Points are stored as unit representatives. The vantage of every
//! partition is its first point and the split radius is the lower median
//! of the distances to it. Pruning keeps a small slack so that search
//! results coincide with a linear scan.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::Mode;
use crate::linalg::{CVector, Tolerance};
use crate::metrics::dist_unchecked;
use crate::numfmt;
use crate::refinements::check_p;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    pub id: usize,
    pub rep: CVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub vantage: usize,
    #[serde(serialize_with = "numfmt::f64_17")]
    pub mu: f64,
    pub inside: Option<usize>,
    pub outside: Option<usize>,
}

/// Tree nodes in an arena; `root` and the child links index into `nodes`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub root: Option<usize>,
    pub nodes: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VpIndex {
    #[serde(serialize_with = "numfmt::f64_17")]
    p: f64,
    dim: Option<usize>,
    points: Vec<CVector>,
    tree: Tree,
    #[serde(default)]
    tol: Tolerance,
}

/// One search hit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Neighbor {
    pub id: usize,
    #[serde(serialize_with = "numfmt::f64_17")]
    pub distance: f64,
}

impl Neighbor {
    fn key_cmp(&self, other: &Neighbor) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then(self.id.cmp(&other.id))
    }
}

impl Eq for Neighbor {}

impl PartialOrd for Neighbor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Neighbor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_cmp(other)
    }
}

/// Distance evaluations spent by a query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub visited: usize,
}

impl VpIndex {
    pub fn build(points: &[CVector], p: f64) -> Result<Self> {
        Self::build_with(points, p, Tolerance::default())
    }

    pub fn build_with(points: &[CVector], p: f64, tol: Tolerance) -> Result<Self> {
        check_p(p)?;
        tol.validate()?;
        let dim = points.first().map(CVector::dim);
        let mut reps = Vec::with_capacity(points.len());
        for (i, x) in points.iter().enumerate() {
            points[0].check_dim(x)?;
            if x.is_zero() {
                return Err(Error::param(format!("point {i} is the zero vector")));
            }
            reps.push(x.normalize()?);
        }

        let mut nodes: Vec<Node> = Vec::with_capacity(reps.len());
        // members in input order, parent slot to patch
        type Job = (Vec<usize>, Option<(usize, bool)>);
        let mut work: Vec<Job> = Vec::new();
        let mut root = None;
        if !reps.is_empty() {
            work.push(((0..reps.len()).collect(), None));
        }
        while let Some((members, parent)) = work.pop() {
            let vantage = members[0];
            let rest = &members[1..];
            let dists: Vec<f64> = rest
                .iter()
                .map(|&i| dist_unchecked(&reps[vantage], &reps[i], p, Mode::Modulus))
                .collect();
            let mu = if dists.is_empty() {
                0.0
            } else {
                let mut sorted = dists.clone();
                sorted.sort_by(f64::total_cmp);
                sorted[(sorted.len() - 1) / 2]
            };
            let (mut inside, mut outside) = (Vec::new(), Vec::new());
            for (&i, &d) in rest.iter().zip(&dists) {
                if d <= mu {
                    inside.push(i);
                } else {
                    outside.push(i);
                }
            }
            let id = nodes.len();
            nodes.push(Node {
                vantage,
                mu,
                inside: None,
                outside: None,
            });
            match parent {
                None => root = Some(id),
                Some((pid, true)) => nodes[pid].inside = Some(id),
                Some((pid, false)) => nodes[pid].outside = Some(id),
            }
            // outside first so the inside subtree is numbered next
            if !outside.is_empty() {
                work.push((outside, Some((id, false))));
            }
            if !inside.is_empty() {
                work.push((inside, Some((id, true))));
            }
        }

        Ok(VpIndex {
            p,
            dim,
            points: reps,
            tree: Tree { root, nodes },
            tol,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn point(&self, id: usize) -> Option<ProjectivePoint> {
        self.points.get(id).map(|rep| ProjectivePoint {
            id,
            rep: rep.clone(),
        })
    }

    fn prepare(&self, q: &CVector) -> Result<CVector> {
        if let Some(d) = self.dim {
            if d != q.dim() {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: q.dim(),
                });
            }
        }
        if q.is_zero() {
            return Err(Error::ZeroVector { what: "query" });
        }
        q.normalize()
    }

    #[inline]
    fn dist(&self, q: &CVector, id: usize) -> f64 {
        dist_unchecked(q, &self.points[id], self.p, Mode::Modulus)
    }

    /// Linear scan; the reference the tree must reproduce.
    pub fn scan_nn(&self, q: &CVector, k: usize) -> Result<Vec<Neighbor>> {
        check_k(k)?;
        let q = self.prepare(q)?;
        let mut all: Vec<Neighbor> = (0..self.len())
            .map(|id| Neighbor {
                id,
                distance: self.dist(&q, id),
            })
            .collect();
        all.sort();
        all.truncate(k);
        Ok(all)
    }

    pub fn scan_range(&self, q: &CVector, r: f64) -> Result<Vec<Neighbor>> {
        check_r(r)?;
        let q = self.prepare(q)?;
        let cutoff = self.cutoff(r);
        let mut hits: Vec<Neighbor> = (0..self.len())
            .map(|id| Neighbor {
                id,
                distance: self.dist(&q, id),
            })
            .filter(|n| n.distance <= cutoff)
            .collect();
        hits.sort();
        Ok(hits)
    }

    fn cutoff(&self, r: f64) -> f64 {
        r + self.tol.slack(r, r)
    }

    pub fn query_nn(&self, q: &CVector, k: usize) -> Result<Vec<Neighbor>> {
        self.query_nn_stats(q, k).map(|(v, _)| v)
    }

    /// `k` nearest stored points, ascending by `(distance, id)`.
    pub fn query_nn_stats(&self, q: &CVector, k: usize) -> Result<(Vec<Neighbor>, QueryStats)> {
        check_k(k)?;
        let q = self.prepare(q)?;
        let mut stats = QueryStats::default();
        let mut heap: BinaryHeap<Neighbor> = BinaryHeap::with_capacity(k + 1);
        let mut stack: Vec<usize> = self.tree.root.into_iter().collect();
        while let Some(n) = stack.pop() {
            let node = self.tree.nodes[n];
            let d = self.dist(&q, node.vantage);
            stats.visited += 1;
            let cand = Neighbor {
                id: node.vantage,
                distance: d,
            };
            if heap.len() < k {
                heap.push(cand);
            } else if heap.peek().is_some_and(|w| cand < *w) {
                heap.pop();
                heap.push(cand);
            }
            let worst = if heap.len() < k {
                f64::INFINITY
            } else {
                heap.peek().map_or(f64::INFINITY, |w| w.distance)
            };
            let margin = worst + self.tol.slack(d, node.mu);
            let go_in = node.inside.filter(|_| d - node.mu <= margin);
            let go_out = node.outside.filter(|_| node.mu - d <= margin);
            // the side containing q is searched first
            if d <= node.mu {
                stack.extend(go_out);
                stack.extend(go_in);
            } else {
                stack.extend(go_in);
                stack.extend(go_out);
            }
        }
        Ok((heap.into_sorted_vec(), stats))
    }

    pub fn query_range(&self, q: &CVector, r: f64) -> Result<Vec<Neighbor>> {
        self.query_range_stats(q, r).map(|(v, _)| v)
    }

    /// All stored points within `r` (plus tolerance), ascending by `(distance, id)`.
    pub fn query_range_stats(&self, q: &CVector, r: f64) -> Result<(Vec<Neighbor>, QueryStats)> {
        check_r(r)?;
        let q = self.prepare(q)?;
        let cutoff = self.cutoff(r);
        let mut stats = QueryStats::default();
        let mut hits = Vec::new();
        let mut stack: Vec<usize> = self.tree.root.into_iter().collect();
        while let Some(n) = stack.pop() {
            let node = self.tree.nodes[n];
            let d = self.dist(&q, node.vantage);
            stats.visited += 1;
            if d <= cutoff {
                hits.push(Neighbor {
                    id: node.vantage,
                    distance: d,
                });
            }
            let margin = cutoff + self.tol.slack(d, node.mu);
            if d - node.mu <= margin {
                stack.extend(node.inside);
            }
            if node.mu - d <= margin {
                stack.extend(node.outside);
            }
        }
        hits.sort();
        Ok((hits, stats))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("index serializes")
    }

    /// Parses and validates a serialized index.
    pub fn from_json(s: &str) -> Result<Self> {
        let idx: VpIndex = serde_json::from_str(s).map_err(|e| Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        idx.validate()?;
        Ok(idx)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Checks every structural invariant: unit representatives of one
    /// dimension, each point in exactly one node, and the partition
    /// `inside <= mu < outside` at every node.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Consistency(m));
        check_p(self.p)?;
        self.tol.validate()?;
        if self.dim != self.points.first().map(CVector::dim) {
            return bad("dim does not match the stored points".into());
        }
        for (i, x) in self.points.iter().enumerate() {
            if Some(x.dim()) != self.dim {
                return bad(format!("point {i} has dimension {}", x.dim()));
            }
            let n = x.norm();
            if (n - 1.0).abs() > self.tol.slack(n, 1.0) {
                return bad(format!("point {i} has norm {n}"));
            }
        }
        let nodes = &self.tree.nodes;
        if nodes.len() != self.points.len() || self.tree.root.is_some() != !nodes.is_empty() {
            return bad("node count differs from point count".into());
        }
        let mut seen_point = vec![false; nodes.len()];
        let mut seen_node = vec![false; nodes.len()];
        // subtree member lists, collected bottom-up from a DFS order
        let mut order = Vec::with_capacity(nodes.len());
        let mut stack: Vec<usize> = self.tree.root.into_iter().collect();
        while let Some(n) = stack.pop() {
            if n >= nodes.len() || seen_node[n] {
                return bad(format!("node {n} is out of range or shared"));
            }
            seen_node[n] = true;
            let v = nodes[n].vantage;
            if v >= self.points.len() || seen_point[v] {
                return bad(format!("point {v} is out of range or stored twice"));
            }
            seen_point[v] = true;
            if !nodes[n].mu.is_finite() {
                return bad(format!("node {n} has a non-finite radius"));
            }
            order.push(n);
            stack.extend(nodes[n].inside);
            stack.extend(nodes[n].outside);
        }
        if order.len() != nodes.len() {
            return bad("unreachable nodes".into());
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for &n in order.iter().rev() {
            let node = nodes[n];
            for (child, inside) in [(node.inside, true), (node.outside, false)] {
                let Some(c) = child else { continue };
                for &id in &members[c] {
                    let d = dist_unchecked(
                        &self.points[node.vantage],
                        &self.points[id],
                        self.p,
                        Mode::Modulus,
                    );
                    if (d <= node.mu) != inside {
                        return bad(format!("point {id} is on the wrong side of node {n}"));
                    }
                }
            }
            let mut all = vec![node.vantage];
            for c in [node.inside, node.outside].into_iter().flatten() {
                all.append(&mut members[c]);
            }
            members[n] = all;
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    Ok(())
}

fn check_r(r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::param(format!("radius {r} outside [0, 1]")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(n: usize, dim: usize, seed: u64) -> Vec<CVector> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                CVector::new(
                    (0..dim)
                        .map(|_| {
                            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                        })
                        .collect(),
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn empty_and_single() {
        let idx = VpIndex::build(&[], 2.0).unwrap();
        assert_eq!(idx.len(), 0);
        let q = CVector::from_real(&[1.0, 0.0]).unwrap();
        assert!(idx.query_nn(&q, 3).unwrap().is_empty());
        assert!(idx.query_range(&q, 1.0).unwrap().is_empty());

        let idx = VpIndex::build(std::slice::from_ref(&q), 2.0).unwrap();
        assert_eq!(idx.len(), 1);
        assert_eq!(idx.tree().nodes.len(), 1);
    }

    #[test]
    fn build_errors() {
        let x = CVector::from_real(&[1.0, 0.0]).unwrap();
        let z = CVector::zeros(2).unwrap();
        assert!(VpIndex::build(&[x.clone(), z], 2.0).is_err());
        assert!(VpIndex::build(std::slice::from_ref(&x), 1.5).is_err());
        let y = CVector::from_real(&[1.0]).unwrap();
        assert!(matches!(
            VpIndex::build(&[x, y], 2.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn partition_audit() {
        let idx = VpIndex::build(&random_points(64, 4, 1), 2.0).unwrap();
        assert_eq!(idx.len(), 64);
        idx.validate().unwrap();
        // deterministic rebuild
        assert_eq!(idx, VpIndex::build(&random_points(64, 4, 1), 2.0).unwrap());
    }

    #[test]
    fn scaled_stored_point_is_nearest() {
        let pts = random_points(50, 3, 2);
        for p in [2.0, 3.0] {
            let idx = VpIndex::build(&pts, p).unwrap();
            let q = pts[17].scale(Complex64::new(0.0, -4.0));
            let hits = idx.query_nn(&q, 1).unwrap();
            assert_eq!(hits[0].id, 17);
            assert!(hits[0].distance <= 1e-12, "{}", hits[0].distance);
        }
    }

    #[test]
    fn matches_linear_scan() {
        let pts = random_points(256, 8, 3);
        let queries = random_points(100, 8, 4);
        for p in [2.0, 3.0] {
            let idx = VpIndex::build(&pts, p).unwrap();
            for q in &queries {
                assert_eq!(idx.query_nn(q, 5).unwrap(), idx.scan_nn(q, 5).unwrap());
                assert_eq!(
                    idx.query_range(q, 0.3).unwrap(),
                    idx.scan_range(q, 0.3).unwrap()
                );
            }
        }
    }

    #[test]
    fn range_edges() {
        let pts = random_points(128, 3, 5);
        let idx = VpIndex::build(&pts, 2.0).unwrap();
        let q = random_points(1, 3, 6).pop().unwrap();
        assert_eq!(idx.query_range(&q, 1.0).unwrap().len(), 128);
        assert!(idx.query_range(&q, 0.0).unwrap().is_empty());
        assert!(idx.query_range(&q, 1.5).is_err());
        assert!(idx.query_nn(&q, 0).is_err());
        assert!(idx.query_nn(&CVector::zeros(3).unwrap(), 1).is_err());
        assert!(idx
            .query_nn(&CVector::from_real(&[1.0]).unwrap(), 1)
            .is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let idx = VpIndex::build(&random_points(40, 2, 7), 3.0).unwrap();
        let s = idx.to_json();
        let back = VpIndex::from_json(&s).unwrap();
        assert_eq!(back, idx);

        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let mu = v["tree"]["nodes"][0]["mu"].as_f64().unwrap();
        v["tree"]["nodes"][0]["mu"] = serde_json::json!(mu * 0.5);
        assert!(matches!(
            VpIndex::from_json(&v.to_string()),
            Err(Error::Consistency(_))
        ));
        assert!(matches!(VpIndex::from_json("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn pruning_saves_work_on_clusters() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let centers = random_points(8, 4, 10);
        let pts: Vec<CVector> = (0..512)
            .map(|i| {
                let c = &centers[i % 8];
                CVector::new(
                    c.iter()
                        .map(|z| {
                            z + Complex64::new(
                                rng.random_range(-0.01..0.01),
                                rng.random_range(-0.01..0.01),
                            )
                        })
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        let idx = VpIndex::build(&pts, 2.0).unwrap();
        let mut total = 0;
        for q in &centers {
            total += idx.query_nn_stats(q, 3).unwrap().1.visited;
        }
        assert!(total < 8 * 512);
    }
}
