//! Core network and metric-space types shared by every other module.
//!
//! A [`Network`] is a finite, undirected, connected graph with strictly
//! positive edge weights interpreted as dissimilarities. A
//! [`FiniteMetricSpace`] is a complete distance structure over the same kind
//! of node set. Both are immutable once built and safe to share across
//! threads.

use thiserror::Error;

/// Dense node index into the owning structure, `0 <= id < n`.
pub type NodeId = usize;

/// Relative slack used when checking triangle inequalities on floating-point
/// sums: `eps = TRIANGLE_EPS_REL * max(dist)`.
pub const TRIANGLE_EPS_REL: f64 = 1e-9;

/// Triangle tolerance for a matrix whose largest entry is `max_abs`.
pub fn triangle_eps(max_abs: f64) -> f64 {
    TRIANGLE_EPS_REL * max_abs
}

/// Construction errors for [`Network`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("non-positive weight {w} on edge ({x}, {y})")]
    NonPositiveWeight { x: NodeId, y: NodeId, w: f64 },
    #[error("edge ({x}, {y}) listed with conflicting weights {w1} and {w2}")]
    AsymmetricWeight {
        x: NodeId,
        y: NodeId,
        w1: f64,
        w2: f64,
    },
    #[error("graph is disconnected (component sizes {0:?})")]
    Disconnected(Vec<usize>),
    #[error("node {node} out of range for {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("empty node set")]
    Empty,
}

/// Errors raised by path operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("step {0} of the path is not an edge of the network")]
    InvalidPath(usize),
    #[error("paths do not share an endpoint")]
    EndpointMismatch,
    #[error("a path must contain at least one node")]
    EmptyPath,
}

/// Pairwise dissimilarity lookup over an indexed point set.
///
/// Implemented by [`FiniteMetricSpace`], [`DenseWeights`], and by lazy
/// sources such as coordinate embeddings. Values need not satisfy the metric
/// properties; consumers that require them say so.
pub trait Dissimilarity {
    fn len(&self) -> usize;
    fn at(&self, x: NodeId, y: NodeId) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A finite, undirected, connected graph with strictly positive weights.
///
/// Stored as an adjacency list plus a canonical `(u, v, w)` edge list with
/// `u < v`, sorted. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    n: usize,
    adj: Vec<Vec<(NodeId, f64)>>,
    edges: Vec<(NodeId, NodeId, f64)>,
}

impl Network {
    /// Validate raw `(node, node, weight)` triples into a [`Network`].
    ///
    /// Symmetric duplicates `(x, y, w)` / `(y, x, w)` with equal weight are
    /// merged; duplicates with conflicting weights are rejected. The graph
    /// must be connected, free of self-loops, and strictly positively
    /// weighted.
    pub fn from_triples(n: usize, triples: &[(NodeId, NodeId, f64)]) -> Result<Self, NetworkError> {
        if n == 0 {
            return Err(NetworkError::Empty);
        }
        let mut weights: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
        let mut edges: Vec<(NodeId, NodeId, f64)> = Vec::new();
        for &(x, y, w) in triples {
            for node in [x, y] {
                if node >= n {
                    return Err(NetworkError::NodeOutOfRange { node, n });
                }
            }
            if x == y {
                return Err(NetworkError::SelfLoop(x));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(NetworkError::NonPositiveWeight { x, y, w });
            }
            let (u, v) = if x < y { (x, y) } else { (y, x) };
            if let Some(&(_, w1)) = weights[u].iter().find(|&&(t, _)| t == v) {
                if w1 != w {
                    return Err(NetworkError::AsymmetricWeight { x: u, y: v, w1, w2: w });
                }
                continue; // exact duplicate, merge
            }
            weights[u].push((v, w));
            edges.push((u, v, w));
        }
        edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let mut adj: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for list in &mut adj {
            list.sort_by(|a, b| a.0.cmp(&b.0));
        }

        let net = Network { n, adj, edges };
        let components = net.component_sizes();
        if components.len() > 1 {
            return Err(NetworkError::Disconnected(components));
        }
        Ok(net)
    }

    /// Build the complete network `(X, X×X, d)` that encodes a metric space.
    pub fn from_metric(m: &FiniteMetricSpace) -> Self {
        let n = m.len();
        let mut triples = Vec::with_capacity(n * (n - 1) / 2);
        for x in 0..n {
            for y in (x + 1)..n {
                triples.push((x, y, m.dist(x, y)));
            }
        }
        Self::from_triples(n, &triples).expect("a metric space is a valid complete network")
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, `(u, v, w)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> &[(NodeId, NodeId, f64)] {
        &self.edges
    }

    /// Neighbors of `x` with edge weights, ascending by node id.
    pub fn neighbors(&self, x: NodeId) -> &[(NodeId, f64)] {
        &self.adj[x]
    }

    /// Weight of the edge `(x, y)` in either orientation, if present.
    pub fn weight(&self, x: NodeId, y: NodeId) -> Option<f64> {
        self.adj
            .get(x)?
            .iter()
            .find(|&&(t, _)| t == y)
            .map(|&(_, w)| w)
    }

    /// Whether every unordered node pair is an edge.
    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// Dense symmetric weight matrix; `None` unless the network is complete.
    pub fn dense_weights(&self) -> Option<DenseWeights> {
        if !self.is_complete() {
            return None;
        }
        let mut w = vec![0.0; self.n * self.n];
        for &(u, v, weight) in &self.edges {
            w[u * self.n + v] = weight;
            w[v * self.n + u] = weight;
        }
        Some(DenseWeights { n: self.n, w })
    }

    /// Largest edge weight. At least one edge exists whenever `n > 1`.
    pub fn max_weight(&self) -> f64 {
        self.edges.iter().map(|&(_, _, w)| w).fold(0.0, f64::max)
    }

    /// Smallest edge weight, `+inf` for the single-node network.
    pub fn min_weight(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(_, _, w)| w)
            .fold(f64::INFINITY, f64::min)
    }

    fn component_sizes(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut sizes = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut size = 0usize;
            while let Some(x) = stack.pop() {
                size += 1;
                for &(y, _) in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }
}

/// An ordered node sequence `[x0, ..., xl]`, `l >= 0`.
///
/// The trivial path at `x` is the one-element sequence `[x]` and has length
/// zero. Validity against a particular network is checked by the operations
/// that consume paths, not stored in the type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    nodes: Vec<NodeId>,
}

impl Path {
    pub fn new(nodes: Vec<NodeId>) -> Result<Self, PathError> {
        if nodes.is_empty() {
            return Err(PathError::EmptyPath);
        }
        Ok(Path { nodes })
    }

    /// The trivial path `[x]`.
    pub fn trivial(x: NodeId) -> Self {
        Path { nodes: vec![x] }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn start(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn end(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    /// Number of links, one less than the node count.
    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// Sum of edge weights along `path`, accumulated front to back.
///
/// The trivial path has length `0.0`. Fails with `InvalidPath(i)` if the
/// `i`-th step is not an edge of `g`.
pub fn path_length(g: &Network, path: &Path) -> Result<f64, PathError> {
    let nodes = path.nodes();
    let mut total = 0.0;
    for (i, pair) in nodes.windows(2).enumerate() {
        match g.weight(pair[0], pair[1]) {
            Some(w) => total += w,
            None => return Err(PathError::InvalidPath(i)),
        }
    }
    Ok(total)
}

/// Concatenate two paths sharing an endpoint; the shared node appears once.
///
/// Lengths add: `path_length(p1 ⊕ p2) = path_length(p1) + path_length(p2)`.
pub fn concatenate(p1: &Path, p2: &Path) -> Result<Path, PathError> {
    if p1.end() != p2.start() {
        return Err(PathError::EndpointMismatch);
    }
    let mut nodes = p1.nodes.clone();
    nodes.extend_from_slice(&p2.nodes[1..]);
    Ok(Path { nodes })
}

/// A complete distance function on `n` points satisfying symmetry, identity
/// of indiscernibles, and the triangle inequality (the latter up to
/// [`triangle_eps`]).
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>,
}

impl FiniteMetricSpace {
    /// Validate a dense row-major matrix into a metric space.
    pub fn new(n: usize, dist: Vec<f64>) -> Result<Self, MetricViolation> {
        let m = Self::from_matrix_unchecked(n, dist);
        m.check()?;
        Ok(m)
    }

    /// Wrap a matrix without checking the metric properties.
    ///
    /// Used for candidate projections that may or may not be metric; run
    /// [`FiniteMetricSpace::check`] (or `projection::is_metric`) to find out.
    pub fn from_matrix_unchecked(n: usize, dist: Vec<f64>) -> Self {
        assert_eq!(dist.len(), n * n, "matrix must be n*n");
        FiniteMetricSpace { n, dist }
    }

    pub fn dist(&self, x: NodeId, y: NodeId) -> f64 {
        self.dist[x * self.n + y]
    }

    pub fn matrix(&self) -> &[f64] {
        &self.dist
    }

    /// Largest entry of the matrix.
    pub fn max_dist(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// First metric-property violation in deterministic scan order, if any.
    ///
    /// Symmetry and identity are checked exactly; the triangle inequality is
    /// allowed [`triangle_eps`] of slack since shortest-path sums accumulate
    /// rounding.
    pub fn check(&self) -> Result<(), MetricViolation> {
        let n = self.n;
        let eps = triangle_eps(self.max_dist());
        for x in 0..n {
            if self.dist(x, x) != 0.0 {
                return Err(MetricViolation::Identity { x, y: x });
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if self.dist(x, y) != self.dist(y, x) {
                    return Err(MetricViolation::Symmetry { x, y });
                }
                if !(self.dist(x, y) > 0.0) {
                    return Err(MetricViolation::Identity { x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.dist(x, y) > self.dist(x, z) + self.dist(z, y) + eps {
                        return Err(MetricViolation::Triangle { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }
}

impl Dissimilarity for FiniteMetricSpace {
    fn len(&self) -> usize {
        self.n
    }

    fn at(&self, x: NodeId, y: NodeId) -> f64 {
        self.dist(x, y)
    }
}

/// Witness for a failed metric property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricViolation {
    #[error("symmetry violated at ({x}, {y})")]
    Symmetry { x: NodeId, y: NodeId },
    #[error("identity violated at ({x}, {y})")]
    Identity { x: NodeId, y: NodeId },
    #[error("triangle inequality violated on ({x}, {y}, {z})")]
    Triangle { x: NodeId, y: NodeId, z: NodeId },
}

/// Dense symmetric dissimilarity matrix, the common form of a complete
/// weighted structure. Not necessarily metric.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseWeights {
    n: usize,
    w: Vec<f64>,
}

impl DenseWeights {
    pub fn new(n: usize, w: Vec<f64>) -> Self {
        assert_eq!(w.len(), n * n, "matrix must be n*n");
        DenseWeights { n, w }
    }

    /// Build from a pairwise function, symmetrizing by evaluating `x < y`.
    pub fn from_fn(n: usize, mut f: impl FnMut(NodeId, NodeId) -> f64) -> Self {
        let mut w = vec![0.0; n * n];
        for x in 0..n {
            for y in (x + 1)..n {
                let v = f(x, y);
                w[x * n + y] = v;
                w[y * n + x] = v;
            }
        }
        DenseWeights { n, w }
    }
}

impl From<&FiniteMetricSpace> for DenseWeights {
    fn from(m: &FiniteMetricSpace) -> Self {
        DenseWeights {
            n: m.n,
            w: m.dist.clone(),
        }
    }
}

impl Dissimilarity for DenseWeights {
    fn len(&self) -> usize {
        self.n
    }

    fn at(&self, x: NodeId, y: NodeId) -> f64 {
        self.w[x * self.n + y]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_network() -> Network {
        Network::from_triples(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn minimal_connected_graph_validates() {
        let g = path_network();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.weight(1, 0), Some(1.0));
    }

    #[test]
    fn self_loop_rejected() {
        let err = Network::from_triples(1, &[(0, 0, 1.0)]).unwrap_err();
        assert_eq!(err, NetworkError::SelfLoop(0));
    }

    #[test]
    fn isolated_node_reported_with_component_sizes() {
        let err = Network::from_triples(3, &[(0, 1, 1.0)]).unwrap_err();
        assert_eq!(err, NetworkError::Disconnected(vec![2, 1]));
    }

    #[test]
    fn non_positive_and_out_of_range_rejected() {
        assert!(matches!(
            Network::from_triples(2, &[(0, 1, 0.0)]),
            Err(NetworkError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            Network::from_triples(2, &[(0, 1, -3.0)]),
            Err(NetworkError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            Network::from_triples(2, &[(0, 2, 1.0)]),
            Err(NetworkError::NodeOutOfRange { node: 2, n: 2 })
        ));
    }

    #[test]
    fn symmetric_duplicates_merge_conflicts_error() {
        let g = Network::from_triples(2, &[(0, 1, 2.5), (1, 0, 2.5)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        let err = Network::from_triples(2, &[(0, 1, 2.5), (1, 0, 3.0)]).unwrap_err();
        assert_eq!(
            err,
            NetworkError::AsymmetricWeight {
                x: 0,
                y: 1,
                w1: 2.5,
                w2: 3.0
            }
        );
    }

    #[test]
    fn path_length_sums_weights() {
        // The two-edge example graph: (x2,x3)=1, (x3,x1)=2 with x1=0, x2=1, x3=2.
        let g = Network::from_triples(3, &[(1, 2, 1.0), (2, 0, 2.0)]).unwrap();
        let p = Path::new(vec![1, 2, 0]).unwrap();
        assert_eq!(path_length(&g, &p).unwrap(), 3.0);
    }

    #[test]
    fn trivial_path_has_length_zero() {
        let g = path_network();
        assert_eq!(path_length(&g, &Path::trivial(2)).unwrap(), 0.0);
    }

    #[test]
    fn four_cycle_path_length() {
        let g = Network::from_triples(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])
            .unwrap();
        let p = Path::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(path_length(&g, &p).unwrap(), 3.0);
    }

    #[test]
    fn invalid_step_reports_index() {
        let g = path_network();
        let p = Path::new(vec![0, 2]).unwrap();
        assert_eq!(path_length(&g, &p), Err(PathError::InvalidPath(0)));
    }

    #[test]
    fn concatenate_joins_at_shared_node() {
        let p1 = Path::new(vec![0, 1]).unwrap();
        let p2 = Path::new(vec![1, 2]).unwrap();
        assert_eq!(concatenate(&p1, &p2).unwrap().nodes(), &[0, 1, 2]);
        assert_eq!(
            concatenate(&p1, &Path::trivial(0)),
            Err(PathError::EndpointMismatch)
        );
    }

    #[test]
    fn concatenate_trivial_prefix_is_identity() {
        let p = Path::new(vec![3, 1, 0]).unwrap();
        assert_eq!(concatenate(&Path::trivial(3), &p).unwrap(), p);
    }

    #[test]
    fn concatenate_lengths_add() {
        let g = Network::from_triples(3, &[(1, 2, 1.0), (2, 0, 2.0)]).unwrap();
        let p1 = Path::new(vec![1, 2]).unwrap();
        let p2 = Path::new(vec![2, 0]).unwrap();
        let joined = concatenate(&p1, &p2).unwrap();
        assert_eq!(joined.nodes(), &[1, 2, 0]);
        assert_eq!(path_length(&g, &joined).unwrap(), 3.0);
    }

    #[test]
    fn metric_space_checks_reject_planted_violations() {
        // triangle: 5 > 1 + 1
        let m = FiniteMetricSpace::from_matrix_unchecked(
            3,
            vec![0.0, 5.0, 1.0, 5.0, 0.0, 1.0, 1.0, 1.0, 0.0],
        );
        assert_eq!(
            m.check(),
            Err(MetricViolation::Triangle { x: 0, y: 1, z: 2 })
        );
        // identity: off-diagonal zero
        let m = FiniteMetricSpace::from_matrix_unchecked(
            2,
            vec![0.0, 0.0, 0.0, 0.0],
        );
        assert_eq!(m.check(), Err(MetricViolation::Identity { x: 0, y: 1 }));
        // symmetry
        let m = FiniteMetricSpace::from_matrix_unchecked(
            2,
            vec![0.0, 1.0, 2.0, 0.0],
        );
        assert_eq!(m.check(), Err(MetricViolation::Symmetry { x: 0, y: 1 }));
    }

    #[test]
    fn dense_weights_roundtrip_complete_network() {
        let g = Network::from_triples(3, &[(0, 1, 1.0), (0, 2, 2.0), (1, 2, 3.0)]).unwrap();
        assert!(g.is_complete());
        let w = g.dense_weights().unwrap();
        assert_eq!(w.at(2, 1), 3.0);
        assert!(path_network().dense_weights().is_none());
    }
}
