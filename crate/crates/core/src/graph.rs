//! Simple undirected graphs and their elementary invariants.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Vertex = usize;
pub type EdgeId = usize;

/// An immutable simple graph on vertices `0..vertex_count`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; the
/// position of an edge in that order is its [`EdgeId`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    // adj[v] sorted by neighbour; incident[v][i] is the id of edge (v, adj[v][i])
    adj: Vec<Vec<Vertex>>,
    incident: Vec<Vec<EdgeId>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges and out-of-range ids.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidVertex { vertex: u.max(v), vertex_count: n });
            }
            if u == v {
                return Err(Error::Loop { vertex: u });
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(Error::ParallelEdge { u: w[0].0, v: w[0].1 });
            }
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adj: Vec<Vec<(Vertex, EdgeId)>> = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let mut nbrs = Vec::with_capacity(n);
        let mut incident = Vec::with_capacity(n);
        for mut list in adj {
            list.sort_unstable();
            nbrs.push(list.iter().map(|&(w, _)| w).collect());
            incident.push(list.iter().map(|&(_, e)| e).collect());
        }
        Graph { n, edges, adj: nbrs, incident }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Sorted neighbours of `v`. Panics on an invalid id.
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Ids of the edges at `v`, aligned with [`Graph::neighbours`].
    pub fn incident_edges(&self, v: Vertex) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).ok().map(|i| self.incident[a][i])
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, vertex_count: self.n })
        }
    }

    /// `|N(v)|`.
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    /// Degree without the bounds check, for hot loops over known-valid ids.
    #[inline]
    pub fn deg(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Δ(G); 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// δ(G); 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Number of vertices of degree exactly `d` (the n_i count).
    pub fn count_degree(&self, d: usize) -> usize {
        self.adj.iter().filter(|a| a.len() == d).count()
    }

    pub fn neighbour_degree_counts(&self, v: Vertex) -> Result<DegreeProfile> {
        self.check_vertex(v)?;
        let mut histogram = BTreeMap::new();
        for &w in &self.adj[v] {
            *histogram.entry(self.deg(w)).or_insert(0) += 1;
        }
        Ok(DegreeProfile { vertex: v, degree: self.deg(v), histogram })
    }

    /// Number of neighbours of `v` with degree at most `d`.
    pub fn neighbours_at_most(&self, v: Vertex, d: usize) -> usize {
        self.adj[v].iter().filter(|&&w| self.deg(w) <= d).count()
    }

    /// Number of neighbours of `v` with degree exactly `d`.
    pub fn neighbours_exactly(&self, v: Vertex, d: usize) -> usize {
        self.adj[v].iter().filter(|&&w| self.deg(w) == d).count()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[x] + 1 >= b) {
                    break;
                }
                for &y in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// `|E(self)| + |V(self)| < |E(other)| + |V(other)|`.
    pub fn is_smaller(&self, other: &Graph) -> bool {
        self.n + self.edges.len() < other.n + other.edges.len()
    }

    /// A new graph on the same vertex set with the given edges removed.
    /// Every listed edge must be present.
    pub fn without_edges(&self, removed: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut drop = vec![false; self.edges.len()];
        for &(u, v) in removed {
            let id = self.edge_id(u, v).ok_or(Error::MissingEdge { u, v })?;
            drop[id] = true;
        }
        let kept = self.edges.iter().zip(&drop).filter(|(_, &d)| !d).map(|(&e, _)| e).collect();
        Ok(Self::from_sorted_unique(self.n, kept))
    }

    /// A new graph with `extra` edges added.
    pub fn with_edges(&self, extra: &[(Vertex, Vertex)]) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.iter().copied().chain(extra.iter().copied()))
    }

    /// Subgraph induced by `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Graph::from_edges(keep.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Number of edges with both ends in the vertex set marked by `mask`.
    pub fn induced_edge_count(&self, mask: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| mask[u] && mask[v]).count()
    }

    /// Graph with vertices renamed by `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabelling preserves simplicity")
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    // Named families.

    pub fn path(n: usize) -> Graph {
        Self::from_sorted_unique(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Self::from_sorted_unique(n, edges)
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted_unique(n, edges)
    }

    /// K_{1,leaves} with centre 0.
    pub fn star(leaves: usize) -> Graph {
        Self::from_sorted_unique(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::from_sorted_unique(a + b, edges)
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).expect("petersen graph is simple")
    }
}

/// Neighbour-degree statistics of one vertex: the per-vertex n_{i⁻}(v) and
/// n_{i⁺}(v) counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub vertex: Vertex,
    pub degree: usize,
    /// neighbour degree → number of neighbours with that degree
    pub histogram: BTreeMap<usize, usize>,
}

impl DegreeProfile {
    /// Neighbours of degree ≤ `i`.
    pub fn n_at_most(&self, i: usize) -> usize {
        self.histogram.range(..=i).map(|(_, c)| c).sum()
    }

    /// Neighbours of degree ≥ `i`.
    pub fn n_at_least(&self, i: usize) -> usize {
        self.histogram.range(i..).map(|(_, c)| c).sum()
    }

    /// Neighbours of degree exactly `i`.
    pub fn n_exactly(&self, i: usize) -> usize {
        self.histogram.get(&i).copied().unwrap_or(0)
    }
}

/// `2g / (g − 2)`, the mad bound for planar graphs of girth `g`.
pub fn planar_girth_mad_bound(girth: usize) -> Result<Rational> {
    if girth < 3 {
        return Err(Error::Domain(format!("girth must be at least 3, got {girth}")));
    }
    let g = girth as i64;
    Ok(Rational::new(2 * g, g - 2))
}
