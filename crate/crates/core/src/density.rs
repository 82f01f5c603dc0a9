//! Maximum average degree via exact densest-subgraph search.
//!
//! For a guess `g = p/q` the classic max-flow construction decides whether
//! some vertex set `S` has `|E(S)|/|S| > g`: with `m = |E|`, connect the
//! source to every vertex with capacity `m·q`, every vertex `v` to the sink
//! with `m·q + 2p − d(v)·q`, and both directions of every edge with `q`. A
//! cut with source side `{s} ∪ S` costs `m·n·q + 2(p|S| − q|E(S)|)`, so a
//! denser set exists iff the minimum cut is below `m·n·q`. Distinct
//! densities `a/b` with `b ≤ n` are at least `1/(n(n−1))` apart, which bounds
//! the bisection.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rational::Rational;

/// mad(G) together with a vertex set whose induced subgraph attains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MadResult {
    pub value: Rational,
    pub witness: Vec<Vertex>,
}

/// Exact `max 2|E(H)|/|V(H)|` over non-empty subgraphs `H`.
pub fn max_average_degree(g: &Graph) -> Result<MadResult> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Domain("maximum average degree of the empty graph".into()));
    }
    let m = g.edge_count();
    if m == 0 {
        return Ok(MadResult { value: Rational::zero(), witness: vec![0] });
    }

    let all: Vec<Vertex> = g.vertices().collect();
    let mut best_set = all;
    let mut lo = Rational::new(m as i64, n as i64);
    // |E(S)| ≤ |S|(|S|−1)/2 gives density at most (n−1)/2.
    let mut hi = Rational::new(n as i64 - 1, 2);
    let gap = Rational::new(1, (n * (n - 1)) as i64);

    while &hi - &lo >= gap {
        let mid = (&lo + &hi) / Rational::from_integer(2);
        match denser_subset(g, &mid)? {
            Some(set) => {
                lo = density(g, &set);
                best_set = set;
            }
            None => hi = mid,
        }
    }
    // Certify: nothing strictly denser than the witness remains.
    if let Some(set) = denser_subset(g, &lo)? {
        return Err(Error::Inconsistency(format!(
            "densest-subgraph bisection ended at {lo} but found a denser set {set:?}"
        )));
    }
    let value = density(g, &best_set) * Rational::from_integer(2);
    Ok(MadResult { value, witness: best_set })
}

/// `|E(S)| / |S|` for a non-empty vertex set.
pub fn density(g: &Graph, set: &[Vertex]) -> Rational {
    let mut mask = vec![false; g.vertex_count()];
    for &v in set {
        mask[v] = true;
    }
    Rational::new(g.induced_edge_count(&mask) as i64, set.len() as i64)
}

/// A non-empty set with `|E(S)|/|S| > threshold`, if one exists. The set
/// returned is the source side of a minimum cut.
pub fn denser_subset(g: &Graph, threshold: &Rational) -> Result<Option<Vec<Vertex>>> {
    let n = g.vertex_count();
    let m = g.edge_count() as i64;
    let (p, q) =
        threshold.to_i64_pair().ok_or_else(|| Error::Domain(format!("density threshold {threshold} too large")))?;
    if p < 0 {
        return Ok(if n > 0 { Some(vec![0]) } else { None });
    }
    let overflow = || Error::Domain(format!("flow capacities overflow for threshold {threshold}"));
    let mq = m.checked_mul(q).ok_or_else(overflow)?;
    let source = n;
    let sink = n + 1;
    let mut net = FlowNetwork::new(n + 2);
    for v in 0..n {
        net.add_edge(source, v, mq, 0);
        let to_sink = mq.checked_add(2 * p).and_then(|c| c.checked_sub(g.deg(v) as i64 * q)).ok_or_else(overflow)?;
        net.add_edge(v, sink, to_sink, 0);
    }
    for &(u, v) in g.edges() {
        net.add_edge(u, v, q, q);
    }
    let total = mq.checked_mul(n as i64).ok_or_else(overflow)?;
    let cut = net.max_flow(source, sink);
    if cut >= total {
        return Ok(None);
    }
    let side = net.source_side(source);
    let set: Vec<Vertex> = (0..n).filter(|&v| side[v]).collect();
    if set.is_empty() {
        return Err(Error::Inconsistency("minimum cut below bound with empty source side".into()));
    }
    Ok(Some(set))
}

/// Dinic's algorithm on an adjacency-list residual network.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    /// Adds `u → v` with capacity `forward` and `v → u` with `backward`.
    fn add_edge(&mut self, u: usize, v: usize, forward: i64, backward: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(forward);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(backward);
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.head[x] {
                let y = self.to[a];
                if self.cap[a] > 0 && level[y] == usize::MAX {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        level
    }

    fn augment(&mut self, x: usize, t: usize, pushed: i64, level: &[usize], iter: &mut [usize]) -> i64 {
        if x == t {
            return pushed;
        }
        while iter[x] < self.head[x].len() {
            let a = self.head[x][iter[x]];
            let y = self.to[a];
            if self.cap[a] > 0 && level[y] == level[x] + 1 {
                let got = self.augment(y, t, pushed.min(self.cap[a]), level, iter);
                if got > 0 {
                    self.cap[a] -= got;
                    self.cap[a ^ 1] += got;
                    return got;
                }
            }
            iter[x] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0i64;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return flow;
            }
            let mut iter = vec![0; self.head.len()];
            loop {
                let f = self.augment(s, t, i64::MAX, &level, &mut iter);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    fn source_side(&self, s: usize) -> Vec<bool> {
        self.levels(s).iter().map(|&l| l != usize::MAX).collect()
    }
}

/// Convenience: mad as an `f64`, for logging only.
pub fn mad_f64(g: &Graph) -> f64 {
    max_average_degree(g).map(|r| r.value.to_f64()).unwrap_or(0.0)
}

/// `true` iff mad(G) < `bound`, decided exactly.
pub fn mad_below(g: &Graph, bound: &Rational) -> Result<bool> {
    if g.vertex_count() == 0 {
        return Ok(true);
    }
    let mad = max_average_degree(g)?;
    Ok(&mad.value < bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_values() {
        assert_eq!(max_average_degree(&Graph::cycle(5)).unwrap().value, Rational::from_integer(2));
        assert_eq!(max_average_degree(&Graph::complete(4)).unwrap().value, Rational::from_integer(3));
        assert_eq!(max_average_degree(&Graph::petersen()).unwrap().value, Rational::from_integer(3));
        assert_eq!(max_average_degree(&Graph::star(8)).unwrap().value, Rational::new(16, 9));
        assert_eq!(max_average_degree(&Graph::complete(6)).unwrap().value, Rational::from_integer(5));
    }

    #[test]
    fn edgeless_and_empty() {
        let r = max_average_degree(&Graph::empty(3)).unwrap();
        assert!(r.value.is_zero());
        assert!(matches!(max_average_degree(&Graph::empty(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn witness_attains_value() {
        // K4 plus a pendant path: the K4 is the densest part.
        let g = Graph::complete(4).with_edges(&[]).unwrap();
        let g = Graph::from_edges(7, g.edges().iter().copied().chain([(3, 4), (4, 5), (5, 6)])).unwrap();
        let r = max_average_degree(&g).unwrap();
        assert_eq!(r.value, Rational::from_integer(3));
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
        assert_eq!(density(&g, &r.witness) * Rational::from_integer(2), r.value);
    }

    #[test]
    fn disconnected_takes_max_component() {
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (6, 7), (3, 7), (3, 5)]).unwrap();
        let r = max_average_degree(&g).unwrap();
        assert_eq!(r.value, Rational::new(12, 5));
    }

    #[test]
    fn below_threshold() {
        let fourteen_thirds = Rational::new(14, 3);
        assert!(mad_below(&Graph::star(8), &fourteen_thirds).unwrap());
        assert!(!mad_below(&Graph::complete(6), &fourteen_thirds).unwrap());
    }
}
