//! Independent oracles and instance generators shared by the integration
//! tests. Nothing here calls the code under test except to build graphs.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use tnsd::configurations::{detect, Kind, Occurrence};
use tnsd::graph::Vertex;
use tnsd::rational::Rational;
use tnsd::Graph;

/// mad by enumerating every non-empty vertex subset.
pub fn brute_mad(g: &Graph) -> Rational {
    let n = g.vertex_count();
    assert!(n <= 16, "subset enumeration is exponential");
    let mut best = Rational::zero();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as i64;
        let inside = g.edges().iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count() as i64;
        let d = Rational::new(2 * inside, size);
        if d > best {
            best = d;
        }
    }
    best
}

/// Direct check of the tnsd conditions from the edge list.
pub fn naive_is_tnsd(g: &Graph, vertex: &[u32], edge: &[u32]) -> bool {
    let edges = g.edges();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if vertex[u] == vertex[v] || edge[i] == vertex[u] || edge[i] == vertex[v] {
            return false;
        }
        for (j, &(a, b)) in edges.iter().enumerate().skip(i + 1) {
            if edge[i] == edge[j] && (a == u || a == v || b == u || b == v) {
                return false;
            }
        }
    }
    let mut sum: Vec<u32> = vertex.to_vec();
    for (i, &(u, v)) in edges.iter().enumerate() {
        sum[u] += edge[i];
        sum[v] += edge[i];
    }
    edges.iter().all(|&(u, v)| sum[u] != sum[v])
}

/// Whether some assignment of `1..=k` to every element is tnsd, by trying
/// all `k^(n+m)` of them.
pub fn naive_colourable(g: &Graph, k: u32) -> bool {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let total = n + m;
    let mut digits = vec![1u32; total];
    loop {
        if naive_is_tnsd(g, &digits[..n], &digits[n..]) {
            return true;
        }
        let mut i = 0;
        while i < total && digits[i] == k {
            digits[i] = 1;
            i += 1;
        }
        if i == total {
            return false;
        }
        digits[i] += 1;
    }
}

/// Least `k` with a tnsd `k`-colouring, by exhaustive enumeration.
pub fn naive_index(g: &Graph) -> u32 {
    (1..).find(|&k| naive_colourable(g, k)).expect("some palette suffices")
}

/// Every graph (labelled) with `|V| + |E| ≤ budget` and at least one vertex,
/// up to the relabelling-free enumeration of edge subsets.
pub fn small_labelled_graphs(budget: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=budget {
        let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
        let max_m = budget - n;
        if pairs.len() > 20 {
            // only subsets of size ≤ max_m are needed
            for m in 0..=max_m.min(pairs.len()) {
                for combo in combinations(pairs.len(), m) {
                    out.push(Graph::from_edges(n, combo.iter().map(|&i| pairs[i])).unwrap());
                }
            }
            continue;
        }
        for mask in 0u32..(1 << pairs.len()) {
            if mask.count_ones() as usize <= max_m {
                let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
                out.push(Graph::from_edges(n, edges).unwrap());
            }
        }
    }
    out
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// One row of the networkx atlas corpus.
pub struct AtlasRow {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub max_degree: usize,
    /// `None` for forests.
    pub girth: Option<usize>,
}

pub fn atlas() -> Vec<AtlasRow> {
    let text = include_str!("../data/atlas.txt");
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            let num = |i: usize| f[i].parse::<usize>().unwrap();
            AtlasRow {
                graph6: f[0].to_string(),
                n: num(1),
                m: num(2),
                connected: num(3) == 1,
                max_degree: num(4),
                girth: Some(num(5)).filter(|&g| g > 0),
            }
        })
        .collect()
}

/// Graphs with at most `max_n` vertices and arbitrary edge sets.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for b in 1..n {
                for a in 0..b {
                    if bits[i] {
                        edges.push((a, b));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Sparse graphs: at most `2n` random edges.
pub fn arb_sparse_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |pairs| {
            let set: BTreeSet<(Vertex, Vertex)> =
                pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
            Graph::from_edges(n, set).unwrap()
        })
    })
}

/// A graph built around vertex 0 so that `kind` occurs there with every
/// other uncoloured witness adjacent only to `0` and to high-degree hubs.
pub struct Planted {
    pub graph: Graph,
    pub occurrence: Occurrence,
}

fn witness(rng: &mut impl Rng, max_degree: usize) -> Option<usize> {
    Some(rng.gen_range(1..=max_degree))
}

/// Spoke degrees of the anchor: `Some(d)` for a witness of degree `d`,
/// `None` for a hub.
fn spokes(kind: Kind, rng: &mut impl Rng) -> (Vec<Option<usize>>, usize, usize) {
    let k = 8;
    let (spokes, hub_lo, hub_hi) = match kind {
        Kind::C1 => {
            let mut s = vec![witness(rng, k / 2 + 1)];
            if rng.gen_bool(0.5) {
                s.push(None);
            }
            (s, 6, k)
        }
        Kind::C2 | Kind::C3 => {
            let (cap_v, cap_u) = if kind == Kind::C2 { (4, 4) } else { (3, 5) };
            let dv = rng.gen_range(1..=cap_v);
            let mut s = vec![witness(rng, cap_u)];
            s.extend(std::iter::repeat_n(None, dv - 1));
            (s, 6, k)
        }
        Kind::C4 => (vec![Some(4), Some(4), Some(4), None, None], 6, k),
        Kind::C5 => (vec![witness(rng, 3), witness(rng, 4), None, None, None, None], 6, k),
        Kind::C6 => (vec![witness(rng, 2), witness(rng, 3), witness(rng, 4), None, None, None, None], 6, k),
        Kind::C7 => {
            (vec![witness(rng, 2), witness(rng, 3), witness(rng, 3), witness(rng, 4), None, None, None, None], 6, k)
        }
        Kind::C8 => {
            let d = rng.gen_range(3..=k);
            let mut s: Vec<Option<usize>> = (0..d - 2).map(|_| witness(&mut *rng, 3)).collect();
            s.push(witness(rng, 4));
            s.push(None);
            (s, 6.min(d), d)
        }
        Kind::NeighbourCount => loop {
            let d = rng.gen_range(1..=k);
            let alpha = rng.gen_range(0..=d);
            let beta = rng.gen_range(0..=d - alpha);
            let gamma = d - alpha - beta;
            if alpha + beta >= 1 && gamma < alpha + 1 + (alpha + beta) * (k - d) {
                let mut s: Vec<Option<usize>> = (0..alpha).map(|_| witness(&mut *rng, 2)).collect();
                s.extend((0..beta).map(|_| Some(3)));
                s.extend(std::iter::repeat_n(None, gamma));
                break (s, 6, k);
            }
        },
        Kind::LowNeighbours => panic!("not a reducible kind"),
    };
    (spokes, hub_lo, hub_hi)
}

pub fn planted(kind: Kind, rng: &mut impl Rng) -> Planted {
    const HUBS: usize = 9;
    'attempt: loop {
        let (mut spokes, hub_lo, hub_hi) = spokes(kind, rng);
        spokes.shuffle(rng);
        let witnesses = spokes.iter().filter(|s| s.is_some()).count();
        let n = 1 + witnesses + HUBS;
        let hub0 = 1 + witnesses;
        let mut deg = vec![0usize; n];
        let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        let add = |a: Vertex, b: Vertex, edges: &mut BTreeSet<(Vertex, Vertex)>, deg: &mut Vec<usize>| {
            if edges.insert((a.min(b), a.max(b))) {
                deg[a] += 1;
                deg[b] += 1;
            }
        };
        let mut hubs: Vec<Vertex> = (hub0..n).collect();
        hubs.shuffle(rng);
        let mut next_hub = hubs.iter().copied();
        let mut next_witness = 1;
        let mut plan = Vec::new();
        for s in &spokes {
            match s {
                Some(d) => {
                    add(0, next_witness, &mut edges, &mut deg);
                    plan.push((next_witness, *d));
                    next_witness += 1;
                }
                None => add(0, next_hub.next().expect("enough hubs"), &mut edges, &mut deg),
            }
        }
        for (x, d) in plan {
            let mut pool: Vec<Vertex> = (hub0..n).filter(|&h| deg[h] < hub_hi).collect();
            pool.shuffle(rng);
            if pool.len() < d - 1 {
                continue 'attempt;
            }
            for &h in &pool[..d - 1] {
                add(x, h, &mut edges, &mut deg);
            }
        }
        for _ in 0..400 {
            let low: Vec<Vertex> = (hub0..n).filter(|&h| deg[h] < hub_lo).collect();
            if low.is_empty() {
                break;
            }
            let a = low[rng.gen_range(0..low.len())];
            let b = rng.gen_range(hub0..n);
            if a != b && deg[b] < hub_hi && !edges.contains(&(a.min(b), a.max(b))) {
                add(a, b, &mut edges, &mut deg);
            }
        }
        if (hub0..n).any(|h| deg[h] < hub_lo) {
            continue;
        }
        let graph = Graph::from_edges(n, edges).unwrap();
        if graph.max_degree() > 8 {
            continue;
        }
        let found = detect(&graph, 8, kind).unwrap().into_iter().find(|o| o.anchor == 0);
        if let Some(occurrence) = found {
            return Planted { graph, occurrence };
        }
    }
}
