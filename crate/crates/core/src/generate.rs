//! Graph sources: every connected graph on a few vertices up to isomorphism,
//! and seeded random graphs.
//!
//! Canonical forms refine the degree partition by neighbour colours until
//! stable, then take the largest adjacency code over all relabellings that
//! keep the refined cells in order. Both steps are invariant under
//! relabelling, so two graphs are isomorphic iff their codes agree.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest vertex count whose adjacency code fits in 64 bits.
pub const MAX_CANONICAL: usize = 11;

/// Largest `n` accepted by [`connected_graphs`].
pub const MAX_EXHAUSTIVE: usize = 9;

fn pair_bit(a: usize, b: usize) -> u64 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    1u64 << (b * (b - 1) / 2 + a)
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("key is present")).collect()
}

fn distinct(colours: &[usize]) -> usize {
    colours.iter().collect::<HashSet<_>>().len()
}

/// Stable colour refinement starting from degrees; colours are ranks, so
/// they do not depend on vertex ids.
fn refine(g: &Graph) -> Vec<usize> {
    let degrees: Vec<usize> = g.vertices().map(|v| g.deg(v)).collect();
    let mut colour = rank(&degrees);
    loop {
        let sig: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbours(v).iter().map(|&u| colour[u]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let next = rank(&sig);
        if distinct(&next) == distinct(&colour) {
            return next;
        }
        colour = next;
    }
}

/// Isomorphism-invariant adjacency code of `g`.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    let n = g.vertex_count();
    if n > MAX_CANONICAL {
        return Err(Error::Domain(format!("canonical codes need n ≤ {MAX_CANONICAL}, got {n}")));
    }
    let colour = refine(g);
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| colour[v]);
    // cell[i]: the range of slots sharing colour with order[i]
    let mut cell = vec![(0, 0); n];
    for i in 0..n {
        let start = if i > 0 && colour[order[i - 1]] == colour[order[i]] { cell[i - 1].0 } else { i };
        cell[i].0 = start;
    }
    for i in (0..n).rev() {
        cell[i].1 = if i + 1 < n && cell[i + 1].0 == cell[i].0 { cell[i + 1].1 } else { i + 1 };
    }
    let mut pos = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut best = 0u64;
    search(g, &order, &cell, 0, &mut pos, &mut used, 0, &mut best);
    Ok(best)
}

/// Places `order`'s cells position by position; `code` holds the bits of
/// edges between already placed vertices.
#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    order: &[Vertex],
    cell: &[(usize, usize)],
    slot: usize,
    pos: &mut [usize],
    used: &mut [bool],
    code: u64,
    best: &mut u64,
) {
    if slot == order.len() {
        *best = (*best).max(code);
        return;
    }
    for i in cell[slot].0..cell[slot].1 {
        let v = order[i];
        if used[v] {
            continue;
        }
        let mut next = code;
        for &u in g.neighbours(v) {
            if pos[u] != usize::MAX {
                next |= pair_bit(pos[u], slot);
            }
        }
        used[v] = true;
        pos[v] = slot;
        search(g, order, cell, slot + 1, pos, used, next, best);
        pos[v] = usize::MAX;
        used[v] = false;
    }
}

/// The graph on `n` vertices with adjacency code `code`.
pub fn from_code(n: usize, code: u64) -> Result<Graph> {
    let mut edges = Vec::new();
    for b in 1..n {
        for a in 0..b {
            if code & pair_bit(a, b) != 0 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in canonical labelling, sorted by code.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_EXHAUSTIVE {
        return Err(Error::Domain(format!("exhaustive enumeration is limited to n ≤ {MAX_EXHAUSTIVE}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level: Vec<u64> = vec![0];
    for m in 2..=n {
        let mut seen = HashSet::new();
        for &code in &level {
            let base = from_code(m - 1, code)?;
            // every connected graph has a vertex whose removal keeps it connected
            for mask in 1u32..(1 << (m - 1)) {
                let extra: Vec<(Vertex, Vertex)> =
                    (0..m - 1).filter(|&i| mask & (1 << i) != 0).map(|i| (i, m - 1)).collect();
                let grown = Graph::from_edges(m, base.edges().iter().copied().chain(extra))?;
                seen.insert(canonical_code(&grown)?);
            }
        }
        level = seen.into_iter().collect();
        level.sort_unstable();
    }
    level.into_iter().map(|code| from_code(n, code)).collect()
}

/// All connected graphs with `1..=max_n` vertices, smaller graphs first.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}

/// Uniform `G(n, m)`.
pub fn random_gnm(n: usize, m: usize, rng: &mut impl Rng) -> Result<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::Domain(format!("{m} edges do not fit on {n} vertices")));
    }
    let mut edges: Vec<(Vertex, Vertex)> = sample(rng, pairs, m)
        .into_iter()
        .map(|idx| {
            // invert idx = b(b−1)/2 + a
            let mut b = 1;
            while (b + 1) * b / 2 <= idx {
                b += 1;
            }
            (idx - b * (b - 1) / 2, b)
        })
        .collect();
    edges.sort_unstable();
    Graph::from_edges(n, edges)
}

/// `G(n, m)` with `n` uniform in `n_min..=n_max` and `m` uniform below
/// `7n/3`, so the expected average degree stays under 14/3.
pub fn random_sparse(n_min: usize, n_max: usize, rng: &mut impl Rng) -> Result<Graph> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::Domain(format!("bad vertex range {n_min}..={n_max}")));
    }
    let n = rng.gen_range(n_min..=n_max);
    let cap = ((7 * n).saturating_sub(1) / 3).min(n * (n - 1) / 2);
    let m = rng.gen_range(0..=cap);
    random_gnm(n, m, rng)
}
