//! Exact backtracking search for tnsd colourings and χ″_Σ.
//!
//! Elements are the vertices followed by the edges. At every node the
//! uncoloured element with the fewest admissible colours is branched on
//! (ties: most uncoloured conflicting elements, then lowest index).
//! Admissible colours exclude those of coloured conflicting elements, and,
//! when the element is the last uncoloured one around some vertex `x`, every
//! colour that would make `s(x)` equal to an already final neighbour sum.

use std::time::{Duration, Instant};

use crate::colouring::{Colour, TotalColouring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Search limits. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n), time_limit: None }
    }
}

/// Three-valued answer of [`find_tnsd`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(TotalColouring),
    /// The search space was exhausted: no tnsd colouring with this palette.
    Infeasible,
    /// The budget ran out first.
    Indeterminate,
}

impl SearchOutcome {
    pub fn colouring(&self) -> Option<&TotalColouring> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Looks for a tnsd colouring of `g` with colours `1..=k`.
pub fn find_tnsd(g: &Graph, k: Colour, budget: Budget) -> Result<SearchOutcome> {
    find_tnsd_with_stats(g, k, budget).map(|(o, _)| o)
}

pub fn find_tnsd_with_stats(g: &Graph, k: Colour, budget: Budget) -> Result<(SearchOutcome, SearchStats)> {
    if k == 0 {
        return Err(Error::Domain("palette size must be at least 1".into()));
    }
    if k > 64 {
        return Err(Error::Domain(format!("palette size {k} exceeds the solver limit of 64")));
    }
    let mut s = Search::new(g, k, budget);
    let outcome = match s.run() {
        Step::Found => SearchOutcome::Found(s.colouring()),
        Step::Failed => SearchOutcome::Infeasible,
        Step::OutOfBudget => SearchOutcome::Indeterminate,
    };
    Ok((outcome, SearchStats { nodes: s.nodes }))
}

/// Result of [`tnsd_index`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexResult {
    Exact {
        k: Colour,
        witness: TotalColouring,
    },
    /// Budget ran out: `lower ≤ χ″_Σ ≤ upper` (upper unknown if `None`).
    Bounds {
        lower: Colour,
        upper: Option<(Colour, TotalColouring)>,
    },
}

impl IndexResult {
    pub fn exact(&self) -> Option<Colour> {
        match self {
            IndexResult::Exact { k, .. } => Some(*k),
            IndexResult::Bounds { .. } => None,
        }
    }
}

/// χ″_Σ(G) by ascending search from Δ(G) + 1. A graph without edges gets
/// index 1 (a single colour on every vertex is vacuously tnsd).
pub fn tnsd_index(g: &Graph, budget: Budget) -> Result<IndexResult> {
    if g.vertex_count() == 0 {
        return Err(Error::Domain("tnsd index of the empty graph".into()));
    }
    let start = g.max_degree() as Colour + 1;
    let mut lower = start;
    let mut undecided = false;
    for k in start..=64 {
        match find_tnsd(g, k, budget)? {
            SearchOutcome::Found(c) => {
                return Ok(if undecided {
                    IndexResult::Bounds { lower, upper: Some((k, c)) }
                } else {
                    IndexResult::Exact { k, witness: c }
                });
            }
            SearchOutcome::Infeasible => {
                if !undecided {
                    lower = k + 1;
                }
            }
            SearchOutcome::Indeterminate => undecided = true,
        }
    }
    Ok(IndexResult::Bounds { lower, upper: None })
}

enum Step {
    Found,
    Failed,
    OutOfBudget,
}

struct Search<'a> {
    g: &'a Graph,
    k: Colour,
    full: u64,
    n: usize,
    // conflict lists over elements: vertex v is element v, edge e is n + e
    conflicts: Vec<Vec<usize>>,
    colour: Vec<Colour>,
    partial: Vec<i64>,
    remaining: Vec<usize>,
    budget: Budget,
    started: Instant,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: Colour, budget: Budget) -> Self {
        let n = g.vertex_count();
        let total = n + g.edge_count();
        let mut conflicts = vec![Vec::new(); total];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let id = n + e;
            conflicts[u].push(v);
            conflicts[v].push(u);
            for w in [u, v] {
                conflicts[id].push(w);
                conflicts[w].push(id);
            }
        }
        for v in g.vertices() {
            let inc = g.incident_edges(v);
            for (i, &a) in inc.iter().enumerate() {
                for &b in &inc[i + 1..] {
                    conflicts[n + a].push(n + b);
                    conflicts[n + b].push(n + a);
                }
            }
        }
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        Search {
            g,
            k,
            full,
            n,
            conflicts,
            colour: vec![0; total],
            partial: vec![0; n],
            remaining: g.vertices().map(|v| g.deg(v) + 1).collect(),
            budget,
            started: Instant::now(),
            nodes: 0,
        }
    }

    fn colouring(&self) -> TotalColouring {
        let vs = self.colour[..self.n].iter().map(|&c| Some(c)).collect();
        let es = self.colour[self.n..].iter().map(|&c| Some(c)).collect();
        TotalColouring::from_parts(self.k, vs, es).expect("solver colours lie in the palette")
    }

    /// Vertices whose sum the element contributes to.
    fn touched(&self, el: usize) -> (usize, Option<usize>) {
        if el < self.n {
            (el, None)
        } else {
            let (u, v) = self.g.edge(el - self.n);
            (u, Some(v))
        }
    }

    fn admissible(&self, el: usize) -> u64 {
        let mut mask = self.full;
        for &o in &self.conflicts[el] {
            let c = self.colour[o];
            if c != 0 {
                mask &= !(1u64 << (c - 1));
            }
        }
        if mask == 0 {
            return 0;
        }
        let (a, b) = self.touched(el);
        for x in std::iter::once(a).chain(b) {
            if self.remaining[x] != 1 {
                continue;
            }
            // the other endpoint when el is an edge at x
            let other = b.map(|b| if x == a { b } else { a });
            for &y in self.g.neighbours(x) {
                if self.remaining[y] == 0 {
                    let c = self.partial[y] - self.partial[x];
                    if (1..=self.k as i64).contains(&c) {
                        mask &= !(1u64 << (c - 1));
                    }
                } else if Some(y) == other && self.remaining[y] == 1 && self.partial[x] == self.partial[y] {
                    // el closes both sums and adds the same colour to each
                    return 0;
                }
            }
        }
        mask
    }

    fn out_of_budget(&self) -> bool {
        if self.budget.max_nodes.is_some_and(|m| self.nodes >= m) {
            return true;
        }
        if let Some(limit) = self.budget.time_limit {
            if self.nodes.is_multiple_of(1024) && self.started.elapsed() >= limit {
                return true;
            }
        }
        false
    }

    fn apply(&mut self, el: usize, c: Colour) {
        self.colour[el] = c;
        let (a, b) = self.touched(el);
        for x in std::iter::once(a).chain(b) {
            self.partial[x] += c as i64;
            self.remaining[x] -= 1;
        }
    }

    fn undo(&mut self, el: usize, c: Colour) {
        self.colour[el] = 0;
        let (a, b) = self.touched(el);
        for x in std::iter::once(a).chain(b) {
            self.partial[x] -= c as i64;
            self.remaining[x] += 1;
        }
    }

    /// Sum distinctness around the vertices touched by `el` once final.
    fn sums_ok(&self, el: usize) -> bool {
        let (a, b) = self.touched(el);
        for x in std::iter::once(a).chain(b) {
            if self.remaining[x] != 0 {
                continue;
            }
            for &y in self.g.neighbours(x) {
                if self.remaining[y] == 0 && self.partial[y] == self.partial[x] {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self) -> Step {
        self.nodes += 1;
        if self.out_of_budget() {
            return Step::OutOfBudget;
        }
        let mut best: Option<(usize, u64, u32, usize)> = None;
        for el in 0..self.colour.len() {
            if self.colour[el] != 0 {
                continue;
            }
            let mask = self.admissible(el);
            let count = mask.count_ones();
            if count == 0 {
                return Step::Failed;
            }
            let open = self.conflicts[el].iter().filter(|&&o| self.colour[o] == 0).count();
            let better = match best {
                None => true,
                Some((_, _, bc, bo)) => count < bc || (count == bc && open > bo),
            };
            if better {
                best = Some((el, mask, count, open));
            }
        }
        let Some((el, mut mask, _, _)) = best else {
            return Step::Found;
        };
        while mask != 0 {
            let c = mask.trailing_zeros() + 1;
            mask &= mask - 1;
            self.apply(el, c);
            if self.sums_ok(el) {
                match self.run() {
                    Step::Failed => {}
                    other => {
                        if matches!(other, Step::OutOfBudget) {
                            self.undo(el, c);
                        }
                        return other;
                    }
                }
            }
            self.undo(el, c);
        }
        Step::Failed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::is_tnsd;

    #[test]
    fn k2_palettes() {
        let g = Graph::complete(2);
        let c = find_tnsd(&g, 3, Budget::unlimited()).unwrap();
        assert!(is_tnsd(&g, c.colouring().unwrap()).unwrap());
        assert_eq!(find_tnsd(&g, 2, Budget::unlimited()).unwrap(), SearchOutcome::Infeasible);
    }

    #[test]
    fn small_indices() {
        assert_eq!(tnsd_index(&Graph::complete(2), Budget::unlimited()).unwrap().exact(), Some(3));
        assert_eq!(tnsd_index(&Graph::path(3), Budget::unlimited()).unwrap().exact(), Some(3));
        assert_eq!(tnsd_index(&Graph::star(3), Budget::unlimited()).unwrap().exact(), Some(4));
        assert_eq!(tnsd_index(&Graph::empty(1), Budget::unlimited()).unwrap().exact(), Some(1));
        assert_eq!(tnsd_index(&Graph::empty(4), Budget::unlimited()).unwrap().exact(), Some(1));
    }

    #[test]
    fn budget_gives_indeterminate() {
        let g = Graph::complete(6);
        let out = find_tnsd(&g, 6, Budget::nodes(10)).unwrap();
        assert_eq!(out, SearchOutcome::Indeterminate);
        match tnsd_index(&g, Budget::nodes(10)).unwrap() {
            IndexResult::Bounds { lower, .. } => assert_eq!(lower, 6),
            other => panic!("expected bounds, got {other:?}"),
        }
    }

    #[test]
    fn palette_limits() {
        let g = Graph::complete(2);
        assert!(find_tnsd(&g, 0, Budget::unlimited()).is_err());
        assert!(find_tnsd(&g, 65, Budget::unlimited()).is_err());
    }
}
