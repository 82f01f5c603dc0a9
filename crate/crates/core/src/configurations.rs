//! Detection of reducible configurations.
//!
//! Degree classes: a `d⁻`-vertex has degree at most `d`, a `d⁺`-vertex at
//! least `d`. The configurations, for a palette parameter `k ≥ 8`:
//!
//! * `C1`: a 2⁻-vertex `v` adjacent to a `(⌊k/2⌋+1)⁻`-vertex `u`;
//! * `C2`: a 4⁻-vertex `v` adjacent to a 4⁻-vertex `u`;
//! * `C3`: a 3⁻-vertex `v` adjacent to a 5⁻-vertex `u`;
//! * `C4`: a 5-vertex `v` adjacent to three 4-vertices `v1, v2, v3`;
//! * `C5`: a 6-vertex `v` adjacent to a 3⁻-vertex `u` and a 4⁻-vertex `w`;
//! * `C6`: a 7-vertex `v` adjacent to a 2⁻-vertex `u`, a 3⁻-vertex `w` and a
//!   4⁻-vertex `y`;
//! * `C7`: a `d`-vertex `v`, `d ≥ 8`, adjacent to `d−7` 2⁻-vertices, two
//!   3⁻-vertices `u1, u2` and a 4⁻-vertex `w`;
//! * `C8`: a vertex `v` of degree `d = Δ ≥ 3` adjacent to `d−2` 3⁻-vertices
//!   and one further 4⁻-vertex `u`.
//!
//! Witnesses with different role names are always distinct vertices.
//! Besides these, the neighbour-count inequality
//! `n_{4⁺}(v) ≥ n_{2⁻}(v) + 1 + n_{3⁻}(v)·(k − d(v))` and its consequence
//! `n_{2⁻}(v) ≤ d(v) − 5` for `d(v) ≥ 7` are checked per vertex.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Violation of the neighbour-count inequality.
    NeighbourCount,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    /// A 7⁺-vertex with more than `d − 5` 2⁻-neighbours.
    LowNeighbours,
}

impl Kind {
    /// The order in which [`find_any_reducible`] tries the kinds.
    pub const PRIORITY: [Kind; 9] =
        [Kind::NeighbourCount, Kind::C1, Kind::C2, Kind::C3, Kind::C4, Kind::C5, Kind::C6, Kind::C7, Kind::C8];

    pub const ALL: [Kind; 10] = [
        Kind::NeighbourCount,
        Kind::C1,
        Kind::C2,
        Kind::C3,
        Kind::C4,
        Kind::C5,
        Kind::C6,
        Kind::C7,
        Kind::C8,
        Kind::LowNeighbours,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::NeighbourCount => "neighbour-count",
            Kind::C1 => "C1",
            Kind::C2 => "C2",
            Kind::C3 => "C3",
            Kind::C4 => "C4",
            Kind::C5 => "C5",
            Kind::C6 => "C6",
            Kind::C7 => "C7",
            Kind::C8 => "C8",
            Kind::LowNeighbours => "low-neighbours",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown configuration kind {s:?}")))
    }
}

impl Serialize for Kind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A configuration found at `anchor`, with role-labelled witnesses in a
/// fixed role order. The anchor is also listed under the role `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub kind: Kind,
    pub anchor: Vertex,
    pub roles: Vec<(String, Vertex)>,
    pub k: usize,
}

impl Occurrence {
    fn new(kind: Kind, anchor: Vertex, k: usize, roles: Vec<(String, Vertex)>) -> Self {
        Occurrence { kind, anchor, roles, k }
    }

    pub fn role(&self, name: &str) -> Option<Vertex> {
        self.roles.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    /// Witnesses whose role is `prefix` followed by an index, in order.
    pub fn indexed(&self, prefix: &str) -> Vec<Vertex> {
        self.roles
            .iter()
            .filter(|(n, _)| {
                n.strip_prefix(prefix).is_some_and(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
            })
            .map(|&(_, v)| v)
            .collect()
    }

    /// JSON text with roles in role order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("occurrences serialise")
    }
}

struct Roles<'a>(&'a [(String, Vertex)]);

impl Serialize for Roles<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (name, v) in self.0 {
            m.serialize_entry(name, v)?;
        }
        m.end()
    }
}

impl Serialize for Occurrence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("kind", &self.kind)?;
        m.serialize_entry("anchor", &self.anchor)?;
        m.serialize_entry("roles", &Roles(&self.roles))?;
        m.serialize_entry("k", &self.k)?;
        m.end()
    }
}

fn role(name: &str, v: Vertex) -> (String, Vertex) {
    (name.to_string(), v)
}

fn indexed(prefix: &str, vs: &[Vertex]) -> Vec<(String, Vertex)> {
    vs.iter().enumerate().map(|(i, &v)| (format!("{prefix}{}", i + 1), v)).collect()
}

/// `d(u) ≤ ⌊k/2⌋ + 1`.
pub fn c1_partner_bound(k: usize) -> usize {
    k / 2 + 1
}

fn check_k(k: usize) -> Result<()> {
    if k < 8 {
        return Err(Error::Domain(format!("palette parameter k = {k} is below 8")));
    }
    Ok(())
}

/// Takes, in order, the smallest unused neighbours of `v` satisfying each
/// degree cap; `None` if some role cannot be filled.
fn pick(g: &Graph, v: Vertex, caps: &[(usize, usize)]) -> Option<Vec<Vec<Vertex>>> {
    let mut used: Vec<Vertex> = Vec::new();
    let mut out = Vec::with_capacity(caps.len());
    for &(count, cap) in caps {
        let chosen: Vec<Vertex> =
            g.neighbours(v).iter().copied().filter(|u| !used.contains(u) && g.deg(*u) <= cap).take(count).collect();
        if chosen.len() < count {
            return None;
        }
        used.extend(&chosen);
        out.push(chosen);
    }
    Some(out)
}

fn rest(g: &Graph, v: Vertex, taken: &[Vertex]) -> Vec<Vertex> {
    g.neighbours(v).iter().copied().filter(|u| !taken.contains(u)).collect()
}

/// All occurrences of `kind`, sorted by anchor then witnesses. Edge kinds
/// (`C1`–`C3`) list every qualifying pair (`C2` once per edge, smaller
/// endpoint as anchor); the other kinds list one occurrence per anchor with
/// the smallest vertex ids taken role by role.
pub fn detect(g: &Graph, k: usize, kind: Kind) -> Result<Vec<Occurrence>> {
    check_k(k)?;
    let mut out = Vec::new();
    for v in g.vertices() {
        detect_at(g, k, kind, v, &mut out)?;
    }
    Ok(out)
}

fn pairs(g: &Graph, k: usize, kind: Kind, v: Vertex, cap_v: usize, cap_u: usize, out: &mut Vec<Occurrence>) {
    if g.deg(v) > cap_v {
        return;
    }
    for &u in g.neighbours(v) {
        if g.deg(u) <= cap_u && (kind != Kind::C2 || v < u) {
            out.push(Occurrence::new(kind, v, k, vec![role("v", v), role("u", u)]));
        }
    }
}

/// Occurrences of `kind` anchored at `v`.
pub fn detect_at(g: &Graph, k: usize, kind: Kind, v: Vertex, out: &mut Vec<Occurrence>) -> Result<()> {
    g.check_vertex(v)?;
    let d = g.deg(v);
    match kind {
        Kind::C1 => pairs(g, k, kind, v, 2, c1_partner_bound(k), out),
        Kind::C2 => pairs(g, k, kind, v, 4, 4, out),
        Kind::C3 => pairs(g, k, kind, v, 3, 5, out),
        Kind::C4 => {
            if d == 5 {
                let fours: Vec<Vertex> = g.neighbours(v).iter().copied().filter(|&u| g.deg(u) == 4).take(3).collect();
                if fours.len() == 3 {
                    let mut roles = vec![role("v", v)];
                    roles.extend(indexed("v", &fours));
                    let others = rest(g, v, &fours);
                    roles.push(role("v4", others[0]));
                    roles.push(role("v5", others[1]));
                    out.push(Occurrence::new(kind, v, k, roles));
                }
            }
        }
        Kind::C5 => {
            if d == 6 {
                if let Some(p) = pick(g, v, &[(1, 3), (1, 4)]) {
                    let (u, w) = (p[0][0], p[1][0]);
                    let mut roles = vec![role("v", v), role("u", u), role("w", w)];
                    roles.extend(indexed("v", &rest(g, v, &[u, w])));
                    out.push(Occurrence::new(kind, v, k, roles));
                }
            }
        }
        Kind::C6 => {
            if d == 7 {
                if let Some(p) = pick(g, v, &[(1, 2), (1, 3), (1, 4)]) {
                    let (u, w, y) = (p[0][0], p[1][0], p[2][0]);
                    let mut roles = vec![role("v", v), role("u", u), role("w", w), role("y", y)];
                    roles.extend(indexed("z", &rest(g, v, &[u, w, y])));
                    out.push(Occurrence::new(kind, v, k, roles));
                }
            }
        }
        Kind::C7 => {
            if d >= 8 {
                if let Some(p) = pick(g, v, &[(d - 7, 2), (2, 3), (1, 4)]) {
                    let mut roles = vec![role("v", v)];
                    roles.extend(indexed("v", &p[0]));
                    roles.push(role("u1", p[1][0]));
                    roles.push(role("u2", p[1][1]));
                    roles.push(role("w", p[2][0]));
                    let taken: Vec<Vertex> = p.concat();
                    roles.extend(indexed("y", &rest(g, v, &taken)));
                    out.push(Occurrence::new(kind, v, k, roles));
                }
            }
        }
        Kind::C8 => {
            if d >= 3 && d == g.max_degree() {
                if let Some(p) = pick(g, v, &[(d - 2, 3), (1, 4)]) {
                    let mut roles = vec![role("v", v)];
                    roles.extend(indexed("v", &p[0]));
                    roles.push(role("u", p[1][0]));
                    let taken: Vec<Vertex> = p.concat();
                    roles.push(role("w", rest(g, v, &taken)[0]));
                    out.push(Occurrence::new(kind, v, k, roles));
                }
            }
        }
        Kind::NeighbourCount => {
            let c = neighbour_count_counts(g, k, v);
            if !c.holds {
                let low: Vec<Vertex> = g.neighbours(v).iter().copied().filter(|&u| g.deg(u) <= 2).collect();
                let threes: Vec<Vertex> = g.neighbours(v).iter().copied().filter(|&u| g.deg(u) == 3).collect();
                let mut roles = vec![role("v", v)];
                roles.extend(indexed("u", &low));
                roles.extend(indexed("w", &threes));
                out.push(Occurrence::new(kind, v, k, roles));
            }
        }
        Kind::LowNeighbours => {
            if let LowNeighbourCheck::Violated { .. } = check_low_neighbours(g, v)? {
                let low: Vec<Vertex> = g.neighbours(v).iter().copied().filter(|&u| g.deg(u) <= 2).collect();
                let mut roles = vec![role("v", v)];
                roles.extend(indexed("u", &low));
                out.push(Occurrence::new(kind, v, k, roles));
            }
        }
    }
    Ok(())
}

/// Counts behind the neighbour-count inequality at one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NeighbourCountCheck {
    pub vertex: Vertex,
    pub degree: usize,
    pub k: usize,
    pub n_2_minus: usize,
    pub n_3_minus: usize,
    pub n_4_plus: usize,
    /// `n_{2⁻} + 1 + n_{3⁻}·(k − d)`.
    pub required: usize,
    pub holds: bool,
}

fn neighbour_count_counts(g: &Graph, k: usize, v: Vertex) -> NeighbourCountCheck {
    let d = g.deg(v);
    let n2 = g.neighbours_at_most(v, 2);
    let n3 = g.neighbours_at_most(v, 3);
    let n4p = d - n3;
    let required = n2 + 1 + n3 * k.saturating_sub(d);
    NeighbourCountCheck {
        vertex: v,
        degree: d,
        k,
        n_2_minus: n2,
        n_3_minus: n3,
        n_4_plus: n4p,
        required,
        holds: n4p >= required,
    }
}

/// `n_{4⁺}(v) ≥ n_{2⁻}(v) + 1 + n_{3⁻}(v)·(k − d(v))`; requires `k ≥ Δ(g)`.
pub fn check_neighbour_count(g: &Graph, k: usize, v: Vertex) -> Result<NeighbourCountCheck> {
    g.check_vertex(v)?;
    if k < g.max_degree() {
        return Err(Error::Domain(format!("k = {k} is below the maximum degree {}", g.max_degree())));
    }
    Ok(neighbour_count_counts(g, k, v))
}

/// Outcome of `n_{2⁻}(v) ≤ d(v) − 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum LowNeighbourCheck {
    Holds {
        n_2_minus: usize,
        bound: usize,
    },
    Violated {
        n_2_minus: usize,
        bound: usize,
    },
    /// `d(v) < 7`.
    NotApplicable {
        degree: usize,
    },
}

impl LowNeighbourCheck {
    pub fn holds(&self) -> Option<bool> {
        match self {
            LowNeighbourCheck::Holds { .. } => Some(true),
            LowNeighbourCheck::Violated { .. } => Some(false),
            LowNeighbourCheck::NotApplicable { .. } => None,
        }
    }
}

pub fn check_low_neighbours(g: &Graph, v: Vertex) -> Result<LowNeighbourCheck> {
    g.check_vertex(v)?;
    let d = g.deg(v);
    if d < 7 {
        return Ok(LowNeighbourCheck::NotApplicable { degree: d });
    }
    let n2 = g.neighbours_at_most(v, 2);
    let bound = d - 5;
    Ok(if n2 <= bound {
        LowNeighbourCheck::Holds { n_2_minus: n2, bound }
    } else {
        LowNeighbourCheck::Violated { n_2_minus: n2, bound }
    })
}

/// First occurrence in [`Kind::PRIORITY`] order, anchors ascending within
/// a kind.
pub fn find_any_reducible(g: &Graph, k: usize) -> Result<Option<Occurrence>> {
    find_reducible_where(g, k, |_| true)
}

/// As [`find_any_reducible`], skipping occurrences rejected by `accept`.
pub fn find_reducible_where(g: &Graph, k: usize, accept: impl Fn(&Occurrence) -> bool) -> Result<Option<Occurrence>> {
    check_k(k)?;
    if k < g.max_degree() {
        return Err(Error::Domain(format!("k = {k} is below the maximum degree {}", g.max_degree())));
    }
    for kind in Kind::PRIORITY {
        for v in g.vertices() {
            let mut found = Vec::new();
            detect_at(g, k, kind, v, &mut found)?;
            if let Some(o) = found.into_iter().find(|o| accept(o)) {
                return Ok(Some(o));
            }
        }
    }
    Ok(None)
}

/// Re-checks an occurrence against `g` from its role labels alone.
pub fn validate(g: &Graph, occ: &Occurrence) -> Result<()> {
    let bad = |why: &str| Err(Error::Precondition(format!("{} at {}: {why}", occ.kind, occ.anchor)));
    for &(_, x) in &occ.roles {
        g.check_vertex(x)?;
    }
    let v = occ.anchor;
    if occ.role("v") != Some(v) {
        return bad("anchor is not the role v");
    }
    let mut seen: Vec<Vertex> = occ.roles.iter().map(|&(_, x)| x).collect();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return bad("witnesses are not distinct");
    }
    let others: Vec<Vertex> = occ.roles.iter().skip(1).map(|&(_, x)| x).collect();
    if others.iter().any(|&x| !g.has_edge(v, x)) {
        return bad("a witness is not adjacent to the anchor");
    }
    let d = g.deg(v);
    let deg = |name: &str| occ.role(name).map(|x| g.deg(x));
    let all_at_most = |prefix: &str, cap: usize| occ.indexed(prefix).iter().all(|&x| g.deg(x) <= cap);
    let k = occ.k;
    let ok = match occ.kind {
        Kind::C1 => d <= 2 && deg("u").is_some_and(|x| x <= c1_partner_bound(k)),
        Kind::C2 => d <= 4 && deg("u").is_some_and(|x| x <= 4),
        Kind::C3 => d <= 3 && deg("u").is_some_and(|x| x <= 5),
        Kind::C4 => {
            let vs = occ.indexed("v");
            d == 5 && vs.len() == 5 && vs[..3].iter().all(|&x| g.deg(x) == 4)
        }
        Kind::C5 => {
            d == 6
                && deg("u").is_some_and(|x| x <= 3)
                && deg("w").is_some_and(|x| x <= 4)
                && occ.indexed("v").len() == 4
        }
        Kind::C6 => {
            d == 7
                && deg("u").is_some_and(|x| x <= 2)
                && deg("w").is_some_and(|x| x <= 3)
                && deg("y").is_some_and(|x| x <= 4)
                && occ.indexed("z").len() == 4
        }
        Kind::C7 => {
            d >= 8
                && occ.indexed("v").len() == d - 7
                && all_at_most("v", 2)
                && deg("u1").is_some_and(|x| x <= 3)
                && deg("u2").is_some_and(|x| x <= 3)
                && deg("w").is_some_and(|x| x <= 4)
                && occ.indexed("y").len() == 4
        }
        Kind::C8 => {
            d >= 3
                && d == g.max_degree()
                && occ.indexed("v").len() == d - 2
                && all_at_most("v", 3)
                && deg("u").is_some_and(|x| x <= 4)
                && occ.role("w").is_some()
        }
        Kind::NeighbourCount => {
            let c = neighbour_count_counts(g, k, v);
            !c.holds
                && occ.indexed("u").len() == c.n_2_minus
                && occ.indexed("w").len() == c.n_3_minus - c.n_2_minus
                && all_at_most("u", 2)
                && occ.indexed("w").iter().all(|&x| g.deg(x) == 3)
        }
        Kind::LowNeighbours => d >= 7 && occ.indexed("u").len() > d - 5 && all_at_most("u", 2),
    };
    if ok {
        Ok(())
    } else {
        bad("degree constraints fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn attach_leaves(n: usize, edges: &mut Vec<(Vertex, Vertex)>, at: Vertex, count: usize) -> usize {
        for i in 0..count {
            edges.push((at, n + i));
        }
        n + count
    }

    #[test]
    fn c1_with_partner_of_degree_five() {
        // 1-vertex 0 attached to vertex 1 of degree 5
        let mut edges = vec![(0, 1)];
        attach_leaves(2, &mut edges, 1, 4);
        let g = Graph::from_edges(6, edges).unwrap();
        let occ = detect(&g, 8, Kind::C1).unwrap();
        assert!(occ.iter().any(|o| o.role("v") == Some(0) && o.role("u") == Some(1)));
        for o in &occ {
            validate(&g, o).unwrap();
        }
    }

    #[test]
    fn c2_on_edge_of_four_vertices() {
        let mut edges = vec![(0, 1)];
        let n = attach_leaves(2, &mut edges, 0, 3);
        let n = attach_leaves(n, &mut edges, 1, 3);
        let g = Graph::from_edges(n, edges).unwrap();
        let occ = detect(&g, 8, Kind::C2).unwrap();
        assert!(occ.iter().any(|o| o.anchor == 0 && o.role("u") == Some(1)));
    }

    #[test]
    fn c8_on_star() {
        let g = Graph::star(8);
        let occ = detect(&g, 8, Kind::C8).unwrap();
        assert_eq!(occ.len(), 1);
        let o = &occ[0];
        assert_eq!(o.anchor, 0);
        assert_eq!(o.indexed("v").len(), 6);
        assert_eq!(o.role("u"), Some(7));
        assert_eq!(o.role("w"), Some(8));
        validate(&g, o).unwrap();
    }

    #[test]
    fn neighbour_count_examples() {
        let c = check_neighbour_count(&Graph::complete(4), 8, 0).unwrap();
        assert_eq!((c.n_4_plus, c.n_2_minus, c.n_3_minus, c.required), (0, 0, 3, 16));
        assert!(!c.holds);
        assert!(check_neighbour_count(&Graph::star(8), 7, 0).is_err());

        // degree-8 vertex with one 2-neighbour and seven 4⁺-neighbours
        let mut edges: Vec<(Vertex, Vertex)> = (1..=8).map(|i| (0, i)).collect();
        edges.push((1, 9));
        let mut n = 10;
        for hub in 2..=8 {
            n = attach_leaves(n, &mut edges, hub, 3);
        }
        let g = Graph::from_edges(n, edges).unwrap();
        let c = check_neighbour_count(&g, 8, 0).unwrap();
        assert_eq!((c.n_4_plus, c.required), (7, 2));
        assert!(c.holds);
    }

    #[test]
    fn low_neighbour_examples() {
        assert_eq!(check_low_neighbours(&Graph::star(8), 0).unwrap().holds(), Some(false));
        assert_eq!(check_low_neighbours(&Graph::star(6), 0).unwrap().holds(), None);
        // degree-8 vertex with three leaves and five 3-neighbours
        let mut edges: Vec<(Vertex, Vertex)> = (1..=8).map(|i| (0, i)).collect();
        let mut n = 9;
        for hub in 4..=8 {
            n = attach_leaves(n, &mut edges, hub, 2);
        }
        let g = Graph::from_edges(n, edges).unwrap();
        assert_eq!(check_low_neighbours(&g, 0).unwrap(), LowNeighbourCheck::Holds { n_2_minus: 3, bound: 3 });
    }

    #[test]
    fn priority_picks_neighbour_count_on_k4() {
        let o = find_any_reducible(&Graph::complete(4), 8).unwrap().unwrap();
        assert_eq!(o.kind, Kind::NeighbourCount);
        assert_eq!(o.anchor, 0);
    }

    #[test]
    fn small_k_rejected() {
        assert!(detect(&Graph::path(3), 7, Kind::C1).is_err());
        assert!(find_any_reducible(&Graph::star(9), 8).is_err());
    }

    #[test]
    fn json_shape() {
        let o = detect(&Graph::path(3), 8, Kind::C1).unwrap().remove(0);
        assert_eq!(o.to_json(), r#"{"kind":"C1","anchor":0,"roles":{"v":0,"u":1},"k":8}"#);
        assert_eq!("c4".parse::<Kind>().unwrap(), Kind::C4);
    }
}
