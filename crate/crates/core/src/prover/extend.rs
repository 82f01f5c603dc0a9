//! Extending a colouring of the reduced graph back to the original graph.
//!
//! Every step starts from the base colouring transferred to `g`, with the
//! removed edges and the listed vertices uncoloured. Partial sums count
//! uncoloured elements as 0.

use num_traits::Zero;
use serde::Serialize;

use crate::certificates::{
    case23_system, case4_system, case5_system, case6_system, case7_system, top_coefficient, CaseSystem, CnCase,
};
use crate::colouring::{is_tnsd, vertex_sum, Colour, TotalColouring};
use crate::configurations::{validate, Kind, Occurrence};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::polynomial::{nonzero_point, product_degree};
use crate::sumsets::{lemma_lower_bound, ListSystem};

use super::recolour::finish_3minus;
use super::reduce::{ExtensionCase, Reduction};

/// A tnsd colouring of the original graph and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    #[serde(skip)]
    pub colouring: TotalColouring,
    pub strategy: String,
}

/// Extends `base`, a tnsd `(k+3)`-colouring of `red.reduced`, to a tnsd
/// `(k+3)`-colouring of `g`.
pub fn extend(g: &Graph, red: &Reduction, base: &TotalColouring, k: usize) -> Result<Extension> {
    if k < 8 {
        return Err(Error::Domain(format!("palette parameter k = {k} is below 8")));
    }
    if g.max_degree() > k {
        return Err(Error::Domain(format!("maximum degree {} exceeds k = {k}", g.max_degree())));
    }
    if base.palette() as usize != k + 3 {
        return Err(Error::Precondition(format!("base palette is {}, expected {}", base.palette(), k + 3)));
    }
    validate(g, &red.occurrence)?;
    if g.without_edges(&red.removed_edges)? != red.reduced {
        return Err(Error::Precondition("reduced graph does not match the removed edges".into()));
    }
    if !is_tnsd(&red.reduced, base)? {
        return Err(Error::Precondition("base colouring is not tnsd on the reduced graph".into()));
    }
    let mut c = base.transfer(&red.reduced, g)?;
    for &x in &red.uncoloured_vertices {
        c.set_vertex(x, None);
    }
    let occ = &red.occurrence;
    let strategy = match red.case {
        ExtensionCase::Case1 => case1(g, &mut c, occ)?,
        ExtensionCase::Case23 => case23(g, &mut c, occ)?,
        ExtensionCase::Case4 => case4(g, &mut c, occ)?,
        ExtensionCase::Case5 => case5(g, &mut c, occ)?,
        ExtensionCase::Case6 => case6(g, &mut c, occ)?,
        ExtensionCase::Case7 => case7(g, &mut c, occ)?,
        ExtensionCase::Case8 => case8(g, &mut c, occ, k)?,
        ExtensionCase::NeighbourCount => neighbour_count(g, &mut c, occ)?,
    };
    if !is_tnsd(g, &c)? {
        return Err(Error::Inconsistency(format!("{} extension at {} is not tnsd", red.case.name(), occ.anchor)));
    }
    Ok(Extension { colouring: c, strategy })
}

fn role(occ: &Occurrence, name: &str) -> Vertex {
    occ.role(name).expect("validated occurrence has its roles")
}

fn edge_colour(g: &Graph, c: &TotalColouring, a: Vertex, b: Vertex) -> Option<Colour> {
    g.edge_id(a, b).and_then(|e| c.edge(e))
}

fn set_edge(g: &Graph, c: &mut TotalColouring, a: Vertex, b: Vertex, col: Colour) {
    c.set_edge(g.edge_id(a, b).expect("edge of the configuration"), Some(col));
}

fn edge_colours_at<'a>(g: &'a Graph, c: &'a TotalColouring, x: Vertex) -> impl Iterator<Item = Colour> + 'a {
    g.incident_edges(x).iter().filter_map(move |&e| c.edge(e))
}

/// Colours not on an incident edge of `x` nor on a neighbour of `x`.
fn list_vertex(g: &Graph, c: &TotalColouring, x: Vertex) -> Vec<i64> {
    let mut blocked: Vec<Colour> = edge_colours_at(g, c, x).collect();
    blocked.extend(g.neighbours(x).iter().filter_map(|&y| c.vertex(y)));
    (1..=c.palette()).filter(|col| !blocked.contains(col)).map(i64::from).collect()
}

/// Colours not on an edge adjacent to `ab` nor on `a` or `b`.
fn list_edge(g: &Graph, c: &TotalColouring, a: Vertex, b: Vertex) -> Vec<i64> {
    let mut blocked: Vec<Colour> = edge_colours_at(g, c, a).chain(edge_colours_at(g, c, b)).collect();
    blocked.extend(c.vertex(a));
    blocked.extend(c.vertex(b));
    (1..=c.palette()).filter(|col| !blocked.contains(col)).map(i64::from).collect()
}

fn sums_except(g: &Graph, c: &TotalColouring, x: Vertex, skip: Vertex) -> Vec<i64> {
    g.neighbours(x).iter().filter(|&&y| y != skip).map(|&y| vertex_sum(g, c, y)).collect()
}

fn require_non_adjacent(g: &Graph, a: &[Vertex], b: &[Vertex], occ: &Occurrence) -> Result<()> {
    for &x in a {
        for &y in b {
            if x != y && g.has_edge(x, y) {
                return Err(Error::Precondition(format!(
                    "{} at {}: uncoloured vertices {x} and {y} are adjacent",
                    occ.kind, occ.anchor
                )));
            }
        }
    }
    Ok(())
}

/// Nullstellensatz step: checks the hypotheses on the padded product, then
/// finds a point where the requirement product does not vanish.
fn solve_cn(sys: &CaseSystem, lists: &[Vec<i64>]) -> Result<Vec<i64>> {
    let name = format!("{:?}", sys.case);
    for (i, (l, &t)) in lists.iter().zip(sys.target.exponents()).enumerate() {
        if l.len() <= t as usize {
            return Err(Error::Inconsistency(format!("{name}: list {i} has {} colours, exponent {t}", l.len())));
        }
    }
    if product_degree(&sys.g) != sys.target.total_degree() {
        return Err(Error::Inconsistency(format!("{name}: padded product has the wrong degree")));
    }
    if top_coefficient(&sys.g, &sys.target)?.is_zero() {
        return Err(Error::Inconsistency(format!("{name}: target coefficient vanishes")));
    }
    nonzero_point(&sys.f, lists)
        .ok_or_else(|| Error::Inconsistency(format!("{name}: no admissible point despite a non-zero coefficient")))
}

fn colour(x: i64) -> Colour {
    Colour::try_from(x).expect("list entries are palette colours")
}

fn case1(g: &Graph, c: &mut TotalColouring, occ: &Occurrence) -> Result<String> {
    let (v, u) = (occ.anchor, role(occ, "u"));
    let s_u = vertex_sum(g, c, u);
    let forbidden = sums_except(g, c, u, v);
    let col = list_edge(g, c, u, v)
        .into_iter()
        .find(|&x| !forbidden.contains(&(s_u + x)))
        .ok_or_else(|| Error::Inconsistency(format!("no colour for the edge {u}{v}")))?;
    set_edge(g, c, u, v, colour(col));
    finish_3minus(g, c, &[v])?;
    Ok(format!("edge {u}-{v} coloured {col}; {v} recoloured"))
}

fn case23(g: &Graph, c: &mut TotalColouring, occ: &Occurrence) -> Result<String> {
    let (v, u) = (occ.anchor, role(occ, "u"));
    let case = if occ.kind == Kind::C2 { CnCase::Case23Small } else { CnCase::Case23Large };
    let sys = case23_system(
        case,
        vertex_sum(g, c, u),
        vertex_sum(g, c, v),
        &sums_except(g, c, u, v),
        &sums_except(g, c, v, u),
    )?;
    let lists = vec![list_vertex(g, c, u), list_edge(g, c, u, v), list_vertex(g, c, v)];
    let p = solve_cn(&sys, &lists)?;
    c.set_vertex(u, Some(colour(p[0])));
    set_edge(g, c, u, v, colour(p[1]));
    c.set_vertex(v, Some(colour(p[2])));
    Ok(format!("nullstellensatz {case:?} at {u}-{v}"))
}

fn case4(g: &Graph, c: &mut TotalColouring, occ: &Occurrence) -> Result<String> {
    let v = occ.anchor;
    let vs = occ.indexed("v");
    let (near, far) = (&vs[..3], &vs[3..]);
    require_non_adjacent(g, near, near, occ)?;
    let s_vi = [0, 1, 2].map(|i| vertex_sum(g, c, near[i]));
    let nbr: Vec<Vec<i64>> = near.iter().map(|&x| sums_except(g, c, x, v)).collect();
    let sys = case4_system(
        vertex_sum(g, c, v),
        s_vi,
        [vertex_sum(g, c, far[0]), vertex_sum(g, c, far[1])],
        [&nbr[0], &nbr[1], &nbr[2]],
    )?;
    let mut lists = vec![list_vertex(g, c, v)];
    lists.extend(near.iter().map(|&x| list_edge(g, c, v, x)));
    lists.extend(near.iter().map(|&x| list_vertex(g, c, x)));
    let p = solve_cn(&sys, &lists)?;
    c.set_vertex(v, Some(colour(p[0])));
    for (i, &x) in near.iter().enumerate() {
        set_edge(g, c, v, x, colour(p[1 + i]));
        c.set_vertex(x, Some(colour(p[4 + i])));
    }
    Ok(format!("nullstellensatz Case4 at {v}"))
}

fn case5(g: &Graph, c: &mut TotalColouring, occ: &Occurrence) -> Result<String> {
    let (v, u, w) = (occ.anchor, role(occ, "u"), role(occ, "w"));
    require_non_adjacent(g, &[u], &[w], occ)?;
    let others = occ.indexed("v");
    let s_others = [0, 1, 2, 3].map(|i| vertex_sum(g, c, others[i]));
    let sys = case5_system(
        vertex_sum(g, c, v),
        vertex_sum(g, c, u),
        vertex_sum(g, c, w),
        s_others,
        &sums_except(g, c, u, v),
        &sums_except(g, c, w, v),
    )?;
    let lists = vec![
        list_vertex(g, c, v),
        list_edge(g, c, v, u),
        list_edge(g, c, v, w),
        list_vertex(g, c, u),
        list_vertex(g, c, w),
    ];
    let p = solve_cn(&sys, &lists)?;
    c.set_vertex(v, Some(colour(p[0])));
    set_edge(g, c, v, u, colour(p[1]));
    set_edge(g, c, v, w, colour(p[2]));
    c.set_vertex(u, Some(colour(p[3])));
    c.set_vertex(w, Some(colour(p[4])));
    Ok(format!("nullstellensatz Case5 at {v}"))
}

fn case6(g: &Graph, c: &mut TotalColouring, occ: &Occurrence) -> Result<String> {
    let (v, u, w, y) = (occ.anchor, role(occ, "u"), role(occ, "w"), role(occ, "y"));
    require_non_adjacent(g, &[y], &[u, w], occ)?;
    let zs = occ.indexed("z");
    let s_others = [0, 1, 2, 3].map(|i| vertex_sum(g, c, zs[i]));
    let sys = case6_system(vertex_sum(g, c, v), s_others, vertex_sum(g, c, y), &sums_except(g, c, y, v))?;
    let lists = vec![list_edge(g, c, v, u), list_edge(g, c, v, w), list_edge(g, c, v, y), list_vertex(g, c, y)];
    let p = solve_cn(&sys, &lists)?;
    set_edge(g, c, v, u, colour(p[0]));
    set_edge(g, c, v, w, colour(p[1]));
    set_edge(g, c, v, y, colour(p[2]));
    c.set_vertex(y, Some(colour(p[3])));
    finish_3minus(g, c, &[u, w])?;
    Ok(format!("nullstellensatz Case6 at {v}; {u}, {w} recoloured"))
}

fn case7(g: &Graph, c: &mut TotalColouring, occ: &Occurrence) -> Result<String> {
    let (v, w) = (occ.anchor, role(occ, "w"));
    let vs = occ.indexed("v");
    let us = occ.indexed("u");
    let mut low = vs.clone();
    low.extend(&us);
    require_non_adjacent(g, &[w], &low, occ)?;
    let ys = occ.indexed("y");
    let s_others = [0, 1, 2, 3].map(|i| vertex_sum(g, c, ys[i]));
    let sys = case7_system(vertex_sum(g, c, v), s_others, vertex_sum(g, c, w), &sums_except(g, c, w, v))?;
    let lists = vec![
        list_vertex(g, c, v),
        list_edge(g, c, v, vs[0]),
        list_edge(g, c, v, us[0]),
        list_edge(g, c, v, us[1]),
        list_edge(g, c, v, w),
        list_vertex(g, c, w),
    ];
    let p = solve_cn(&sys, &lists)?;
    c.set_vertex(v, Some(colour(p[0])));
    set_edge(g, c, v, vs[0], colour(p[1]));
    set_edge(g, c, v, us[0], colour(p[2]));
    set_edge(g, c, v, us[1], colour(p[3]));
    set_edge(g, c, v, w, colour(p[4]));
    c.set_vertex(w, Some(colour(p[5])));
    finish_3minus(g, c, &low)?;
    Ok(format!("nullstellensatz Case7 at {v}; {} vertices recoloured", low.len()))
}

/// Colours `v` so that the edge `vv1` later has one fewer blocked colour.
fn case8_vertex_colour(g: &Graph, c: &TotalColouring, v: Vertex, v1: Vertex, w: Vertex) -> (Colour, &'static str) {
    let cw = c.vertex(w);
    let cvw = edge_colour(g, c, v, w);
    if g.deg(v1) == 3 {
        let ab: Vec<Colour> =
            g.neighbours(v1).iter().filter(|&&x| x != v).filter_map(|&x| edge_colour(g, c, v1, x)).collect();
        if ab.len() == 2 && cvw.is_some_and(|x| !ab.contains(&x)) {
            if let Some(&col) = ab.iter().filter(|&&x| Some(x) != cw).min() {
                return (col, "v shares a colour with an edge at v1");
            }
        }
    }
    let col = (1..=c.palette()).find(|&x| Some(x) != cw && Some(x) != cvw).expect("palette has at least 3 colours");
    (col, "v avoids vw and w")
}

fn smallest(c: &TotalColouring, blocked: &[Colour], ok: impl Fn(Colour) -> bool) -> Option<Colour> {
    (1..=c.palette()).find(|x| !blocked.contains(x) && ok(*x))
}

fn case8(g: &Graph, c: &mut TotalColouring, occ: &Occurrence, k: usize) -> Result<String> {
    let (v, u, w) = (occ.anchor, role(occ, "u"), role(occ, "w"));
    let vs = occ.indexed("v");
    let fail = |what: &str| Error::Inconsistency(format!("case-8 at {v}: no colour for {what}"));

    let (cv, branch) = case8_vertex_colour(g, c, v, vs[0], w);
    c.set_vertex(v, Some(cv));

    let mut blocked: Vec<Colour> = edge_colours_at(g, c, u).collect();
    blocked.extend(g.neighbours(u).iter().filter_map(|&y| c.vertex(y)));
    let cu = smallest(c, &blocked, |_| true).ok_or_else(|| fail("u"))?;
    c.set_vertex(u, Some(cu));

    let s_u = vertex_sum(g, c, u);
    let forbidden = sums_except(g, c, u, v);
    let cuv = list_edge(g, c, u, v)
        .into_iter()
        .find(|&x| !forbidden.contains(&(s_u + x)))
        .map(colour)
        .ok_or_else(|| fail("uv"))?;
    set_edge(g, c, u, v, cuv);

    for &x in &vs[1..] {
        let col = list_edge(g, c, v, x).first().copied().map(colour).ok_or_else(|| fail("an edge at v"))?;
        set_edge(g, c, v, x, col);
    }

    let with_u = g.max_degree() < k;
    let s_v = vertex_sum(g, c, v);
    let (s_w, s_u) = (vertex_sum(g, c, w), vertex_sum(g, c, u));
    let last = list_edge(g, c, v, vs[0]).into_iter().find(|&x| s_v + x != s_w && (!with_u || s_v + x != s_u));
    let closing = match last {
        Some(col) => {
            set_edge(g, c, v, vs[0], colour(col));
            "greedy"
        }
        None => {
            joint_edges(g, c, v, &vs, &[s_w, s_u]).ok_or_else(|| fail("the edges to v1..v(d-2)"))?;
            "joint search"
        }
    };
    finish_3minus(g, c, &vs)?;
    Ok(format!("{branch}; edges at v {closing}; {} vertices recoloured", vs.len()))
}

/// Recolours the edges from `v` to `ends` jointly so that `s(v)` avoids
/// `targets`; used when the greedy order leaves no colour for the last edge.
fn joint_edges(g: &Graph, c: &mut TotalColouring, v: Vertex, ends: &[Vertex], targets: &[i64]) -> Option<()> {
    for &x in ends {
        c.set_edge(g.edge_id(v, x)?, None);
    }
    fn go(g: &Graph, c: &mut TotalColouring, v: Vertex, ends: &[Vertex], targets: &[i64]) -> bool {
        let Some((&x, rest)) = ends.split_first() else {
            let s = vertex_sum(g, c, v);
            return !targets.contains(&s);
        };
        let e = g.edge_id(v, x).expect("edge of the configuration");
        for col in list_edge(g, c, v, x) {
            c.set_edge(e, Some(colour(col)));
            if go(g, c, v, rest, targets) {
                return true;
            }
        }
        c.set_edge(e, None);
        false
    }
    go(g, c, v, ends, targets).then_some(())
}

fn neighbour_count(g: &Graph, c: &mut TotalColouring, occ: &Occurrence) -> Result<String> {
    let v = occ.anchor;
    let mut ends = occ.indexed("u");
    ends.extend(occ.indexed("w"));
    let forbidden: Vec<i64> =
        g.neighbours(v).iter().filter(|y| !ends.contains(y)).map(|&y| vertex_sum(g, c, y)).collect();
    let lists: Vec<Vec<i64>> = ends.iter().map(|&x| list_edge(g, c, v, x)).collect();
    let system = ListSystem::new(lists.iter().map(|l| l.iter().copied().collect()).collect())?;
    let bound = lemma_lower_bound(&system)?;
    if bound <= forbidden.len() as i64 {
        return Err(Error::Inconsistency(format!(
            "neighbour-count at {v}: {bound} guaranteed sums against {} neighbours of degree at least 4",
            forbidden.len()
        )));
    }
    let s_v = vertex_sum(g, c, v);
    let mut chosen = Vec::with_capacity(ends.len());
    if !distinct_pick(&lists, &mut chosen, s_v, &forbidden) {
        return Err(Error::Inconsistency(format!("neighbour-count at {v}: every sum is blocked")));
    }
    for (&x, &col) in ends.iter().zip(&chosen) {
        set_edge(g, c, v, x, colour(col));
    }
    finish_3minus(g, c, &ends)?;
    Ok(format!("distinct representatives at {v}; {} vertices recoloured", ends.len()))
}

/// Lexicographic search for pairwise-distinct representatives whose sum
/// plus `base` avoids `forbidden`.
fn distinct_pick(lists: &[Vec<i64>], chosen: &mut Vec<i64>, base: i64, forbidden: &[i64]) -> bool {
    let i = chosen.len();
    if i == lists.len() {
        return !forbidden.contains(&(base + chosen.iter().sum::<i64>()));
    }
    for &x in &lists[i] {
        if chosen.contains(&x) {
            continue;
        }
        chosen.push(x);
        if distinct_pick(lists, chosen, base, forbidden) {
            return true;
        }
        chosen.pop();
    }
    false
}
