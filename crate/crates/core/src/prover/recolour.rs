//! Colouring a vertex of degree at most 3 once its edges are coloured.
//!
//! With at least 11 colours, at most 9 are blocked: three neighbour colours,
//! three incident edge colours and three neighbour sums.

use crate::colouring::{vertex_sum, Colour, TotalColouring};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Smallest colour for the 3⁻-vertex `v` that is proper and makes `s(v)`
/// differ from every neighbour sum. `c` is not modified.
pub fn recolour_3minus(g: &Graph, c: &TotalColouring, v: Vertex) -> Result<Colour> {
    choose(g, c, v, &[])
}

/// As [`recolour_3minus`], ignoring the sums of neighbours in `pending`
/// (those are coloured later and will avoid `s(v)` themselves).
pub(crate) fn choose(g: &Graph, c: &TotalColouring, v: Vertex, pending: &[Vertex]) -> Result<Colour> {
    g.check_vertex(v)?;
    if c.palette() < 11 {
        return Err(Error::Domain(format!("palette of {} colours; at least 11 needed", c.palette())));
    }
    if g.deg(v) > 3 {
        return Err(Error::Precondition(format!("vertex {v} has degree {} > 3", g.deg(v))));
    }
    let mut edge_sum = 0i64;
    let mut blocked = Vec::with_capacity(6);
    for &e in g.incident_edges(v) {
        let col = c
            .edge(e)
            .ok_or_else(|| Error::Precondition(format!("edge {:?} at vertex {v} is uncoloured", g.edge(e))))?;
        edge_sum += col as i64;
        blocked.push(col);
    }
    let mut sums = Vec::with_capacity(3);
    for &y in g.neighbours(v) {
        if let Some(col) = c.vertex(y) {
            blocked.push(col);
        }
        if !pending.contains(&y) {
            sums.push(vertex_sum(g, c, y));
        }
    }
    (1..=c.palette())
        .find(|&col| !blocked.contains(&col) && !sums.contains(&(edge_sum + col as i64)))
        .ok_or_else(|| Error::Inconsistency(format!("no colour left for the 3⁻-vertex {v}")))
}

/// Colours the listed 3⁻-vertices one after another; each one only has to
/// avoid the sums of neighbours that are not still waiting.
pub fn finish_3minus(g: &Graph, c: &mut TotalColouring, vertices: &[Vertex]) -> Result<()> {
    for (i, &v) in vertices.iter().enumerate() {
        c.set_vertex(v, None);
        let col = choose(g, c, v, &vertices[i + 1..])?;
        c.set_vertex(v, Some(col));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::is_tnsd;

    #[test]
    fn isolated_gets_colour_one() {
        let g = Graph::empty(1);
        let c = TotalColouring::uncoloured(&g, 11);
        assert_eq!(recolour_3minus(&g, &c, 0).unwrap(), 1);
    }

    #[test]
    fn small_palette_rejected() {
        let g = Graph::empty(1);
        let c = TotalColouring::uncoloured(&g, 10);
        assert!(matches!(recolour_3minus(&g, &c, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn degree_three_with_nine_blocks() {
        // centre 0 with neighbours 1, 2, 3; each neighbour has one more leaf
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let mut c = TotalColouring::uncoloured(&g, 11);
        let e = |u, v| g.edge_id(u, v).unwrap();
        for (u, v, col) in [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 4, 7), (2, 5, 8), (3, 6, 9)] {
            c.set_edge(e(u, v), Some(col));
        }
        for (v, col) in [(1, 4), (2, 5), (3, 6), (4, 1), (5, 1), (6, 1)] {
            c.set_vertex(v, Some(col));
        }
        // neighbour sums 12, 15, 18 and s(0) = 6 + c(0) rule out 6, 9, 12;
        // colours 1..6 are taken, so 7 is the smallest choice
        let col = recolour_3minus(&g, &c, 0).unwrap();
        assert_eq!(col, 7);
        c.set_vertex(0, Some(col));
        assert!(is_tnsd(&g, &c).unwrap());
    }

    #[test]
    fn uncoloured_edge_rejected() {
        let g = Graph::path(2);
        let c = TotalColouring::uncoloured(&g, 11);
        assert!(matches!(recolour_3minus(&g, &c, 0), Err(Error::Precondition(_))));
    }
}
