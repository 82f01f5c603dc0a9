//! Total colourings, vertex sums and the tnsd property.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

pub type Colour = u32;

/// A (possibly partial) assignment of colours `1..=palette` to the vertices
/// and edges of a graph. Edge colours are indexed by [`EdgeId`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalColouring {
    palette: Colour,
    vertex_colours: Vec<Option<Colour>>,
    edge_colours: Vec<Option<Colour>>,
}

impl TotalColouring {
    /// All elements uncoloured.
    pub fn uncoloured(g: &Graph, palette: Colour) -> Self {
        TotalColouring {
            palette,
            vertex_colours: vec![None; g.vertex_count()],
            edge_colours: vec![None; g.edge_count()],
        }
    }

    pub fn from_parts(
        palette: Colour,
        vertex_colours: Vec<Option<Colour>>,
        edge_colours: Vec<Option<Colour>>,
    ) -> Result<Self> {
        let c = TotalColouring { palette, vertex_colours, edge_colours };
        c.check_range()?;
        Ok(c)
    }

    fn check_range(&self) -> Result<()> {
        for &col in self.vertex_colours.iter().chain(&self.edge_colours).flatten() {
            if col == 0 || col > self.palette {
                return Err(Error::ColouringMismatch(format!("colour {col} outside 1..={}", self.palette)));
            }
        }
        Ok(())
    }

    pub fn palette(&self) -> Colour {
        self.palette
    }

    pub fn vertex(&self, v: Vertex) -> Option<Colour> {
        self.vertex_colours[v]
    }

    pub fn edge(&self, e: EdgeId) -> Option<Colour> {
        self.edge_colours[e]
    }

    pub fn vertex_colours(&self) -> &[Option<Colour>] {
        &self.vertex_colours
    }

    pub fn edge_colours(&self) -> &[Option<Colour>] {
        &self.edge_colours
    }

    pub fn set_vertex(&mut self, v: Vertex, c: Option<Colour>) {
        debug_assert!(c.is_none_or(|c| (1..=self.palette).contains(&c)));
        self.vertex_colours[v] = c;
    }

    pub fn set_edge(&mut self, e: EdgeId, c: Option<Colour>) {
        debug_assert!(c.is_none_or(|c| (1..=self.palette).contains(&c)));
        self.edge_colours[e] = c;
    }

    pub fn is_complete(&self) -> bool {
        self.vertex_colours.iter().chain(&self.edge_colours).all(Option::is_some)
    }

    /// Largest colour in use (0 when nothing is coloured).
    pub fn max_colour_used(&self) -> Colour {
        self.vertex_colours.iter().chain(&self.edge_colours).flatten().copied().max().unwrap_or(0)
    }

    /// Checks that the colouring is sized for `g`.
    pub fn check_shape(&self, g: &Graph) -> Result<()> {
        if self.vertex_colours.len() != g.vertex_count() || self.edge_colours.len() != g.edge_count() {
            return Err(Error::ColouringMismatch(format!(
                "colouring covers {} vertices and {} edges, graph has {} and {}",
                self.vertex_colours.len(),
                self.edge_colours.len(),
                g.vertex_count(),
                g.edge_count()
            )));
        }
        Ok(())
    }

    /// Re-indexes the colouring of `from` onto `to`, matching edges by their
    /// endpoints. Edges of `to` absent from `from` come out uncoloured.
    /// Both graphs must share the vertex set.
    pub fn transfer(&self, from: &Graph, to: &Graph) -> Result<TotalColouring> {
        self.check_shape(from)?;
        if from.vertex_count() != to.vertex_count() {
            return Err(Error::ColouringMismatch("vertex sets differ".into()));
        }
        let mut out = TotalColouring::uncoloured(to, self.palette);
        out.vertex_colours.clone_from(&self.vertex_colours);
        for (id, &(u, v)) in to.edges().iter().enumerate() {
            out.edge_colours[id] = from.edge_id(u, v).and_then(|e| self.edge_colours[e]);
        }
        Ok(out)
    }

    /// Same colours, larger palette.
    pub fn with_palette(&self, palette: Colour) -> Result<TotalColouring> {
        TotalColouring::from_parts(palette, self.vertex_colours.clone(), self.edge_colours.clone())
    }
}

/// `s(w) = c(w) + Σ c(e)` over edges at `w`, with uncoloured elements
/// contributing 0.
pub fn vertex_sums(g: &Graph, c: &TotalColouring) -> Vec<i64> {
    g.vertices().map(|v| vertex_sum(g, c, v)).collect()
}

pub fn vertex_sum(g: &Graph, c: &TotalColouring, v: Vertex) -> i64 {
    let own = c.vertex(v).unwrap_or(0) as i64;
    own + g.incident_edges(v).iter().map(|&e| c.edge(e).unwrap_or(0) as i64).sum::<i64>()
}

/// One failed constraint of a total colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    UncolouredVertex { vertex: Vertex },
    UncolouredEdge { edge: [Vertex; 2] },
    AdjacentVertices { u: Vertex, v: Vertex, colour: Colour },
    AdjacentEdges { first: [Vertex; 2], second: [Vertex; 2], colour: Colour },
    EdgeEndpoint { edge: [Vertex; 2], vertex: Vertex, colour: Colour },
    SumConflict { u: Vertex, v: Vertex, sum: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub proper: bool,
    pub tnsd: bool,
    pub violations: Vec<Violation>,
}

/// Lists every violated constraint. Uncoloured elements count as
/// violations for both properness and tnsd.
pub fn verify(g: &Graph, c: &TotalColouring) -> Result<VerificationReport> {
    c.check_shape(g)?;
    let mut violations = Vec::new();
    let mut proper = true;
    for v in g.vertices() {
        if c.vertex(v).is_none() {
            violations.push(Violation::UncolouredVertex { vertex: v });
            proper = false;
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if c.edge(e).is_none() {
            violations.push(Violation::UncolouredEdge { edge: [u, v] });
            proper = false;
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if let (Some(a), Some(b)) = (c.vertex(u), c.vertex(v)) {
            if a == b {
                violations.push(Violation::AdjacentVertices { u, v, colour: a });
                proper = false;
            }
        }
        if let Some(ce) = c.edge(e) {
            for w in [u, v] {
                if c.vertex(w) == Some(ce) {
                    violations.push(Violation::EdgeEndpoint { edge: [u, v], vertex: w, colour: ce });
                    proper = false;
                }
            }
        }
    }
    for v in g.vertices() {
        let inc = g.incident_edges(v);
        for (i, &e1) in inc.iter().enumerate() {
            for &e2 in &inc[i + 1..] {
                if let (Some(a), Some(b)) = (c.edge(e1), c.edge(e2)) {
                    if a == b {
                        let (p, q) = (g.edge(e1), g.edge(e2));
                        violations.push(Violation::AdjacentEdges { first: [p.0, p.1], second: [q.0, q.1], colour: a });
                        proper = false;
                    }
                }
            }
        }
    }
    let sums = vertex_sums(g, c);
    let mut distinct = true;
    for &(u, v) in g.edges() {
        if sums[u] == sums[v] {
            violations.push(Violation::SumConflict { u, v, sum: sums[u] });
            distinct = false;
        }
    }
    Ok(VerificationReport { proper, tnsd: proper && distinct, violations })
}

/// Proper total colouring test on a complete colouring.
pub fn is_proper_total(g: &Graph, c: &TotalColouring) -> Result<bool> {
    require_complete(g, c)?;
    Ok(verify(g, c)?.proper)
}

/// Proper and every edge joins vertices with different sums.
pub fn is_tnsd(g: &Graph, c: &TotalColouring) -> Result<bool> {
    require_complete(g, c)?;
    Ok(verify(g, c)?.tnsd)
}

fn require_complete(g: &Graph, c: &TotalColouring) -> Result<()> {
    c.check_shape(g)?;
    if !c.is_complete() {
        return Err(Error::Precondition("colouring is not complete".into()));
    }
    Ok(())
}

/// JSON form: `{k, vertex_colours: [..], edge_colours: [[u, v, colour], ..]}`.
/// Uncoloured vertices are `null`; uncoloured edges are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouringRecord {
    pub k: Colour,
    pub vertex_colours: Vec<Option<Colour>>,
    pub edge_colours: Vec<[usize; 3]>,
}

impl ColouringRecord {
    pub fn from_colouring(g: &Graph, c: &TotalColouring) -> Self {
        let edge_colours =
            g.edges().iter().enumerate().filter_map(|(e, &(u, v))| c.edge(e).map(|col| [u, v, col as usize])).collect();
        ColouringRecord { k: c.palette(), vertex_colours: c.vertex_colours().to_vec(), edge_colours }
    }

    pub fn to_colouring(&self, g: &Graph) -> Result<TotalColouring> {
        if self.vertex_colours.len() != g.vertex_count() {
            return Err(Error::ColouringMismatch(format!(
                "{} vertex colours for {} vertices",
                self.vertex_colours.len(),
                g.vertex_count()
            )));
        }
        let mut edges = vec![None; g.edge_count()];
        for &[u, v, col] in &self.edge_colours {
            let e =
                g.edge_id(u, v).ok_or_else(|| Error::ColouringMismatch(format!("edge {u}-{v} is not in the graph")))?;
            if edges[e].is_some() {
                return Err(Error::ColouringMismatch(format!("edge {u}-{v} coloured twice")));
            }
            let col = Colour::try_from(col).map_err(|_| Error::ColouringMismatch(format!("colour {col} too large")))?;
            edges[e] = Some(col);
        }
        TotalColouring::from_parts(self.k, self.vertex_colours.clone(), edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colouring(k: Colour, vertices: &[Colour], edges: &[Colour]) -> TotalColouring {
        TotalColouring::from_parts(
            k,
            vertices.iter().map(|&c| Some(c)).collect(),
            edges.iter().map(|&c| Some(c)).collect(),
        )
        .unwrap()
    }

    // K3 with vertex colours 1,2,3, each edge coloured like the opposite vertex.
    fn k3_example() -> (Graph, TotalColouring) {
        let g = Graph::complete(3);
        // edges in id order: (0,1), (0,2), (1,2); opposite vertices 2, 1, 0
        let c = colouring(3, &[1, 2, 3], &[3, 2, 1]);
        (g, c)
    }

    #[test]
    fn k2_examples() {
        let g = Graph::complete(2);
        let good = colouring(3, &[1, 2], &[3]);
        assert!(is_proper_total(&g, &good).unwrap());
        assert_eq!(vertex_sums(&g, &good), vec![4, 5]);
        assert!(is_tnsd(&g, &good).unwrap());
        let bad = colouring(3, &[1, 1], &[2]);
        assert!(!is_proper_total(&g, &bad).unwrap());
    }

    #[test]
    fn k3_opposite_edges() {
        let (g, c) = k3_example();
        assert!(is_proper_total(&g, &c).unwrap());
        assert_eq!(vertex_sums(&g, &c), vec![6, 6, 6]);
        assert!(!is_tnsd(&g, &c).unwrap());
        let report = verify(&g, &c).unwrap();
        assert!(report.proper && !report.tnsd);
        assert_eq!(report.violations.len(), 3);
    }

    #[test]
    fn partial_sums_use_zero() {
        let g = Graph::path(3);
        let c = TotalColouring::uncoloured(&g, 5);
        assert_eq!(vertex_sums(&g, &c), vec![0, 0, 0]);
        assert!(matches!(is_tnsd(&g, &c), Err(Error::Precondition(_))));
    }

    #[test]
    fn edgeless_is_tnsd() {
        let g = Graph::empty(3);
        let c = colouring(1, &[1, 1, 1], &[]);
        assert!(is_tnsd(&g, &c).unwrap());
    }

    #[test]
    fn reports_each_violation_kind() {
        let g = Graph::path(3);
        // edges (0,1), (1,2) share colour 2; vertex 0 clashes with edge 01.
        let c = colouring(4, &[2, 1, 1], &[2, 2]);
        let report = verify(&g, &c).unwrap();
        assert!(!report.proper);
        let kinds: Vec<_> = report.violations.iter().map(std::mem::discriminant).collect();
        assert!(kinds.contains(&std::mem::discriminant(&Violation::AdjacentVertices { u: 0, v: 0, colour: 0 })));
        assert!(kinds.contains(&std::mem::discriminant(&Violation::AdjacentEdges {
            first: [0, 0],
            second: [0, 0],
            colour: 0
        })));
        assert!(kinds.contains(&std::mem::discriminant(&Violation::EdgeEndpoint {
            edge: [0, 0],
            vertex: 0,
            colour: 0
        })));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(TotalColouring::from_parts(3, vec![Some(4)], vec![]).is_err());
        assert!(TotalColouring::from_parts(3, vec![Some(0)], vec![]).is_err());
    }

    #[test]
    fn record_roundtrip() {
        let (g, c) = k3_example();
        let rec = ColouringRecord::from_colouring(&g, &c);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"k":3,"vertex_colours":[1,2,3],"edge_colours":[[0,1,3],[0,2,2],[1,2,1]]}"#);
        let back: ColouringRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_colouring(&g).unwrap(), c);
    }
}
