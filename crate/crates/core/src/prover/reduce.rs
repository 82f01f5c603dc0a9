//! Edge deletions and uncolour lists for each reducible configuration.

use serde::Serialize;

use crate::configurations::{validate, Kind, Occurrence};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionCase {
    Case1,
    /// Both `C2` and `C3`.
    Case23,
    Case4,
    Case5,
    Case6,
    Case7,
    Case8,
    NeighbourCount,
}

impl ExtensionCase {
    pub fn name(self) -> &'static str {
        match self {
            ExtensionCase::Case1 => "case-1",
            ExtensionCase::Case23 => "case-2-3",
            ExtensionCase::Case4 => "case-4",
            ExtensionCase::Case5 => "case-5",
            ExtensionCase::Case6 => "case-6",
            ExtensionCase::Case7 => "case-7",
            ExtensionCase::Case8 => "case-8",
            ExtensionCase::NeighbourCount => "neighbour-count",
        }
    }
}

/// A smaller graph on the same vertex set, plus what to uncolour after
/// transferring its colouring back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub occurrence: Occurrence,
    pub removed_edges: Vec<(Vertex, Vertex)>,
    pub uncoloured_vertices: Vec<Vertex>,
    pub case: ExtensionCase,
    pub reduced: Graph,
}

fn star(v: Vertex, ends: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    ends.iter().map(|&x| (v, x)).collect()
}

/// Prescribed deletions for `occ`; fails if `occ` no longer fits `g`.
pub fn reduce(g: &Graph, occ: &Occurrence) -> Result<Reduction> {
    validate(g, occ)?;
    let v = occ.anchor;
    let r = |name: &str| occ.role(name).expect("validated occurrence has its roles");
    let (case, removed, uncolour) = match occ.kind {
        Kind::C1 => (ExtensionCase::Case1, vec![(v, r("u"))], vec![v]),
        Kind::C2 | Kind::C3 => (ExtensionCase::Case23, vec![(v, r("u"))], vec![r("u"), v]),
        Kind::C4 => {
            let vs = occ.indexed("v");
            let mut un = vec![v];
            un.extend(&vs[..3]);
            (ExtensionCase::Case4, star(v, &vs[..3]), un)
        }
        Kind::C5 => (ExtensionCase::Case5, star(v, &[r("u"), r("w")]), vec![r("u"), v, r("w")]),
        Kind::C6 => (ExtensionCase::Case6, star(v, &[r("u"), r("w"), r("y")]), vec![r("u"), r("w"), r("y")]),
        Kind::C7 => {
            let vs = occ.indexed("v");
            let removed = star(v, &[vs[0], r("u1"), r("u2"), r("w")]);
            let mut un = vec![v];
            un.extend(&vs);
            un.extend([r("u1"), r("u2"), r("w")]);
            (ExtensionCase::Case7, removed, un)
        }
        Kind::C8 => {
            let mut ends = occ.indexed("v");
            ends.push(r("u"));
            let mut un = vec![v];
            un.extend(&ends);
            (ExtensionCase::Case8, star(v, &ends), un)
        }
        Kind::NeighbourCount => {
            let mut ends = occ.indexed("u");
            ends.extend(occ.indexed("w"));
            if ends.is_empty() {
                return Err(Error::Precondition(format!("vertex {v} has no neighbour of degree at most 3")));
            }
            (ExtensionCase::NeighbourCount, star(v, &ends), ends)
        }
        Kind::LowNeighbours => {
            return Err(Error::Domain("low-neighbours occurrences are not reduced directly".into()));
        }
    };
    let reduced = g.without_edges(&removed)?;
    Ok(Reduction { occurrence: occ.clone(), removed_edges: removed, uncoloured_vertices: uncolour, case, reduced })
}
