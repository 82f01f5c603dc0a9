//! Colouring a graph by reducing it to the edgeless graph and extending back.

use serde::Serialize;

use crate::colouring::{Colour, TotalColouring};
use crate::configurations::{find_reducible_where, Occurrence};
use crate::density::max_average_degree;
use crate::discharging::threshold;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rational::Rational;
use crate::solver::{find_tnsd, Budget, SearchOutcome};

use super::extend::extend;
use super::reduce::{reduce, ExtensionCase};

/// One reduction together with how its extension was carried out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofStep {
    pub case: ExtensionCase,
    pub occurrence: Occurrence,
    pub removed: Vec<(Vertex, Vertex)>,
    pub extension_strategy: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofOutcome {
    /// Steps are listed in reduction order; extensions ran in reverse.
    Coloured { colouring: TotalColouring, steps: Vec<ProofStep> },
    /// `mad(g) ≥ 14/3`; the exact solver was tried instead.
    HypothesisNotMet { mad: Rational, fallback: SearchOutcome },
}

impl ProofOutcome {
    pub fn colouring(&self) -> Option<&TotalColouring> {
        match self {
            ProofOutcome::Coloured { colouring, .. } => Some(colouring),
            ProofOutcome::HypothesisNotMet { fallback, .. } => fallback.colouring(),
        }
    }
}

/// Node budget of the exact-solver fallback in [`recursive_colour`].
pub const FALLBACK_NODES: u64 = 2_000_000;

/// A tnsd `(k+3)`-colouring of `g` when `mad(g) < 14/3`.
pub fn recursive_colour(g: &Graph, k: usize) -> Result<ProofOutcome> {
    recursive_colour_with(g, k, Budget::nodes(FALLBACK_NODES))
}

/// As [`recursive_colour`], with an explicit budget for the fallback.
pub fn recursive_colour_with(g: &Graph, k: usize, fallback: Budget) -> Result<ProofOutcome> {
    if k < 8 {
        return Err(Error::Domain(format!("palette parameter k = {k} is below 8")));
    }
    if g.max_degree() > k {
        return Err(Error::Domain(format!("maximum degree {} exceeds k = {k}", g.max_degree())));
    }
    let mad = max_average_degree(g)?.value;
    let palette = (k + 3) as Colour;
    if mad >= threshold() {
        return Ok(ProofOutcome::HypothesisNotMet { mad, fallback: find_tnsd(g, palette, fallback)? });
    }

    let mut stack = Vec::new();
    let mut current = g.clone();
    while current.edge_count() > 0 {
        let occ = find_reducible_where(&current, k, |o| current.deg(o.anchor) > 0)?.ok_or_else(|| {
            Error::Inconsistency(format!(
                "no reducible configuration in a graph with {} edges and mad below 14/3",
                current.edge_count()
            ))
        })?;
        let red = reduce(&current, &occ)?;
        let next = red.reduced.clone();
        stack.push((current, red));
        current = next;
    }

    let mut colouring = TotalColouring::uncoloured(&current, palette);
    for v in current.vertices() {
        colouring.set_vertex(v, Some(1));
    }
    let mut steps = Vec::with_capacity(stack.len());
    while let Some((graph, red)) = stack.pop() {
        let ext = extend(&graph, &red, &colouring, k)?;
        colouring = ext.colouring;
        steps.push(ProofStep {
            case: red.case,
            occurrence: red.occurrence,
            removed: red.removed_edges,
            extension_strategy: ext.strategy,
        });
    }
    steps.reverse();
    Ok(ProofOutcome::Coloured { colouring, steps })
}
