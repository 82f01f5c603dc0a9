//! Constructive colouring following the reducibility arguments: delete the
//! prescribed edges of a reducible configuration, colour the smaller graph,
//! and extend the colouring back with `k + 3` colours.

mod extend;
mod recolour;
mod recursive;
mod reduce;

pub use extend::{extend, Extension};
pub use recolour::{finish_3minus, recolour_3minus};
pub use recursive::{recursive_colour, recursive_colour_with, ProofOutcome, ProofStep, FALLBACK_NODES};
pub use reduce::{reduce, ExtensionCase, Reduction};
