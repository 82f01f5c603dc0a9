//! Reducible configurations of a sparse graph, and the per-vertex
//! neighbour-count check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tnsd::configurations::{check_neighbour_count, detect, find_any_reducible, Kind};
use tnsd::generate::random_sparse;
use tnsd::io::to_graph6;
use tnsd::Result;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = random_sparse(20, 20, &mut rng)?;
    println!("graph {} with {} edges, Δ = {}", to_graph6(&g), g.edge_count(), g.max_degree());
    for kind in Kind::ALL {
        let found = detect(&g, 8, kind)?;
        if let Some(first) = found.first() {
            println!("{kind}: {} occurrences, first {}", found.len(), first.to_json());
        }
    }
    if let Some(occ) = find_any_reducible(&g, 8)? {
        println!("first by priority: {}", occ.to_json());
        println!("{:?}", check_neighbour_count(&g, 8, occ.anchor)?);
    }
    Ok(())
}
