//! Exact tnsd index by search, with an independent verification of the
//! witness colouring.

use tnsd::colouring::{verify, vertex_sums};
use tnsd::solver::{find_tnsd, tnsd_index, Budget, IndexResult};
use tnsd::{Graph, Result};

fn main() -> Result<()> {
    let graphs = [
        ("K2", Graph::path(2)),
        ("P3", Graph::path(3)),
        ("K1,3", Graph::star(3)),
        ("C5", Graph::cycle(5)),
        ("K4", Graph::complete(4)),
    ];
    for (name, g) in &graphs {
        match tnsd_index(g, Budget::unlimited())? {
            IndexResult::Exact { k, witness } => {
                let report = verify(g, &witness)?;
                println!(
                    "{name}: index {k} (Δ+{}), tnsd: {}, sums {:?}",
                    k as usize - g.max_degree(),
                    report.tnsd,
                    vertex_sums(g, &witness)
                );
            }
            IndexResult::Bounds { lower, .. } => println!("{name}: index at least {lower}"),
        }
    }
    let petersen = Graph::petersen();
    let found = find_tnsd(&petersen, 6, Budget::nodes(1_000_000))?;
    println!("Petersen with 6 colours: {}", if found.colouring().is_some() { "found" } else { "not found" });
    Ok(())
}
