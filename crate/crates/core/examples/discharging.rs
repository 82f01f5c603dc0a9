//! Charge transfers, ghost-vertex conditions and the degree-case audit.

use tnsd::discharging::{apply_rules, degree_case_audit, verify_ghost_conditions};
use tnsd::{Graph, Result};

fn main() -> Result<()> {
    // a 6-vertex whose neighbours are all 4-vertices
    let mut edges: Vec<(usize, usize)> = (1..=6).map(|i| (0, i)).collect();
    let mut next = 7;
    for hub in 1..=6 {
        for _ in 0..3 {
            edges.push((hub, next));
            next += 1;
        }
    }
    let g = Graph::from_edges(next, edges)?;
    let ledger = apply_rules(&g);
    println!("{} transfers, conserved: {}", ledger.transfers.len(), ledger.is_conserved());
    println!("vertex 0: {} -> {}", ledger.initial[0], ledger.final_charges[0]);
    let ghost = verify_ghost_conditions(&g, &ledger)?;
    println!("ghost conditions hold everywhere: {}, conclusion {:?}", ghost.all_pass, ghost.conclusion);
    let audit = degree_case_audit(&g, 8)?;
    println!("audit: all bounds hold: {}, blocking configuration: {}", audit.all_ok, audit.blocking.is_some());
    Ok(())
}
