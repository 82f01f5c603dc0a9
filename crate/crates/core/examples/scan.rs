//! Checks that Δ+3 colours suffice on every connected graph with up to six
//! vertices, in parallel.

use std::path::PathBuf;

use tnsd::cli::{run_task, Action, Filters, ScanSummary, ScanTask, Source};
use tnsd::solver::Budget;
use tnsd::Result;

fn main() -> Result<()> {
    let task = ScanTask {
        source: Source::Exhaustive { max_n: 6 },
        filters: Filters::default(),
        action: Action::Solve,
        k: None,
        budget: Budget::unlimited(),
        archive: PathBuf::from("tnsd-archive"),
    };
    let records = run_task(&task, 0)?;
    let s = ScanSummary::of(&records);
    println!("{} graphs: {} pass, {} fail, {} indeterminate", s.scanned, s.pass, s.fail, s.indeterminate);
    if let Some(r) = records.iter().max_by_key(|r| r.m) {
        println!("densest instance {} coloured with {} colours", r.graph6, r.k.unwrap_or_default());
    }
    Ok(())
}
