//! Coefficient certificates of the extension cases and the distinct-sums
//! bound.

use tnsd::certificates::{builtin_certificates, spot_check_reductions, verify_certificate};
use tnsd::sumsets::{check_lemma, exhaustive_sweep, ListSystem};
use tnsd::Result;

fn main() -> Result<()> {
    for cert in builtin_certificates() {
        let check = verify_certificate(&cert)?;
        println!("{}: coefficient {} (expected {}) ok: {}", check.name, check.computed, check.expected, check.ok);
    }
    let spots = spot_check_reductions(0, 5)?;
    println!("{} instantiated case systems, {} ok", spots.len(), spots.iter().filter(|s| s.ok).count());
    let report = exhaustive_sweep(3, 6);
    println!(
        "distinct sums: {} systems, {} violations, {} tight",
        report.systems_checked,
        report.violations.len(),
        report.tight_instances
    );
    println!("{:?}", check_lemma(&ListSystem::from_slices(&[&[1, 2], &[1, 2]])?)?);
    Ok(())
}
