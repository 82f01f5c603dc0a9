//! Colours a sparse graph by repeated reduction and extension with at most
//! `k + 3` colours, printing the proof steps.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tnsd::colouring::is_tnsd;
use tnsd::density::mad_below;
use tnsd::generate::random_sparse;
use tnsd::prover::{recursive_colour, ProofOutcome};
use tnsd::rational::Rational;
use tnsd::Result;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = loop {
        let g = random_sparse(30, 30, &mut rng)?;
        if g.max_degree() <= 8 && mad_below(&g, &Rational::new(14, 3))? {
            break g;
        }
    };
    match recursive_colour(&g, 8)? {
        ProofOutcome::Coloured { colouring, steps } => {
            for step in &steps {
                println!("{:<16} at {:>2}: {}", step.case.name(), step.occurrence.anchor, step.extension_strategy);
            }
            println!(
                "{} steps, tnsd: {}, colours used: {}",
                steps.len(),
                is_tnsd(&g, &colouring)?,
                colouring.max_colour_used()
            );
        }
        ProofOutcome::HypothesisNotMet { mad, .. } => println!("mad {mad} is too large"),
    }
    Ok(())
}
