// A classical three-outcome comb with one A≺B and two B≺A outcomes.

use procmat::conditioning::{condition_all, three_outcome_classical, Povm};
use procmat::process::{classical_channel_a_to_b, classify_operator, CAUSAL_TOL};

fn main() -> procmat::Result<()> {
    let comb = three_outcome_classical(&classical_channel_a_to_b(), 1.0 / 3.0)?;
    println!("marginal: {}", comb.marginal().classify());
    for (k, r) in condition_all(&comb, &Povm::computational(3))?.into_iter().enumerate() {
        if let Some(r) = r {
            println!(
                "outcome {k}: p = {:.6}, {}",
                r.probability,
                classify_operator(&r.operator, CAUSAL_TOL)?
            );
        }
    }
    Ok(())
}
